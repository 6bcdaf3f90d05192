#include "radef/expansion.hpp"
#include "radef/monogenics.hpp"
#include "radef/transform.hpp"
#include "support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace radef;
using radef::testing::random_vector;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double pi = std::numbers::pi;

// Hilbert-Schmidt norm summed directly over the basis: sum_{n,k} dim M_k e^{-2 Re(omega) (n + k/(1+c))}
double hs_oracle(double re_omega, int m, double c, int cut) {
    mp sum = 0;
    for (int n = 0; n <= cut; ++n)
        for (int k = 0; k <= cut; ++k) {
            mp dim = boost::multiprecision::pow(mp(2), m);
            for (int j = 1; j <= m - 2; ++j) dim = dim * (k + j) / j;
            sum += dim * boost::multiprecision::exp(-2 * mp(re_omega) * (n + mp(k) / (1 + mp(c))));
        }
    return static_cast<double>(boost::multiprecision::sqrt(sum));
}

}  // namespace

TEST_CASE("transform eigenvalues") {
    const DeformParams P(3, 0.0);
    const cplx F = transform_eigenvalue(1, 0, cplx(0.0, 0.5 * pi), P);
    CHECK(std::abs(F - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(transform_eigenvalue(0, 0, cplx(0.0, 0.5 * pi), P) - 1.0) < 1e-15);
    const DeformParams Q(3, 1.0);
    for (int n = 0; n <= 5; ++n)
        for (int ell = 0; ell <= 3; ++ell) {
            const cplx a = transform_eigenvalue(n, ell, cplx(0.3, 0.2), Q), b = transform_eigenvalue(n, ell, cplx(0.1, 1.0), Q);
            CHECK(std::abs(a * b - transform_eigenvalue(n, ell, cplx(0.4, 1.2), Q)) < 1e-14);
            CHECK(std::abs(std::abs(transform_eigenvalue(n, ell, cplx(0.0, 0.77), Q)) - 1.0) < 1e-14);
        }
}

TEST_CASE("basis functions are eigenfunctions of the transform") {
    std::mt19937_64 rng(41);
    QuadratureSpec q;
    q.n_r = 200;
    for (double c : {-0.5, 0.0, 1.0})
        for (cplx omega : {cplx(0.4, 0.0), cplx(0.4, 0.7), cplx(0.0, 0.5 * pi)}) {
            const DeformParams P(3, c);
            const KernelParams kp{P, omega, {}};
            for (int n : {0, 3})
                for (int ell : {0, 2}) {
                    const MonogenicSection f = phi(n, ell, 1, P);
                    const cplx lam = transform_eigenvalue(n, ell, omega, P);
                    const double nrm = std::sqrt(phi_norm_squared(n, ell, P));
                    for (int k = 0; k < 3; ++k) {
                        const auto y = random_vector(3, rng, 0.9);
                        const Multivector Tf = apply_transform(f, y, kp, q);
                        CHECK(max_diff(Tf, f.evaluate(y) * lam) / nrm <= 1e-6);
                    }
                }
        }
}

TEST_CASE("full quadrature agrees with the section route") {
    std::mt19937_64 rng(42);
    const DeformParams P(3, 0.5);
    const KernelParams kp{P, cplx(0.0, 0.5 * pi), {}};
    const MonogenicSection f = phi(1, 1, 2, P);
    QuadratureSpec q;
    q.n_r = 120;
    q.R_max = 10.0;
    q.n_theta = 24;
    q.n_phi = 48;
    const Field F = [f](std::span<const double> x) { return f.evaluate(x); };
    const auto y = random_vector(3, rng, 0.7);
    const Multivector full = apply_transform(F, y, kp, q);
    const Multivector sec = apply_transform(f, y, kp, q);
    CHECK(max_diff(full, sec) <= 1e-6);
}

TEST_CASE("one-dimensional reduction fixes the Gaussian in the classical case") {
    const DeformParams P(3, 0.0);
    QuadratureSpec q;
    q.n_r = 200;
    q.R_max = 10.0;
    const BochnerTransform B = bochner(0, 0, [](double r) { return cplx(std::exp(-0.5 * r * r)); }, Parity::even, P, q);
    for (double s : {0.0, 0.5, 1.3, 2.7}) CHECK(std::abs(B.radial(s) - std::exp(-0.5 * s * s)) <= 1e-10);
}

TEST_CASE("Hilbert-Schmidt norm against extended-precision summation") {
    for (double c : {-0.5, 0.0, 1.0})
        for (double a : {1.0, 2.5}) {
            const DeformParams P(3, c);
            const int cut = 120;
            const HsNorm h = hs_norm(cplx(a, 0.3), P, cut, cut);
            const double ref = hs_oracle(a, 3, c, cut);
            CHECK(std::abs(h.value - ref) / ref <= 1e-10);
            CHECK(h.tail_bound <= 1e-10 * ref);
        }
    const HsNorm big = hs_norm(cplx(40.0, 0.0), DeformParams(3, 0.0), 10, 10);
    CHECK(big.value == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
    CHECK_THROWS_AS(hs_norm(cplx(0.0, 1.0), DeformParams(3, 0.0), 10, 10), std::invalid_argument);
}

TEST_CASE("contraction and isometry") {
    for (double c : {-0.5, 0.0, 1.0}) {
        const DeformParams P(3, c);
        for (int trial = 0; trial < 10; ++trial) {
            const Expansion f = random_expansion(P, 6, 5, 3, 300 + trial);
            CHECK(contraction_ratio(f, cplx(0.3, 0.9)) <= 1.0);
            CHECK(contraction_ratio(f, cplx(0.0, 1.1)) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("finite order of the Fourier transform") {
    CHECK(finite_order(DeformParams(3, 0.0), 4, 2, 50) == 4);
    CHECK(finite_order(DeformParams(3, 1.0), 4, 2, 50) == 8);
    CHECK(finite_order(DeformParams(3, -0.5), 4, 2, 50) == 4);
    CHECK(finite_order(DeformParams(3, std::sqrt(2.0) - 1.0), 4, 2, 50) == 0);
}

TEST_CASE("projection onto the basis") {
    const DeformParams P(3, 0.2);
    const Expansion f = random_expansion(P, 5, 4, 2, 99);
    const Expansion g = Expansion::project(f.to_sections());
    for (const auto& [i, a] : f.coeffs()) {
        REQUIRE(g.coeffs().count(i) == 1);
        CHECK(std::abs(g.coeffs().at(i) - a) <= 1e-10);
    }
    // a dilated Gaussian is outside the finite span
    const SectionSum outside(MonogenicSection{0, 0, RadialProfile({{1.0, 0.0}}, 0.9), RadialProfile{}, P});
    CHECK_THROWS_AS(Expansion::project(outside), std::domain_error);
}

TEST_CASE("Parseval through the transform integral") {
    const DeformParams P(3, 0.0);
    const Expansion f = random_expansion(P, 3, 3, 1, 7);
    QuadratureSpec inner, outer;
    inner.n_r = 200;
    inner.R_max = 10.0;
    outer.n_r = 200;
    outer.R_max = 6.0;
    const ParsevalResult r = parseval_check(f, inner, outer);
    CHECK(std::abs(r.norm_Ff2 - r.norm_f2) / r.norm_f2 <= 1e-6);
}

TEST_CASE("Heisenberg equality for the Gaussian") {
    for (double c : {-0.5, 0.0, 1.0}) {
        const DeformParams P(3, c);
        const HeisenbergResult h = heisenberg(SectionSum(phi(0, 0, 0, P)));
        CHECK(std::abs(h.additive_lhs - h.additive_rhs) / h.additive_rhs <= 1e-8);
        CHECK(std::abs(h.product_lhs - h.product_rhs) / h.product_rhs <= 1e-8);
    }
}
