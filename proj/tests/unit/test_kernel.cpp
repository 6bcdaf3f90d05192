#include "radef/errors.hpp"
#include "radef/kernel.hpp"
#include "radef/monogenics.hpp"
#include "radef/quadrature.hpp"
#include "radef/specfun.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace radef;
using radef::testing::random_vector;

namespace {

constexpr double pi = std::numbers::pi;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> unit(std::vector<double> v) {
    const double n = std::sqrt(dot(v, v));
    for (auto& x : v) x /= n;
    return v;
}

// Classical Mehler kernel with eigenvalue e^{-omega deg} on harmonic-oscillator eigenfunctions,
// normalized against sigma_m^{-1} dx.
cplx mehler(std::span<const double> x, std::span<const double> y, cplx omega, int m) {
    const cplx sh = std::sinh(omega), ch = std::cosh(omega);
    const cplx pre = std::pow(2.0, 1.0 - 0.5 * m) / std::tgamma(0.5 * m) *
                     std::pow(std::exp(omega) / sh, 0.5 * m);
    return pre * std::exp(-ch / sh * 0.5 * (dot(x, x) + dot(y, y)) + dot(x, y) / sh);
}

}  // namespace

TEST_CASE("reproducing kernels on the unit sphere") {
    std::mt19937_64 rng(31);
    const auto xu = unit(random_vector(3, rng)), yu = unit(random_vector(3, rng));
    CHECK(max_diff(repr_P(0, xu, yu), Multivector::scalar(3, 1.0)) < 1e-15);
    const double lam = 0.5;
    for (int k = 1; k <= 5; ++k) {
        const Multivector s = repr_P(k, xu, yu) + repr_Q(k - 1, xu, yu);
        const double expect = (lam + k) / lam * gegenbauer(k, lam, dot(xu, yu));
        CHECK(max_diff(s, Multivector::scalar(3, expect)) < 1e-12);
    }

    // sigma^{-1} ∫ P_k(x', y') M_l(x') dσ(x') = δ_{kl} M_l(y')
    const SphereRule rule = sphere_rule(3, 24, 48);
    const double sigma = sphere_area(3);
    for (int k = 0; k <= 3; ++k)
        for (int ell = 0; ell <= 3; ++ell) {
            const PolyCl& M = monogenic_basis(ell, 3)[1];
            Multivector acc(3);
            for (std::size_t i = 0; i < rule.size(); ++i)
                accumulate_product(acc, repr_P(k, rule.node(i), yu), M.evaluate(rule.node(i)), rule.w[i] / sigma);
            const Multivector expect = k == ell ? M.evaluate(yu) : Multivector(3);
            CHECK(max_diff(acc, expect) <= 1e-7);
        }
}

TEST_CASE("classical limit of the Fourier kernel") {
    std::mt19937_64 rng(32);
    for (int m : {3, 4}) {
        const DeformParams P(m, 0.0);
        const double norm = 1.0 / (std::tgamma(0.5 * m) * std::pow(2.0, 0.5 * (m - 2)));
        for (int trial = 0; trial < 30; ++trial) {
            auto x = random_vector(m, rng), y = random_vector(m, rng);
            const double scale = std::sqrt(std::uniform_real_distribution<double>(0.0, 10.0)(rng) /
                                           std::sqrt(dot(x, x) * dot(y, y)));
            for (auto& v : x) v *= scale;
            for (auto& v : y) v *= scale;
            const KernelValue K = fourier_kernel(x, y, P);
            const Multivector expect = Multivector::scalar(m, norm * std::exp(cplx(0.0, -dot(x, y))));
            CHECK(max_diff(K.assembled, expect) <= 1e-8);
        }
    }
}

TEST_CASE("kernel at the origin") {
    std::mt19937_64 rng(33);
    for (double c : {-0.5, 0.0, 0.7, 1.0}) {
        const DeformParams P(3, c);
        const double g0 = P.gamma(0);
        const double expect = 1.0 / (std::pow(2.0, 0.5 * g0 - 1.0) * std::tgamma(0.5 * g0));
        const std::vector<double> zero(3, 0.0);
        const auto y = random_vector(3, rng);
        CHECK(max_diff(fourier_kernel(zero, y, P).assembled, Multivector::scalar(3, expect)) <= 1e-14);
        // the semigroup kernel keeps only the Gaussian factor at x = 0
        const KernelParams kp{P, cplx(0.4, 0.7), {}};
        const cplx pref = semigroup_prefactor(dot(y, y), kp);
        const Multivector s = semigroup_kernel(zero, y, kp).assembled;
        CHECK(std::abs(s.scalar_part() - pref * semigroup_p(0, 0.0, kp)) <= 1e-14);
        CHECK(grade_project(s, 2).max_abs() == 0.0);
    }
}

TEST_CASE("classical Mehler kernel") {
    std::mt19937_64 rng(34);
    for (cplx omega : {cplx(0.4, 0.0), cplx(0.4, 0.7), cplx(1.0, 0.0), cplx(0.3, 2.0), cplx(0.05, 1.4)}) {
        const KernelParams kp{DeformParams(3, 0.0), omega, {}};
        for (int trial = 0; trial < 10; ++trial) {
            const auto x = random_vector(3, rng, 0.9), y = random_vector(3, rng, 0.9);
            const cplx ref = mehler(x, y, omega, 3);
            const Multivector K = semigroup_kernel(x, y, kp).assembled;
            CHECK(std::abs(K.scalar_part() - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
            CHECK(grade_project(K, 2).max_abs() <= 1e-12);
        }
    }
}

TEST_CASE("semigroup kernel continues to the Fourier kernel") {
    std::mt19937_64 rng(35);
    const DeformParams P(3, 0.6);
    const auto x = random_vector(3, rng), y = random_vector(3, rng);
    const Multivector F = fourier_kernel(x, y, P).assembled;
    // the direct and the purely imaginary formulas agree at omega = i pi / 2
    const KernelParams at{P, cplx(0.0, 0.5 * pi), {}};
    CHECK(max_diff(semigroup_kernel(x, y, at, SemigroupForm::eta).assembled, F) <= 1e-12);
    CHECK(max_diff(semigroup_kernel(x, y, at, SemigroupForm::direct).assembled, F) <= 1e-12);
    // first-order Richardson extrapolation along the real direction
    const KernelParams e1{P, cplx(1e-2, 0.5 * pi), {}}, e2{P, cplx(1e-3, 0.5 * pi), {}};
    const Multivector k1 = semigroup_kernel(x, y, e1).assembled, k2 = semigroup_kernel(x, y, e2).assembled;
    const Multivector extrap = (10.0 * k2 - k1) * (1.0 / 9.0);
    CHECK(max_diff(k2, F) > 1e-4);
    // the second-order remainder is of size eps1 eps2
    CHECK(max_diff(extrap, F) <= 1e-4);
    const KernelParams f1{P, cplx(1e-4, 0.5 * pi), {}}, f2{P, cplx(2e-4, 0.5 * pi), {}};
    const Multivector fine = 2.0 * semigroup_kernel(x, y, f1).assembled - semigroup_kernel(x, y, f2).assembled;
    CHECK(max_diff(fine, F) <= 1e-6);
}

TEST_CASE("kernel parameter validation") {
    const DeformParams P(3, 0.0);
    CHECK_THROWS_AS((KernelParams{P, cplx(-0.1, 1.0), {}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((KernelParams{P, cplx(0.0, 0.0), {}}.validate()), std::invalid_argument);
    CHECK_NOTHROW((KernelParams{P, cplx(0.2, -1.0), {}}.validate()));
    const std::vector<double> x{30.0, 0.0, 0.0}, y{0.0, 3.0, 0.0};
    CHECK_THROWS_AS(fourier_kernel(x, y, P), NumericalError);
}

TEST_CASE("kernel series report truncation") {
    const DeformParams P(3, 1.0);
    const KernelSeries s = fourier_series(5.0, P, {});
    CHECK(s.terms() > 5);
    CHECK(s.tail_estimate <= 1e-13);
    Truncation tight;
    tight.k_max = 8;
    CHECK_THROWS_AS(fourier_series(5.0, P, tight), NumericalError);
}

TEST_CASE("components assemble the kernel") {
    for (double c : {-0.5, 0.0, 1.0}) {
        const DeformParams P(3, c);
        for (double z : {0.5, 2.0, 4.0})
            for (double w : {-0.7, 0.1, 0.9}) {
                const auto [A, B] = fourier_AB(z, w, P);
                const auto [A2, B2] = assemble_from_components(z, w, P, {}, AlphaMinusOne::continued);
                const double scale = std::max({std::abs(A), std::abs(B), 1e-300});
                CHECK(std::abs(A - A2) / scale <= 1e-10);
                CHECK(std::abs(B - B2) / scale <= 1e-10);
            }
    }
}

TEST_CASE("kernel differential system") {
    for (double c : {-0.5, 0.0, 1.0}) {
        const DeformParams P(3, c);
        for (double z : {0.5, 2.0})
            for (double w : {-0.45, 0.0, 0.9}) {
                const PdeResidual r = pde_residual(z, w, P, {}, 1e-4);
                CHECK(r.first / std::max(1.0, r.scale_first) <= 1e-5);
                CHECK(r.second / std::max(1.0, r.scale_second) <= 1e-5);
            }
    }
}
