#include "radef/verify.hpp"

#include "radef/errors.hpp"
#include "radef/expansion.hpp"
#include "radef/monogenics.hpp"
#include "radef/specfun.hpp"
#include "radef/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace radef {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);

// Worst residual over samples; NaN counts as a failure.
struct Worst {
    double value = 0.0;
    void add(double r) {
        if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
        value = std::max(value, r);
    }
};

class Collector {
public:
    Collector(std::string suite, std::string params) : suite_(std::move(suite)), params_(std::move(params)) {}

    void add(const std::string& test, const std::string& anchor, double residual, double tol) {
        CheckResult r{suite_, test, anchor, params_, residual, tol, std::isfinite(residual) && residual <= tol};
        out_.push_back(std::move(r));
    }
    std::vector<CheckResult> take() { return std::move(out_); }

private:
    std::string suite_, params_;
    std::vector<CheckResult> out_;
};

std::vector<double> random_point(std::mt19937_64& rng, int m, double r_lo, double r_hi) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(r_lo, r_hi);
    std::vector<double> x(m);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& v : x) {
            v = g(rng);
            n2 += v * v;
        }
    } while (n2 < 1e-8);
    const double r = u(rng) / std::sqrt(n2);
    for (auto& v : x) v *= r;
    return x;
}

std::vector<double> unit(std::span<const double> x) {
    double n = 0.0;
    for (double v : x) n += v * v;
    n = std::sqrt(n);
    std::vector<double> out(x.begin(), x.end());
    for (auto& v : out) v /= n;
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double rel_diff(const Multivector& a, const Multivector& b) {
    return max_diff(a, b) / std::max({1.0, a.max_abs(), b.max_abs()});
}

// Largest profile coefficient of a - b relative to the largest coefficient of a or b.
double section_residual(const SectionSum& a, const SectionSum& b) {
    double scale = 1.0;
    for (const auto* s : {&a, &b})
        for (const auto& part : s->parts()) scale = std::max({scale, part.f.max_coeff(), part.g.max_coeff()});
    const SectionSum d = a - b;
    double worst = 0.0;
    for (const auto& part : d.parts()) {
        RadialProfile f = part.f, g = part.g;
        f.canonicalize();
        g.canonicalize();
        worst = std::max({worst, f.max_coeff(), g.max_coeff()});
    }
    return worst / scale;
}

cplx complex_normal(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

double relative(cplx a, cplx b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

}  // namespace

void VerifyConfig::validate() const {
    trunc.validate();
    quad.validate();
    KernelParams{params, omega, trunc}.validate();
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
}

std::string VerifyConfig::describe() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(6);
    os << "m=" << params.m << " c=" << params.c << " omega=" << omega.real() << (omega.imag() < 0 ? "" : "+")
       << omega.imag() << "i";
    return os.str();
}

MonogenicSection random_section(const DeformParams& p, int ell_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int ell = std::uniform_int_distribution<int>(0, ell_max)(rng);
    const int dim = static_cast<int>(monogenic_dimension(ell, p.m));
    const int idx = std::uniform_int_distribution<int>(0, dim - 1)(rng);
    const double a = std::uniform_real_distribution<double>(0.3, 0.8)(rng);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<RadialTerm> f, g;
    for (int j = 0; j < 3; ++j) {
        f.push_back({complex_normal(rng), p.beta(ell) + 2.0 * j + 4.0 + u});
        g.push_back({complex_normal(rng), p.beta(ell) + 2.0 * j + 4.0 + u});
    }
    return MonogenicSection{ell, idx, RadialProfile(f, a), RadialProfile(g, a), p};
}

// ---------------------------------------------------------------------------------------------
// osp(1|2)

std::vector<CheckResult> check_osp12(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    const double k1 = 1.0 + P.c;
    const double d = P.delta();
    Collector out("osp12", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0x05b12ULL);

    std::array<Worst, 8> rel;
    Worst fd_gate, fd_anti, fd_x2, fd_ex;
    for (int s = 0; s < cfg.samples; ++s) {
        const SectionSum f(random_section(P, 3, rng()));
        const SectionSum Df = apply_D(f), xf = apply_x(f), Ef = apply_E(f);
        const SectionSum Epf = Ef + cplx(0.5 * d) * f;
        const SectionSum DDf = apply_D(Df), xxf = apply_x(xf);

        const std::array<std::pair<SectionSum, SectionSum>, 8> pairs = {{
            {apply_x(Df) + apply_D(xf), cplx(-2.0 * k1) * Epf},
            {apply_E(Df) - apply_D(Ef), cplx(-1.0) * Df},
            {apply_x(apply_x(Df)) - apply_D(xxf), cplx(2.0 * k1) * xf},
            {apply_E(xf) - apply_x(Ef), xf},
            {apply_D(apply_D(xf)) - apply_x(DDf), cplx(-2.0 * k1) * Df},
            {apply_E(DDf) - apply_D(apply_D(Ef)), cplx(-2.0) * DDf},
            {apply_D(apply_D(xxf)) - apply_x(apply_x(DDf)), cplx(4.0 * k1 * k1) * Epf},
            {apply_E(xxf) - apply_x(apply_x(Ef)), cplx(2.0) * xxf},
        }};

        const Field F = [f](std::span<const double> x) { return f.evaluate(x); };
        const Field XF = [f](std::span<const double> x) { return embed_vector(x) * f.evaluate(x); };
        const Field X2F = [f](std::span<const double> x) { return -dot(x, x) * f.evaluate(x); };
        for (int j = 0; j < 3; ++j) {
            const auto x = random_point(rng, P.m, 0.4, 1.8);
            for (std::size_t r = 0; r < pairs.size(); ++r)
                rel[r].add(rel_diff(pairs[r].first.evaluate(x), pairs[r].second.evaluate(x)));

            const Multivector xv = embed_vector(x);
            const Multivector Fx = F(x);
            const Multivector dF = fd_dirac(F, x, P.c);
            fd_gate.add(rel_diff(dF, Df.evaluate(x)));
            const Multivector eF = fd_derivatives(F, x).euler;
            fd_anti.add(rel_diff(xv * dF + fd_dirac(XF, x, P.c), cplx(-2.0 * k1) * (eF + cplx(0.5 * d) * Fx)));
            fd_x2.add(rel_diff(cplx(-dot(x, x)) * dF - fd_dirac(X2F, x, P.c), cplx(2.0 * k1) * (xv * Fx)));
            fd_ex.add(rel_diff(fd_derivatives(XF, x).euler - xv * eF, xv * Fx));
        }
    }
    const std::array<const char*, 8> names = {"{x,D} = -2(1+c)(E+delta/2)", "[E+delta/2, D] = -D",
                                              "[x^2, D] = 2(1+c) x",        "[E+delta/2, x] = x",
                                              "[D^2, x] = -2(1+c) D",       "[E+delta/2, D^2] = -2 D^2",
                                              "[D^2, x^2] = 4(1+c)^2 (E+delta/2)", "[E+delta/2, x^2] = 2 x^2"};
    for (std::size_t r = 0; r < names.size(); ++r)
        out.add(std::string("bracket/") + names[r], "osp(1|2) relations of D and x", rel[r].value, 1e-6);
    out.add("fd/D matches finite differences", "deformed Dirac operator definition", fd_gate.value, 1e-6);
    out.add("fd/{x,D}", "osp(1|2) relations of D and x", fd_anti.value, 1e-6);
    out.add("fd/[x^2, D]", "osp(1|2) relations of D and x", fd_x2.value, 1e-6);
    out.add("fd/[E+delta/2, x]", "osp(1|2) relations of D and x", fd_ex.value, 1e-6);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// basis

std::vector<CheckResult> check_basis(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    const double k1 = 1.0 + P.c;
    Collector out("basis", cfg.describe());
    constexpr int ell_max = 3, n_max = 11;

    Worst dims, ortho, monogenic;
    for (int ell = 0; ell <= ell_max; ++ell) {
        const auto& B = monogenic_basis(ell, P.m);
        dims.add(std::abs(static_cast<double>(B.size()) - static_cast<double>(monogenic_dimension(ell, P.m))));
        for (std::size_t i = 0; i < B.size(); ++i) {
            monogenic.add(dirac(B[i]).max_abs());
            for (std::size_t j = 0; j < B.size(); ++j)
                ortho.add(std::abs(spherical_inner(B[i], B[j]) - (i == j ? 1.0 : 0.0)));
        }
    }
    out.add("monogenic/dimension", "dimension of the monogenic spaces", dims.value, 0.0);
    out.add("monogenic/orthonormal", "spherical inner product of monogenics", ortho.value, 1e-10);
    out.add("monogenic/null solutions", "monogenic polynomials", monogenic.value, 1e-10);

    Worst lad_D, lad_x, raise, lower, ham, ham_formula;
    for (int ell = 0; ell <= ell_max; ++ell) {
        const int dim = static_cast<int>(monogenic_dimension(ell, P.m));
        for (int idx : {0, dim - 1}) {
            for (int n = 0; n <= n_max; ++n) {
                const SectionSum ph(phi(n, ell, idx, P));
                const SectionSum up(phi(n + 1, ell, idx, P));
                const double C = ladder_coefficient(n, ell, P);
                SectionSum down(P);
                if (n > 0) down = cplx(C) * SectionSum(phi(n - 1, ell, idx, P));
                const SectionSum Dph = apply_D(ph), xph = apply_x(ph);
                lad_D.add(section_residual(cplx(2.0) * Dph, up + down));
                lad_x.add(section_residual(cplx(-2.0 * k1) * xph, up - down));
                raise.add(section_residual(Dph - cplx(k1) * xph, up));
                lower.add(section_residual(Dph + cplx(k1) * xph, down));

                const double lam = hamiltonian_eigenvalue(n, ell, P);
                ham.add(section_residual(apply_L(ph), cplx(lam) * ph));
                ham_formula.add(std::abs(lam - k1 * k1 * (P.gamma(ell) + 2.0 * n)) / lam);
            }
        }
    }
    out.add("ladder/2 D phi_n = phi_{n+1} + C phi_{n-1}", "action of D on the basis", lad_D.value, 1e-10);
    out.add("ladder/-2(1+c) x phi_n = phi_{n+1} - C phi_{n-1}", "action of x on the basis", lad_x.value, 1e-10);
    out.add("ladder/creation A+ phi_n = phi_{n+1}", "creation and annihilation operators", raise.value, 1e-10);
    out.add("ladder/annihilation A- phi_n = C phi_{n-1}", "creation and annihilation operators", lower.value, 1e-10);
    out.add("hamiltonian/eigenfunction", "deformed harmonic oscillator eigenfunctions", ham.value, 1e-10);
    out.add("hamiltonian/spectrum formula", "spectrum of the deformed harmonic oscillator", ham_formula.value, 1e-10);

    // Gram matrix over several slots per degree
    std::vector<MonogenicSection> fam;
    std::vector<int> fam_n;
    for (int ell = 0; ell <= ell_max; ++ell) {
        const int dim = static_cast<int>(monogenic_dimension(ell, P.m));
        for (int idx : {0, 1, dim - 1})
            for (int n = 0; n <= n_max; ++n) {
                fam.push_back(phi(n, ell, idx, P));
                fam_n.push_back(n);
            }
    }
    std::vector<double> diag(fam.size());
    Worst diag_err, positive;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        diag[i] = inner_product(fam[i], fam[i]).real();
        positive.add(diag[i] > 0.0 ? 0.0 : 1.0);
        diag_err.add(std::abs(diag[i] - phi_norm_squared(fam_n[i], fam[i].ell, P)) / diag[i]);
    }
    Worst off;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            off.add(std::abs(inner_product(fam[i], fam[j])) / std::sqrt(diag[i] * diag[j]));
    out.add("gram/off-diagonal", "orthogonality of the Laguerre basis", off.value, 1e-10);
    out.add("gram/positive diagonal", "orthogonality of the Laguerre basis", positive.value, 0.0);
    out.add("gram/cached norms", "orthogonality of the Laguerre basis", diag_err.value, 1e-12);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// spherical integrals

std::vector<CheckResult> check_funk_hecke(const VerifyConfig& cfg, bool as_printed) {
    const DeformParams& P = cfg.params;
    const int m = P.m;
    const double lam = P.lambda();
    const double sig = sphere_area(m);
    const double sign4 = as_printed ? -1.0 : 1.0;
    Collector out(as_printed ? "funk-hecke-printed" : "funk-hecke", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0xf4ecULL);
    const SphereRule S = cfg.quad.sphere(m);
    constexpr int ell_max = 3, k_max = 4;

    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < 2; ++i) dirs.push_back(unit(random_point(rng, m, 1.0, 1.0)));

    std::array<Worst, 4> aux, rep;
    for (int ell = 0; ell <= ell_max; ++ell) {
        const auto& B = monogenic_basis(ell, m);
        const int other = std::uniform_int_distribution<int>(0, static_cast<int>(B.size()) - 1)(rng);
        for (int idx : {0, other}) {
            const PolyCl& M = B[idx];
            std::vector<Multivector> Mv(S.size()), xMv(S.size());
            for (std::size_t i = 0; i < S.size(); ++i) {
                Mv[i] = M.evaluate(S.node(i));
                xMv[i] = embed_vector(S.node(i)) * Mv[i];
            }
            for (const auto& y : dirs) {
                const Multivector zero(m);
                std::vector<Multivector> I1(k_max + 1, zero), I2 = I1, I3 = I1, I4 = I1;
                std::vector<Multivector> R1 = I1, R2 = I1, R3 = I1, R4 = I1;
                std::vector<double> c0, c1;
                for (std::size_t i = 0; i < S.size(); ++i) {
                    const auto xi = S.node(i);
                    const double w = dot(xi, y);
                    gegenbauer_all(k_max, lam, w, c0);
                    gegenbauer_all(k_max, lam + 1.0, w, c1);
                    const Multivector W = wedge(xi, y);
                    for (int k = 0; k <= k_max; ++k) {
                        I1[k] += (S.w[i] * c0[k]) * Mv[i];
                        I2[k] += (S.w[i] * c0[k]) * xMv[i];
                        if (k >= 1) {
                            accumulate_product(I3[k], W, Mv[i], S.w[i] * c1[k - 1]);
                            accumulate_product(I4[k], W, xMv[i], S.w[i] * c1[k - 1]);
                        }
                        const Multivector Pk = repr_P(k, xi, y);
                        const Multivector Qk = repr_Q(k, xi, y);
                        accumulate_product(R1[k], Pk, Mv[i], S.w[i]);
                        accumulate_product(R2[k], Pk, xMv[i], S.w[i]);
                        accumulate_product(R3[k], Qk, Mv[i], S.w[i]);
                        accumulate_product(R4[k], Qk, xMv[i], S.w[i]);
                    }
                }
                const Multivector My = M.evaluate(y);
                const Multivector yMy = embed_vector(y) * My;
                for (int k = 0; k <= k_max; ++k) {
                    const double f = sig * lam / (lam + k);
                    aux[0].add(max_diff(I1[k], k == ell ? f * My : zero) / sig);
                    aux[1].add(max_diff(I2[k], k == ell + 1 ? f * yMy : zero) / sig);
                    if (k >= 1) {
                        aux[2].add(max_diff(I3[k], k == ell ? (-sig * k / (2.0 * (lam + k))) * My : zero) / sig);
                        aux[3].add(max_diff(I4[k], k == ell + 1 ? (sign4 * sig * (k + 2.0 * lam) / (2.0 * (lam + k))) * yMy
                                                                : zero) /
                                   sig);
                    }
                    rep[0].add(max_diff(R1[k], k == ell ? sig * My : zero) / sig);
                    rep[1].add(R2[k].max_abs() / sig);
                    rep[2].add(R3[k].max_abs() / sig);
                    rep[3].add(max_diff(R4[k], k == ell ? sig * yMy : zero) / sig);
                }
            }
        }
    }
    const char* fh = "Clifford Funk-Hecke integrals";
    out.add("aux/C_k M_l", fh, aux[0].value, 1e-7);
    out.add("aux/C_k x M_l", fh, aux[1].value, 1e-7);
    out.add("aux/(x^y) C_{k-1}^{lambda+1} M_l", fh, aux[2].value, 1e-7);
    out.add(as_printed ? "aux/(x^y) C_{k-1}^{lambda+1} x M_l = -sigma (k+2lambda)/(2(lambda+k)) y' M_l"
                       : "aux/(x^y) C_{k-1}^{lambda+1} x M_l = +sigma (k+2lambda)/(2(lambda+k)) y' M_l",
            fh, aux[3].value, 1e-7);
    const char* rk = "reproducing kernels of M_k and x M_k";
    out.add("repr/P_k M_l = sigma delta M_l(y')", rk, rep[0].value, 1e-7);
    out.add("repr/P_k x M_l = 0", rk, rep[1].value, 1e-7);
    out.add("repr/Q_{k-1} M_l = 0", rk, rep[2].value, 1e-7);
    out.add("repr/Q_{k-1} x M_l = sigma delta y' M_l(y')", rk, rep[3].value, 1e-7);

    // composition of the kernels over the middle variable
    constexpr int kk = 3;
    const auto xu = unit(random_point(rng, m, 1.0, 1.0));
    const auto zu = unit(random_point(rng, m, 1.0, 1.0));
    const Multivector zero(m);
    std::vector<Multivector> PP((kk + 1) * (kk + 1), zero), PQ = PP, QQ = PP, QP = PP;
    for (std::size_t i = 0; i < S.size(); ++i) {
        const auto yi = S.node(i);
        std::vector<Multivector> Pa, Qa, Pb, Qb;
        for (int k = 0; k <= kk; ++k) {
            Pa.push_back(repr_P(k, yi, xu));
            Qa.push_back(repr_Q(k, yi, xu));
            Pb.push_back(repr_P(k, zu, yi));
            Qb.push_back(repr_Q(k, zu, yi));
        }
        for (int k = 0; k <= kk; ++k)
            for (int l = 0; l <= kk; ++l) {
                const std::size_t at = k * (kk + 1) + l;
                accumulate_product(PP[at], Pa[k], Pb[l], S.w[i]);
                accumulate_product(PQ[at], Pa[k], Qb[l], S.w[i]);
                accumulate_product(QQ[at], Qa[k], Qb[l], S.w[i]);
                accumulate_product(QP[at], Qa[k], Pb[l], S.w[i]);
            }
    }
    Worst opp, opq, oqq, oqp;
    for (int k = 0; k <= kk; ++k)
        for (int l = 0; l <= kk; ++l) {
            const std::size_t at = k * (kk + 1) + l;
            opp.add(max_diff(PP[at], k == l ? sig * repr_P(l, zu, xu) : zero) / sig);
            opq.add(PQ[at].max_abs() / sig);
            oqq.add(max_diff(QQ[at], k == l ? sig * repr_Q(l, zu, xu) : zero) / sig);
            oqp.add(QP[at].max_abs() / sig);
        }
    const char* ko = "orthogonality of the reproducing kernels";
    out.add("orth/P_k P_l = sigma delta P_l", ko, opp.value, 1e-7);
    out.add("orth/P_k Q_l = 0", ko, opq.value, 1e-7);
    out.add("orth/Q_k Q_l = sigma delta Q_l", ko, oqq.value, 1e-7);
    out.add("orth/Q_k P_l = 0", ko, oqp.value, 1e-7);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// kernel properties

std::vector<CheckResult> check_kernel_props(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    const int m = P.m;
    Collector out("kernel-props", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0x6e6e1ULL);
    const KernelParams kp{P, cfg.omega, cfg.trunc};
    const KernelParams kf{P, cplx(0.0, 0.5 * pi), cfg.trunc};
    const double g0 = P.gamma(0);
    const double k0_fourier = std::exp(-(0.5 * g0 - 1.0) * std::log(2.0) - std::lgamma(0.5 * g0));
    const cplx w = cfg.omega;
    const cplx k0_semi = 2.0 * std::exp(0.5 * w * P.delta()) * principal_pow(2.0 * std::sinh(w), -0.5 * g0) /
                         std::exp(std::lgamma(0.5 * g0));

    Worst zero_f, zero_s, scal_f, scal_s, herm_f, herm_s, spin_f, spin_s, eta_f, eta_s, rich;
    const std::vector<double> origin(m, 0.0);
    for (int s = 0; s < cfg.samples; ++s) {
        const auto x = random_point(rng, m, 0.2, 2.5);
        const auto y = random_point(rng, m, 0.2, 2.5);
        const double y2 = dot(y, y);

        zero_f.add(rel_diff(fourier_kernel(origin, y, P, cfg.trunc).assembled, Multivector::scalar(m, k0_fourier)));
        const cplx pref = std::exp(-0.5 * y2 * std::cosh(w) / std::sinh(w));
        zero_s.add(rel_diff(semigroup_kernel(origin, y, kp).assembled, Multivector::scalar(m, k0_semi * pref)));

        const double t = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
        std::vector<double> tx = x, ty = y;
        for (auto& v : tx) v *= t;
        for (auto& v : ty) v *= t;
        const Multivector Kf = fourier_kernel(x, y, P, cfg.trunc).assembled;
        const Multivector Ks = semigroup_kernel(x, y, kp).assembled;
        scal_f.add(rel_diff(fourier_kernel(tx, y, P, cfg.trunc).assembled,
                            fourier_kernel(x, ty, P, cfg.trunc).assembled));
        {
            const KernelValue a = semigroup_kernel(tx, y, kp), b = semigroup_kernel(x, ty, kp);
            const double g = std::abs(semigroup_prefactor(dot(tx, tx) + y2, kp));
            const double zz = std::sqrt(dot(tx, tx) * y2);
            scal_s.add(g * std::max(std::abs(a.A - b.A), zz * std::abs(a.B - b.B)) /
                       std::max(1.0, a.assembled.max_abs()));
        }

        herm_f.add(rel_diff(fourier_kernel(y, x, P, cfg.trunc).assembled, bar(Kf)));
        herm_s.add(rel_diff(semigroup_kernel(y, x, kp).assembled, bar(Ks)));

        const Multivector sp = random_spin_element(m, 4, rng());
        const Multivector sb = bar(sp);
        const auto xs = spin_act(sb, x);
        const auto ys = spin_act(sb, y);
        spin_f.add(rel_diff(fourier_kernel(xs, ys, P, cfg.trunc).assembled, sb * Kf * sp));
        spin_s.add(rel_diff(semigroup_kernel(xs, ys, kp).assembled, sb * Ks * sp));

        eta_f.add(rel_diff(semigroup_kernel(x, y, kf, SemigroupForm::eta).assembled, Kf));
        if (w.real() == 0.0)
            eta_s.add(rel_diff(semigroup_kernel(x, y, kp, SemigroupForm::eta).assembled,
                               semigroup_kernel(x, y, kp, SemigroupForm::direct).assembled));

        if (s < 5) {
            constexpr double eps = 1e-4;
            const KernelParams k1{P, cplx(eps, 0.5 * pi), cfg.trunc};
            const KernelParams k2{P, cplx(2.0 * eps, 0.5 * pi), cfg.trunc};
            const Multivector R = cplx(2.0) * semigroup_kernel(x, y, k1).assembled - semigroup_kernel(x, y, k2).assembled;
            rich.add(rel_diff(R, Kf));
        }
    }
    const char* kprop = "properties of the transform kernel";
    out.add("fourier/K(0,y) = 1/(2^{gamma_0/2-1} Gamma(gamma_0/2))", kprop, zero_f.value, 1e-9);
    out.add("semigroup/K(0,y) closed form", "series of the semigroup kernel", zero_s.value, 1e-9);
    out.add("fourier/scaling K(tx,y) = K(x,ty)", kprop, scal_f.value, 1e-9);
    out.add("semigroup/scaling of the series part A + (x^y) B", kprop, scal_s.value, 1e-9);
    out.add("fourier/K(y,x) = bar K(x,y)", kprop, herm_f.value, 1e-9);
    out.add("semigroup/K(y,x) = bar K(x,y)", kprop, herm_s.value, 1e-9);
    out.add("fourier/spin equivariance", kprop, spin_f.value, 1e-9);
    out.add("semigroup/spin equivariance", kprop, spin_s.value, 1e-9);
    out.add("fourier/real-argument semigroup form at i pi/2", "semigroup kernel at the boundary", eta_f.value, 1e-12);
    if (w.real() == 0.0)
        out.add("semigroup/real-argument form = direct form", "semigroup kernel at the boundary", eta_s.value, 1e-12);
    out.add("semigroup/limit Re omega -> 0 equals the Fourier kernel", "semigroup kernel at the boundary", rich.value,
            1e-6);

    if (P.c == 0.0) {
        Worst classical;
        const double norm0 = 1.0 / (std::tgamma(0.5 * m) * std::pow(2.0, 0.5 * (m - 2)));
        for (int s = 0; s < 5 * cfg.samples; ++s) {
            const auto x = random_point(rng, m, 0.0, 3.0);
            const auto y = random_point(rng, m, 0.0, 3.0);
            const Multivector K = fourier_kernel(x, y, P, cfg.trunc).assembled;
            classical.add(max_diff(K, Multivector::scalar(m, norm0 * std::exp(-I * dot(x, y)))));
        }
        out.add("fourier/c = 0 gives the classical kernel", "classical limit of the kernel", classical.value, 1e-8);
    }
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// transform

std::vector<CheckResult> check_transform(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    const int m = P.m;
    Collector out("transform", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0x7f0ULL);
    const KernelParams kp{P, cfg.omega, cfg.trunc};
    const KernelParams kf{P, cplx(0.0, 0.5 * pi), cfg.trunc};
    const cplx w = cfg.omega;

    std::vector<std::vector<double>> pts;
    for (int s = 0; s < cfg.samples; ++s) pts.push_back(random_point(rng, m, 0.1, 3.0));

    Worst eig;
    for (int n = 0; n <= 4; ++n)
        for (int ell = 0; ell <= 2; ++ell) {
            const SectionSum sec(phi(n, ell, ell == 0 ? 0 : 1, P));
            const double nrm = std::sqrt(phi_norm_squared(n, ell, P));
            const cplx lam = transform_eigenvalue(n, ell, w, P);
            for (const auto& y : pts)
                eig.add(max_diff(apply_transform(sec, y, kp, cfg.quad), lam * sec.evaluate(y)) / nrm);
        }
    out.add("eigenfunctions/F phi = e^{-omega(n + ell/(1+c))} phi", "eigenvalues of the semigroup", eig.value, 1e-6);

    {
        Worst odd;
        const SectionSum p1(phi(1, 0, 0, P));
        const double nrm = std::sqrt(phi_norm_squared(1, 0, P));
        for (std::size_t j = 0; j < std::min<std::size_t>(3, pts.size()); ++j)
            odd.add(max_diff(apply_transform(p1, pts[j], kf, cfg.quad), -I * p1.evaluate(pts[j])) / nrm);
        odd.add(std::abs(transform_eigenvalue(1, 0, cplx(0.0, 0.5 * pi), P) + I));
        out.add("eigenfunctions/F phi_{1,0} = -i phi_{1,0}", "eigenvalues of the Fourier transform", odd.value, 1e-6);
    }

    Worst unit_mod, semigroup;
    const cplx w2(0.4, 0.7);
    for (int n = 0; n <= 11; ++n)
        for (int ell = 0; ell <= 3; ++ell) {
            for (double eta : {0.5 * pi, 1.1, -0.7})
                unit_mod.add(std::abs(std::abs(transform_eigenvalue(n, ell, cplx(0.0, eta), P)) - 1.0));
            semigroup.add(std::abs(transform_eigenvalue(n, ell, w, P) * transform_eigenvalue(n, ell, w2, P) -
                                   transform_eigenvalue(n, ell, w + w2, P)));
        }
    out.add("spectrum/unit modulus on Re omega = 0", "unitarity on the boundary", unit_mod.value, 1e-14);
    out.add("spectrum/semigroup law of the eigenvalues", "semigroup property", semigroup.value, 1e-14);

    Worst contraction;
    for (int s = 0; s < cfg.samples; ++s) {
        const Expansion f = random_expansion(P, 5, 5, 3, rng());
        const double r = contraction_ratio(f, w);
        contraction.add(w.real() == 0.0 ? std::abs(r - 1.0) : std::max(0.0, r - 1.0));
    }
    out.add(w.real() == 0.0 ? "operator/isometry on Re omega = 0" : "operator/contraction ||F f|| <= ||f||",
            "boundedness of the semigroup", contraction.value, 1e-12);

    if (w.real() > 0.0) {
        const HsNorm h = hs_norm(w, P, 200, 200);
        out.add("hilbert-schmidt/series vs closed form", "Hilbert-Schmidt norm of the semigroup",
                h.tail_bound / h.value, 1e-10);
        const HsNorm h2 = hs_norm(cplx(w.real() + 0.3, w.imag()), P, 200, 200);
        out.add("hilbert-schmidt/decreasing in Re omega", "Hilbert-Schmidt norm of the semigroup",
                std::max(0.0, h2.value - h.value), 0.0);
        const HsNorm hl = hs_norm(cplx(30.0, 0.0), P, 20, 20);
        out.add("hilbert-schmidt/large Re omega tends to 2^{m/2}", "Hilbert-Schmidt norm of the semigroup",
                std::abs(hl.value - std::pow(2.0, 0.5 * m)) / std::pow(2.0, 0.5 * m), 1e-10);
    }

    const double twice = 2.0 * (1.0 + P.c);
    if (std::abs(twice - std::round(twice)) < 1e-12) {
        const int N = static_cast<int>(std::lround(8.0 * (1.0 + P.c)));
        Worst fo;
        for (int n = 0; n <= 11; ++n)
            for (int ell = 0; ell <= 3; ++ell)
                fo.add(std::abs(std::pow(transform_eigenvalue(n, ell, cplx(0.0, 0.5 * pi), P), N) - 1.0));
        out.add("finite order/F^{8(1+c)} = Id", "finite order of the Fourier transform", fo.value, 1e-10);
        const int order = finite_order(P, 11, 3, N);
        out.add("finite order/minimal order divides 8(1+c)", "finite order of the Fourier transform",
                order > 0 && N % order == 0 ? 0.0 : 1.0, 0.0);
    }
    {
        const DeformParams irr(m, std::numbers::sqrt2 - 1.0);
        const cplx lam = transform_eigenvalue(0, 1, cplx(0.0, 0.5 * pi), irr);
        double closest = std::numeric_limits<double>::infinity();
        cplx pw = 1.0;
        for (int N = 1; N <= 50; ++N) {
            pw *= lam;
            closest = std::min(closest, std::abs(pw - 1.0));
        }
        out.add("finite order/c = sqrt(2) - 1 has no order <= 50", "finite order of the Fourier transform",
                closest > 1e-6 ? 0.0 : 1.0, 0.0);
    }

    {
        QuadratureSpec inner = cfg.quad;
        inner.R_max = 10.0;
        QuadratureSpec outer = cfg.quad;
        outer.R_max = 6.0;
        outer.n_r = 200;
        const Expansion f = random_expansion(P, 6, 4, 1, rng());
        const ParsevalResult pr = parseval_check(f, inner, outer);
        out.add("fourier/Parseval", "unitarity of the Fourier transform",
                std::abs(pr.norm_Ff2 - pr.norm_f2) / pr.norm_f2, 1e-6);
    }

    Worst euler;
    for (int s = 0; s < std::min(cfg.samples, 5); ++s)
        euler.add(euler_intertwining_residual(random_expansion(P, 5, 4, 2, rng())));
    out.add("fourier/F E = -(E + delta) F", "intertwining of the Fourier transform", euler.value, 1e-10);

    {
        const Expansion f = random_expansion(P, 6, 3, 1, rng());
        Expansion g(P);
        for (int n = 0; n <= 4; ++n)
            for (int ell = 0; ell <= 1; ++ell)
                for (int idx = 0; idx < static_cast<int>(monogenic_dimension(ell, m)); ++idx)
                    g.add({n, ell, idx}, complex_normal(rng));
        const PairValue pv = dirac_intertwining(f, g);
        const double r = std::abs(pv.lhs) > 1e-8 ? relative(pv.lhs, pv.rhs) : 1.0;
        out.add("fourier/F D = i(1+c) x F", "intertwining of the Fourier transform", r, 1e-10);
    }

    {
        Worst boch;
        for (int ell = 0; ell <= 2; ++ell)
            for (Parity par : {Parity::even, Parity::odd}) {
                const RadialProfile prof({{1.0, P.beta(ell)}, {0.3, P.beta(ell) + 2.0}}, 0.5);
                MonogenicSection sec{ell, 0, {}, {}, P};
                (par == Parity::even ? sec.f : sec.g) = prof;
                const BochnerTransform B = bochner(ell, 0, [prof](double r) { return prof(r); }, par, P, cfg.quad);
                for (std::size_t j = 0; j < std::min<std::size_t>(3, pts.size()); ++j)
                    boch.add(rel_diff(B(pts[j]), apply_transform(sec, pts[j], kf, cfg.quad)));
            }
        out.add("fourier/one-dimensional reduction", "Bochner identities", boch.value, 1e-8);
    }
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// uncertainty

std::vector<CheckResult> check_heisenberg(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    Collector out("heisenberg", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0x4e15ULL);
    const char* anchor = "Heisenberg uncertainty for the deformed transform";

    const HeisenbergResult g = heisenberg(SectionSum(phi(0, 0, 0, P)));
    out.add("equality/additive form for e^{-r^2/2}", anchor,
            std::abs(g.additive_lhs - g.additive_rhs) / g.additive_rhs, 1e-8);

    QuadratureSpec inner = cfg.quad;
    inner.R_max = 10.0;
    QuadratureSpec outer = cfg.quad;
    outer.R_max = 5.5;
    outer.n_r = 200;
    const HeisenbergResult hq =
        heisenberg_quadrature(0, 0, RadialProfile({{1.3, 0.0}}, 1.0 / 2.7), P, inner, outer);
    out.add("equality/product form for lambda e^{-r^2/alpha}", anchor,
            std::abs(hq.product_lhs - hq.product_rhs) / hq.product_rhs, 1e-6);

    Worst prod, add;
    for (int s = 0; s < cfg.samples; ++s) {
        const Expansion f = random_expansion(P, 5, 5, 3, rng());
        const HeisenbergResult h = heisenberg(f.to_sections());
        prod.add(h.product_rhs / h.product_lhs);
        add.add(h.additive_rhs / h.additive_lhs);
    }
    out.add("inequality/product form strict on random f", anchor, prod.value, 1.0 - 1e-9);
    out.add("inequality/additive form strict on random f", anchor, add.value, 1.0 - 1e-9);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// composition formula

std::vector<CheckResult> check_master(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    const int m = P.m;
    Collector out("master", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0x3a57ULL);
    const double tol = P.c > 0.0 ? 1e-5 : 1e-6;
    const char* anchor = "Gaussian composition of Fourier kernels gives the semigroup kernel";

    auto residual = [&](const MasterResult& r) {
        const double scale = std::max(1.0, r.rhs.max_abs());
        return std::max(max_diff(grade_project(r.lhs, 0), grade_project(r.rhs, 0)),
                        max_diff(grade_project(r.lhs, 2), grade_project(r.rhs, 2))) /
               scale;
    };
    Worst at_origin, generic;
    {
        const std::vector<double> origin(m, 0.0);
        const auto z = random_point(rng, m, 0.5, 2.0);
        at_origin.add(residual(master_formula_check(origin, z, 0.5, P, cfg.quad, cfg.trunc)));
    }
    for (int s = 0; s < std::max(1, cfg.samples / 2); ++s) {
        const auto x = random_point(rng, m, 0.1, 2.0);
        const auto z = random_point(rng, m, 0.1, 2.0);
        const double sv = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
        generic.add(residual(master_formula_check(x, z, sv, P, cfg.quad, cfg.trunc)));
    }
    out.add("x = 0", anchor, at_origin.value, tol);
    out.add("random (x, z, s), grades 0 and 2", anchor, generic.value, tol);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// differential system

std::vector<CheckResult> check_pde(const VerifyConfig& cfg) {
    const DeformParams& P = cfg.params;
    Collector out("pde", cfg.describe());
    const char* anchor = "PDE system for the kernel components";
    Worst first, second;
    for (double z : {0.5, 1.0, 2.0, 3.0, 4.0})
        for (double w : {-0.9, -0.45, 0.0, 0.45, 0.9}) {
            const PdeResidual r = pde_residual(z, w, P, cfg.trunc, 1e-4);
            first.add(r.first / std::max(1.0, r.scale_first));
            second.add(r.second / std::max(1.0, r.scale_second));
        }
    out.add("first equation on the 5x5 grid, relative to its largest term", anchor, first.value, 1e-5);
    out.add("second equation on the 5x5 grid, relative to its largest term", anchor, second.value, 1e-5);

    // halving h should divide the discretisation residual by about four
    const PdeResidual a = pde_residual(1.5, 0.3, P, cfg.trunc, 4e-3);
    const PdeResidual b = pde_residual(1.5, 0.3, P, cfg.trunc, 2e-3);
    const double ra = std::max(a.first, a.second), rb = std::max(b.first, b.second);
    const double order = std::log2(ra / rb);
    out.add("second-order convergence in h", anchor, std::abs(order - 2.0), 0.25);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// auxiliary series

std::vector<CheckResult> check_series(const VerifyConfig& cfg, bool as_printed) {
    const DeformParams& P = cfg.params;
    const DeformParams P2(P.m + 2, P.c);
    const double lam = P.lambda();
    Collector out(as_printed ? "series-printed" : "series", cfg.describe());
    std::mt19937_64 rng(cfg.seed ^ 0x5e71ULL);
    const AlphaMinusOne am1 = as_printed ? AlphaMinusOne::zero : AlphaMinusOne::continued;
    const cplx up = std::exp(I * (0.5 * pi / (1.0 + P.c)));
    const cplx cd_phase = as_printed ? std::conj(up) : up;
    const char* anchor = "recursions between the kernel series";
    constexpr double h = 1e-4;

    std::array<Worst, 7> res;
    for (int s = 0; s < 6; ++s) {
        const double z = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
        const double w = std::uniform_real_distribution<double>(-0.8, 0.8)(rng);
        auto S = [&](SeriesLetter l, const DeformParams& p, double ww) {
            return kernel_series_component(l, z, ww, p, cfg.trunc, am1);
        };
        auto dw = [&](SeriesLetter l) { return (S(l, P, w + h) - S(l, P, w - h)) / (2.0 * h * 2.0 * lam); };

        res[0].add(relative(S(SeriesLetter::A, P2, w), up * dw(SeriesLetter::A)));
        res[1].add(relative(S(SeriesLetter::B, P2, w), up * dw(SeriesLetter::B)));
        res[2].add(relative(S(SeriesLetter::C, P2, w), cd_phase * dw(SeriesLetter::C)));
        res[3].add(relative(S(SeriesLetter::D, P2, w), cd_phase * dw(SeriesLetter::D)));
        res[4].add(relative(S(SeriesLetter::E, P, w), dw(SeriesLetter::B)));
        res[5].add(relative(S(SeriesLetter::F, P, w), dw(SeriesLetter::D)));
        const auto [sc, bv] = assemble_from_components(z, w, P, cfg.trunc, am1);
        const auto [A, B] = fourier_AB(z, w, P, cfg.trunc);
        res[6].add(std::max(std::abs(sc - A), std::abs(bv - B)) / std::max({std::abs(A), std::abs(B), 1e-300}));
    }
    const std::array<const char*, 7> names = {
        "A_{lambda+1} = e^{i pi/(2(1+c))} A'_lambda / 2lambda",
        "B_{lambda+1} = e^{i pi/(2(1+c))} B'_lambda / 2lambda",
        as_printed ? "C_{lambda+1} = e^{-i pi/(2(1+c))} C'_lambda / 2lambda"
                   : "C_{lambda+1} = e^{i pi/(2(1+c))} C'_lambda / 2lambda",
        as_printed ? "D_{lambda+1} = e^{-i pi/(2(1+c))} D'_lambda / 2lambda"
                   : "D_{lambda+1} = e^{i pi/(2(1+c))} D'_lambda / 2lambda",
        "E_lambda = B'_lambda / 2lambda",
        "F_lambda = D'_lambda / 2lambda",
        "kernel assembled from A..F",
    };
    for (std::size_t i = 0; i < names.size(); ++i) out.add(names[i], anchor, res[i].value, 1e-6);
    return out.take();
}

// ---------------------------------------------------------------------------------------------
// special-function identities

std::vector<CheckResult> check_special(const VerifyConfig& cfg) {
    Collector out("special", cfg.describe());
    auto integrate = [](double T, const std::function<double(double)>& f) {
        const GaussRule g = gauss_legendre(300, 0.0, T);
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * f(g.x[i]);
        return s;
    };
    auto J = [](double nu, double x) { return bessel_j(nu, cplx(x, 0.0)).real(); };

    Worst weber;
    for (double nu : {0.5, 1.5, 2.25})
        for (auto [a, b] : {std::pair{0.7, 1.9}, std::pair{1.3, 0.4}})
            for (double g2 : {0.6, 1.4}) {
                const double lhs =
                    integrate(std::sqrt(50.0 / g2), [&](double t) { return J(nu, a * t) * J(nu, b * t) * std::exp(-g2 * t * t) * t; });
                const double rhs = 0.5 / g2 * std::exp(-(a * a + b * b) / (4.0 * g2)) * bessel_i(nu, a * b / (2.0 * g2));
                weber.add(std::abs(lhs - rhs) / std::abs(rhs));
            }
    out.add("Gaussian integral of J_nu(at) J_nu(bt)", "Weber's second exponential integral", weber.value, 1e-8);

    Worst lag;
    struct Lg {
        double alpha, beta;
        int j;
        double d;
    };
    for (const Lg& q : {Lg{0.5, 1.1, 2, 0.7}, Lg{1.3, 2.0, 3, 1.6}, Lg{0.2, 0.5, 1, 2.5}, Lg{2.0, 1.5, 0, 0.4},
                        Lg{1.0, 0.8, 4, 0.9}}) {
        const double lhs = 2.0 * integrate(std::sqrt(60.0 / q.d), [&](double r) {
            return std::pow(r, q.alpha + 1.0) * J(q.alpha, r * q.beta) * laguerre(q.j, q.alpha, r * r) *
                   std::exp(-q.d * r * r);
        });
        const double rhs = std::pow(q.d - 1.0, q.j) * std::pow(q.beta, q.alpha) /
                           (std::pow(2.0, q.alpha) * std::pow(q.d, q.alpha + q.j + 1.0)) *
                           laguerre(q.j, q.alpha, q.beta * q.beta / (4.0 * q.d * (1.0 - q.d))) *
                           std::exp(-q.beta * q.beta / (4.0 * q.d));
        lag.add(std::abs(lhs - rhs) / std::max(1e-3, std::abs(rhs)));
    }
    out.add("Hankel transform of a Laguerre function with Gaussian", "Hankel transform of Laguerre functions",
            lag.value, 1e-8);

    Worst szego;
    for (double alpha : {0.5, 1.0, 2.5})
        for (int j = 0; j <= 3; ++j)
            for (double s : {0.6, 1.7}) {
                const double lhs = integrate(12.0, [&](double r) {
                    return std::pow(r, alpha + 1.0) * J(alpha, r * s) * laguerre(j, alpha, r * r) * std::exp(-0.5 * r * r);
                });
                const double rhs = (j % 2 ? -1.0 : 1.0) * std::pow(s, alpha) * laguerre(j, alpha, s * s) *
                                   std::exp(-0.5 * s * s);
                szego.add(std::abs(lhs - rhs) / std::max(1e-3, std::abs(rhs)));
            }
    out.add("Laguerre functions are Hankel eigenfunctions", "Hankel transform of Laguerre functions", szego.value,
            1e-8);

    Worst geg;
    for (double lam : {0.5, 1.0, 1.7})
        for (int n = 1; n <= 8; ++n)
            for (double w : {-0.9, -0.3, 0.2, 0.75}) {
                const double lhs = w * gegenbauer(n - 1, lam + 1.0, w);
                const double rhs = n / (2.0 * (n + lam)) * gegenbauer(n, lam + 1.0, w) +
                                   (n >= 2 ? (n + 2.0 * lam) / (2.0 * (n + lam)) * gegenbauer(n - 2, lam + 1.0, w) : 0.0);
                geg.add(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
    out.add("w C_{n-1}^{lambda+1} three-term relation", "Gegenbauer recurrence", geg.value, 1e-12);

    Worst bound;
    for (double nu : {-0.5, 0.0, 0.5, 1.3, 4.0})
        for (double re : {-15.0, -3.0, 0.0, 0.7, 6.0, 18.0})
            for (double im : {-9.0, -1.0, 0.0, 0.4, 5.0}) {
                const cplx z(re, im);
                const double b = std::exp(std::abs(im) - std::lgamma(nu + 1.0));
                bound.add(std::max(0.0, std::abs(bessel_j_tilde(nu, z)) / b - 1.0));
            }
    out.add("|(z/2)^{-nu} J_nu(z)| <= e^{|Im z|}/Gamma(nu+1)", "Bessel function bound", bound.value, 1e-12);
    return out.take();
}

// ---------------------------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"osp12",      "basis",   "funk-hecke", "kernel-props",
                                                   "transform",  "heisenberg", "master",  "pde",
                                                   "series",     "special"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const VerifyConfig& cfg) {
    cfg.validate();
    if (name == "osp12") return check_osp12(cfg);
    if (name == "basis") return check_basis(cfg);
    if (name == "funk-hecke") return check_funk_hecke(cfg, false);
    if (name == "kernel-props") return check_kernel_props(cfg);
    if (name == "transform") return check_transform(cfg);
    if (name == "heisenberg") return check_heisenberg(cfg);
    if (name == "master") return check_master(cfg);
    if (name == "pde") return check_pde(cfg);
    if (name == "series") return check_series(cfg, false);
    if (name == "special") return check_special(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace radef
