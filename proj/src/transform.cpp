#include "radef/transform.hpp"

#include "radef/errors.hpp"
#include "radef/monogenics.hpp"
#include "radef/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radef {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Nodes whose integrand bound is below e^{-40} of the largest bound are skipped.
constexpr double skip_log_margin = 40.0;

double vec_norm(std::span<const double> v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

// Unit direction of v; e_1 when v = 0 (only direction-free terms survive there).
std::vector<double> direction(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    const double n = vec_norm(v);
    if (n == 0.0) {
        u[0] = 1.0;
        return u;
    }
    for (double& a : u) a /= n;
    return u;
}

// log of sum_j |c_j| r^{p_j} e^{-a r^2}
double log_profile_bound(const RadialProfile& f, double r) {
    if (f.empty()) return neg_inf;
    double s = 0.0;
    for (const auto& t : f.terms()) s += std::abs(t.coeff) * std::pow(r, t.power);
    return s > 0.0 ? std::log(s) - f.gaussian() * r * r : neg_inf;
}

cplx bessel_factor(const KernelParams& kp) {
    if (kp.omega.real() == 0.0) return 1.0 / std::sin(kp.omega.imag());
    return I / std::sinh(kp.omega);
}

const PolyCl& basis_poly(int ell, int idx, int m) {
    const auto& b = monogenic_basis(ell, m);
    if (idx < 0 || idx >= static_cast<int>(b.size()))
        throw std::invalid_argument("basis index out of range for l=" + std::to_string(ell));
    return b[idx];
}

// u M(y') + v y' M(y')
Multivector angular_assembly(int ell, int idx, int m, cplx u, cplx v, std::span<const double> y) {
    const std::vector<double> yu = direction(y);
    const Multivector M = basis_poly(ell, idx, m).evaluate(yu);
    Multivector out = M;
    out *= u;
    if (v != cplx{}) {
        Multivector xm = embed_vector(yu) * M;
        xm *= v;
        out += xm;
    }
    return out;
}

KernelParams fourier_params(const DeformParams& p) { return KernelParams{p, cplx(0.0, 0.5 * pi), {}}; }

}  // namespace

std::pair<cplx, cplx> transform_radial(const MonogenicSection& sec, double s, const KernelParams& kp,
                                       const QuadratureSpec& q) {
    kp.validate();
    q.validate();
    check_moments(sec);
    if (!(s >= 0.0)) throw std::invalid_argument("transform_radial: radius must be >= 0");
    const DeformParams& P = sec.params;
    const int ell = sec.ell;
    const double dm1 = P.delta() - 1.0;
    const double zexp = ell / (1.0 + P.c) + 1.0;
    const double growth = std::abs(bessel_factor(kp).imag());
    const GaussRule rule = q.radial();

    std::vector<double> env(rule.size());
    double env_max = neg_inf;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = rule.x[i];
        const double lr = std::log(r);
        const double lp = std::max(log_profile_bound(sec.f, r) + ell * lr, log_profile_bound(sec.g, r) + (ell + 1) * lr);
        const double pref = std::log(std::abs(semigroup_prefactor(r * r + s * s, kp)));
        env[i] = lp + dm1 * lr + pref + growth * r * s + zexp * std::log1p(r * s);
        env_max = std::max(env_max, env[i]);
    }

    cplx u = 0.0, v = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (!(env[i] >= env_max - skip_log_margin)) continue;
        const double r = rule.x[i];
        const double z = r * s;
        const cplx w = rule.w[i] * semigroup_prefactor(r * r + s * s, kp) * std::pow(r, ell + dm1);
        if (!sec.f.empty()) u += w * semigroup_p(ell, z, kp) * sec.f(r);
        if (!sec.g.empty()) v += w * r * semigroup_q(ell, z, kp) * sec.g(r);
    }
    return {u, v};
}

Multivector apply_transform(const MonogenicSection& sec, std::span<const double> y, const KernelParams& kp,
                            const QuadratureSpec& q) {
    if (static_cast<int>(y.size()) != sec.params.m) throw std::invalid_argument("apply_transform: dimension mismatch");
    const auto [u, v] = transform_radial(sec, vec_norm(y), kp, q);
    return angular_assembly(sec.ell, sec.idx, sec.params.m, u, v, y);
}

Multivector apply_transform(const SectionSum& f, std::span<const double> y, const KernelParams& kp,
                            const QuadratureSpec& q) {
    Multivector out(f.params().m);
    for (const auto& part : f.parts()) out += apply_transform(part, y, kp, q);
    return out;
}

Multivector apply_transform(const Field& F, std::span<const double> y, const KernelParams& kp,
                            const QuadratureSpec& q) {
    kp.validate();
    q.validate();
    const DeformParams& P = kp.params;
    const int m = P.m;
    if (static_cast<int>(y.size()) != m) throw std::invalid_argument("apply_transform: dimension mismatch");
    const double s = vec_norm(y);
    const std::vector<double> yu = direction(y);
    const GaussRule radial = q.radial();
    const SphereRule sphere = q.sphere(m);
    const double dm1 = P.delta() - 1.0;

    std::vector<Multivector> partial(radial.size(), Multivector(m));
    parallel_for(radial.size(), [&](std::size_t i) {
        const double r = radial.x[i];
        const KernelSeries series = semigroup_series(r * s, kp);
        const cplx pref = semigroup_prefactor(r * r + s * s, kp);
        const double wr = radial.w[i] * std::pow(r, dm1);
        std::vector<double> c0, c1, x(m);
        Multivector& acc = partial[i];
        for (std::size_t j = 0; j < sphere.size(); ++j) {
            const auto xi = sphere.node(j);
            double w = 0.0;
            for (int a = 0; a < m; ++a) {
                w += xi[a] * yu[a];
                x[a] = r * xi[a];
            }
            const auto [A, Bh] = series.evaluate(std::clamp(w, -1.0, 1.0), c0, c1);
            Multivector K = wedge(xi, yu);
            K *= Bh;
            K[0] += A;
            accumulate_product(acc, K, F(x), pref * wr * sphere.w[j]);
        }
    });
    Multivector out(m);
    for (const auto& p : partial) out += p;
    out *= 1.0 / P.sigma();
    return out;
}

CheckedTransform apply_transform_checked(const SectionSum& f, std::span<const double> y, const KernelParams& kp,
                                         const QuadratureSpec& q, double budget) {
    CheckedTransform out;
    out.value = apply_transform(f, y, kp, q);
    const Multivector fine = apply_transform(f, y, kp, q.doubled());
    out.estimated_error = max_diff(out.value, fine);
    if (out.estimated_error > budget)
        throw NumericalError("transform quadrature error estimate " + std::to_string(out.estimated_error) +
                             " exceeds budget " + std::to_string(budget));
    return out;
}

// ---------------------------------------------------------------- one-dimensional reduction

BochnerTransform::BochnerTransform(int ell, int idx, const std::function<cplx(double)>& f, Parity parity,
                                   const DeformParams& p, const QuadratureSpec& q)
    : ell_(ell), idx_(idx), parity_(parity), params_(p) {
    q.validate();
    basis_poly(ell, idx, p.m);
    const bool odd = parity == Parity::odd;
    nu_ = 0.5 * p.gamma(ell) - (odd ? 0.0 : 1.0);
    phase_ = std::polar(1.0, -pi * ell / (2.0 * (1.0 + p.c)));
    if (odd) phase_ *= -I;
    const GaussRule rule = q.radial();
    const double dm1 = p.delta() - 1.0;
    std::vector<cplx> w(rule.size());
    double biggest = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = rule.x[i];
        w[i] = rule.w[i] * std::pow(r, ell + (odd ? 1 : 0) + dm1) * f(r);
        if (!std::isfinite(std::abs(w[i]))) throw std::domain_error("bochner: radial integrand is not finite");
        biggest = std::max(biggest, std::abs(w[i]));
    }
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (std::abs(w[i]) <= 1e-30 * biggest) continue;
        r_.push_back(rule.x[i]);
        weight_.push_back(w[i]);
    }
}

cplx BochnerTransform::radial(double s) const {
    const double dh = 0.5 * (params_.delta() - 2.0);
    cplx sum = 0.0;
    if (s == 0.0) {
        // z^{-(delta-2)/2} J_nu(z) -> 2^{-nu} / Gamma(nu+1) when nu = (delta-2)/2, else 0
        if (std::abs(nu_ - dh) > 1e-14) return 0.0;
        for (const cplx& w : weight_) sum += w;
        return phase_ * sum * std::exp(-nu_ * std::numbers::ln2 - log_gamma(nu_ + 1.0));
    }
    for (std::size_t i = 0; i < r_.size(); ++i) {
        const double z = r_[i] * s;
        sum += weight_[i] * std::pow(z, -dh) * bessel_j(nu_, z);
    }
    return phase_ * sum;
}

Multivector BochnerTransform::operator()(std::span<const double> y) const {
    const cplx u = radial(vec_norm(y));
    return parity_ == Parity::even ? angular_assembly(ell_, idx_, params_.m, u, 0.0, y)
                                   : angular_assembly(ell_, idx_, params_.m, 0.0, u, y);
}

BochnerTransform bochner(int ell, int idx, const std::function<cplx(double)>& f, Parity parity,
                         const DeformParams& p, const QuadratureSpec& q) {
    return BochnerTransform(ell, idx, f, parity, p, q);
}

// ---------------------------------------------------------------- unitarity and friends

ParsevalResult parseval_check(const Expansion& f, const QuadratureSpec& inner, const QuadratureSpec& outer) {
    outer.validate();
    const DeformParams& P = f.params();
    const KernelParams kp = fourier_params(P);
    const SectionSum sec = f.to_sections();
    const auto& parts = sec.parts();
    const std::size_t n = parts.size();
    const GaussRule rule = outer.radial();

    // transformed radial coefficients per node and part
    std::vector<std::vector<std::pair<cplx, cplx>>> uv(rule.size());
    parallel_for(rule.size(), [&](std::size_t j) {
        uv[j].reserve(n);
        for (const auto& part : parts) uv[j].push_back(transform_radial(part, rule.x[j], kp, inner));
    });

    ParsevalResult out;
    out.norm_f2 = f.norm_squared();
    const double dm1 = P.delta() - 1.0;
    for (std::size_t a = 0; a < n; ++a) {
        const PolyCl& Ma = basis_poly(parts[a].ell, parts[a].idx, P.m);
        for (std::size_t b = 0; b < n; ++b) {
            const PolyCl& Mb = basis_poly(parts[b].ell, parts[b].idx, P.m);
            const cplx s0 = spherical_inner(Ma, Mb);
            const cplx s1 = spherical_inner(Ma, mul_x(Mb));
            if (s0 == cplx{} && s1 == cplx{}) continue;
            cplx acc = 0.0;
            for (std::size_t j = 0; j < rule.size(); ++j) {
                const auto [ua, va] = uv[j][a];
                const auto [ub, vb] = uv[j][b];
                const cplx local = s0 * (std::conj(ua) * ub + std::conj(va) * vb) +
                                   s1 * (std::conj(ua) * vb - std::conj(va) * ub);
                acc += rule.w[j] * std::pow(rule.x[j], dm1) * local;
            }
            out.norm_Ff2 += acc.real();
        }
    }
    return out;
}

PairValue dirac_intertwining(const Expansion& f, const Expansion& g) {
    const DeformParams& P = f.params();
    const cplx w(0.0, 0.5 * pi);
    const SectionSum gs = g.to_sections();
    const SectionSum lhs = Expansion::project(apply_D(f.to_sections())).transformed(w).to_sections();
    SectionSum rhs = apply_x(f.transformed(w).to_sections());
    rhs *= I * (1.0 + P.c);
    return {inner_product(lhs, gs), inner_product(rhs, gs)};
}

double euler_intertwining_residual(const Expansion& f) {
    const DeformParams& P = f.params();
    const cplx w(0.0, 0.5 * pi);
    const SectionSum lhs = Expansion::project(apply_E(f.to_sections())).transformed(w).to_sections();
    const SectionSum Ff = f.transformed(w).to_sections();
    SectionSum rhs = apply_E(Ff) + P.delta() * Ff;
    rhs *= -1.0;
    return norm(lhs - rhs) / std::sqrt(f.norm_squared());
}

double contraction_ratio(const Expansion& f, cplx omega) {
    if (omega.real() < 0.0) throw std::invalid_argument("contraction_ratio: Re omega must be >= 0");
    return std::sqrt(f.transformed(omega).norm_squared() / f.norm_squared());
}

HsNorm hs_norm(cplx omega, const DeformParams& p, int k_cut, int t_cut) {
    const double a = omega.real();
    if (!(a > 0.0)) throw std::invalid_argument("hs_norm: needs Re omega > 0");
    if (k_cut < 0 || t_cut < 0) throw std::invalid_argument("hs_norm: cut-offs must be >= 0");
    double partial = 0.0;
    for (int t = 0; t <= t_cut; ++t)
        for (int k = 0; k <= k_cut; ++k)
            partial += std::exp(-2.0 * a * t - 2.0 * a * k / (1.0 + p.c)) *
                       static_cast<double>(monogenic_dimension(k, p.m));
    // sum_k binom(k+m-2, m-2) q^k = (1-q)^{-(m-1)}
    const double total = std::pow(2.0, p.m) / (-std::expm1(-2.0 * a)) /
                         std::pow(-std::expm1(-2.0 * a / (1.0 + p.c)), p.m - 1);
    HsNorm out;
    out.value = std::sqrt(partial);
    out.tail_bound = std::max(0.0, std::sqrt(total) - out.value);
    return out;
}

HeisenbergResult heisenberg(const SectionSum& f) {
    const DeformParams& P = f.params();
    const SectionSum Ff = Expansion::project(f).transformed(cplx(0.0, 0.5 * pi)).to_sections();
    HeisenbergResult h;
    h.norm_f2 = inner_product(f, f).real();
    h.norm_xf2 = inner_product(apply_x(f), apply_x(f)).real();
    h.norm_Ff2 = inner_product(Ff, Ff).real();
    h.norm_xFf2 = inner_product(apply_x(Ff), apply_x(Ff)).real();
    h.product_lhs = std::sqrt(h.norm_xf2 * h.norm_xFf2);
    h.product_rhs = 0.5 * P.delta() * h.norm_f2;
    h.additive_lhs = h.norm_xf2 + h.norm_xFf2;
    h.additive_rhs = P.delta() * h.norm_f2;
    return h;
}

HeisenbergResult heisenberg_quadrature(int ell, int idx, const RadialProfile& f, const DeformParams& p,
                                       const QuadratureSpec& inner, const QuadratureSpec& outer) {
    outer.validate();
    const SectionSum sec(MonogenicSection{ell, idx, f, RadialProfile{}, p});
    const BochnerTransform F = bochner(ell, idx, [&](double r) { return f(r); }, Parity::even, p, inner);
    const PolyCl& M = basis_poly(ell, idx, p.m);
    const double sm = spherical_inner(M, M).real();
    const GaussRule rule = outer.radial();
    std::vector<double> u2(rule.size());
    parallel_for(rule.size(), [&](std::size_t j) { u2[j] = std::norm(F.radial(rule.x[j])); });
    HeisenbergResult h;
    const double dm1 = p.delta() - 1.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double s = rule.x[j];
        const double w = rule.w[j] * std::pow(s, dm1) * u2[j] * sm;
        h.norm_Ff2 += w;
        h.norm_xFf2 += w * s * s;
    }
    h.norm_f2 = inner_product(sec, sec).real();
    h.norm_xf2 = inner_product(apply_x(sec), apply_x(sec)).real();
    h.product_lhs = std::sqrt(h.norm_xf2 * h.norm_xFf2);
    h.product_rhs = 0.5 * p.delta() * h.norm_f2;
    h.additive_lhs = h.norm_xf2 + h.norm_xFf2;
    h.additive_rhs = p.delta() * h.norm_f2;
    return h;
}

MasterResult master_formula_check(std::span<const double> x, std::span<const double> z, double s,
                                  const DeformParams& p, const QuadratureSpec& q, const Truncation& trunc) {
    if (!(s > 0.0)) throw std::invalid_argument("master_formula_check: s must be > 0");
    if (static_cast<int>(x.size()) != p.m || static_cast<int>(z.size()) != p.m)
        throw std::invalid_argument("master_formula_check: dimension mismatch");
    q.validate();
    trunc.validate();
    const int m = p.m;
    const double rx = vec_norm(x), rz = vec_norm(z);
    const std::vector<double> xu = direction(x), zu = direction(z);
    const GaussRule rule = q.radial();
    const double dm1 = p.delta() - 1.0;
    const double sigma = p.sigma();
    const double lam = p.lambda();

    std::vector<double> weight(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        weight[i] = rule.w[i] * std::exp(-s * rule.x[i] * rule.x[i]) * std::pow(rule.x[i], dm1);

    MasterResult out;
    out.lhs = Multivector(m);
    double biggest = 0.0;
    int small = 0;
    int k = 0;
    for (;; ++k) {
        if (k >= trunc.k_max)
            throw NumericalError("master formula: k-sum not converged within k_max = " + std::to_string(trunc.k_max));
        cplx R1 = 0.0, R2 = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            if (weight[i] == 0.0) continue;
            const double r = rule.x[i];
            R1 += weight[i] * fourier_p(k, r * rx, p) * std::conj(fourier_p(k, r * rz, p));
            R2 += weight[i] * fourier_q(k, r * rx, p) * std::conj(fourier_q(k, r * rz, p));
        }
        Multivector term = repr_P(k, zu, xu);
        term *= R1;
        Multivector tq = repr_Q(k, zu, xu);
        tq *= R2;
        term += tq;
        term *= sigma;
        out.lhs += term;
        const double mu = sigma * (std::abs(R1) + std::abs(R2)) * (k + lam) / lam * gegenbauer_at_one(k, lam);
        biggest = std::max(biggest, mu);
        if (mu <= trunc.tol * biggest) {
            if (++small >= trunc.streak) break;
        } else {
            small = 0;
        }
    }
    out.terms_used = k + 1;

    const double omega = std::asinh(2.0 * s);
    const KernelParams kp{p, cplx(omega, 0.0), trunc};
    Multivector K = semigroup_kernel(z, x, kp).assembled;
    const double g = std::exp(-0.5 * omega * p.delta() -
                              0.5 * (rx * rx + rz * rz) * (1.0 - std::cosh(omega)) / std::sinh(omega));
    K *= sigma * g;
    out.rhs = std::move(K);
    return out;
}

int finite_order(const DeformParams& p, int n_max, int ell_max, int N_max, double tol) {
    std::vector<cplx> lam, power;
    for (int n = 0; n <= n_max; ++n)
        for (int ell = 0; ell <= ell_max; ++ell) lam.push_back(transform_eigenvalue(n, ell, cplx(0.0, 0.5 * pi), p));
    power.assign(lam.size(), 1.0);
    for (int N = 1; N <= N_max; ++N) {
        bool identity = true;
        for (std::size_t i = 0; i < lam.size(); ++i) {
            power[i] *= lam[i];
            identity = identity && std::abs(power[i] - 1.0) <= tol;
        }
        if (identity) return N;
    }
    return 0;
}

}  // namespace radef
