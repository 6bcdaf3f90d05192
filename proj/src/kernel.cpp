#include "radef/kernel.hpp"

#include "radef/errors.hpp"
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
constexpr double ln2 = std::numbers::ln2;
const cplx I{0.0, 1.0};

double vec_norm(std::span<const double> v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// e * ln z with the convention 0 * ln 0 = 0
double log_zpow(double e, double z) {
    if (e == 0.0) return 0.0;
    return z == 0.0 ? -std::numeric_limits<double>::infinity() : e * std::log(z);
}

void require_unit(std::span<const double> v, const char* what) {
    if (std::abs(vec_norm(v) - 1.0) > 1e-10)
        throw std::invalid_argument(std::string(what) + ": argument must be a unit vector");
}

// Bounds of |P_k| and |Q_k| on the sphere, used to weigh terms in the truncation test.
double bound_P(int k, double lam) {
    double b = (k + 2.0 * lam) / (2.0 * lam) * gegenbauer_at_one(k, lam);
    if (k >= 1) b += gegenbauer_at_one(k - 1, lam + 1.0);
    return b;
}

double bound_Q(int k, double lam) {
    return (k + 1.0) / (2.0 * lam) * gegenbauer_at_one(k + 1, lam) + gegenbauer_at_one(k, lam + 1.0);
}

bool use_eta(const KernelParams& kp, SemigroupForm form) {
    if (form == SemigroupForm::eta) {
        if (kp.omega.real() != 0.0) throw std::invalid_argument("eta form requires Re omega = 0");
        return true;
    }
    return form == SemigroupForm::automatic && kp.omega.real() == 0.0;
}

// Quantities of the semigroup kernel that depend on omega only.
struct OmegaData {
    cplx log_two_sinh;   // principal Log(2 sinh omega)
    cplx inv_two_sinh;   // 1 / (2 sinh omega)
    cplx bessel_factor;  // Bessel argument per unit z
    cplx coth;
};

OmegaData omega_data(const KernelParams& kp, SemigroupForm form) {
    OmegaData d;
    if (use_eta(kp, form)) {
        const double eta = kp.omega.imag();
        const double s = std::sin(eta);
        d.log_two_sinh = cplx(std::log(std::abs(2.0 * s)), s > 0 ? 0.5 * pi : -0.5 * pi);
        d.inv_two_sinh = -I / (2.0 * s);
        d.bessel_factor = 1.0 / s;
        d.coth = -I * std::cos(eta) / s;
    } else {
        const cplx sh = std::sinh(kp.omega);
        d.log_two_sinh = std::log(2.0 * sh);
        d.inv_two_sinh = 1.0 / (2.0 * sh);
        d.bessel_factor = I / sh;
        d.coth = std::cosh(kp.omega) / sh;
    }
    return d;
}

cplx semigroup_p_impl(int k, double z, const KernelParams& kp, const OmegaData& d) {
    const DeformParams& P = kp.params;
    const double g2 = 0.5 * P.gamma(k);
    const cplx lg = ln2 + 0.5 * kp.omega * P.delta() - g2 * d.log_two_sinh + log_zpow(k / (1.0 + P.c), z) -
                    log_gamma(g2);
    return std::exp(lg) * bessel_series(g2 - 1.0, d.bessel_factor * z);
}

cplx semigroup_q_impl(int k, double z, const KernelParams& kp, const OmegaData& d) {
    const DeformParams& P = kp.params;
    const double g2 = 0.5 * P.gamma(k);
    const cplx lg = ln2 + 0.5 * kp.omega * P.delta() - g2 * d.log_two_sinh +
                    log_zpow(1.0 + k / (1.0 + P.c), z) - log_gamma(g2 + 1.0);
    return std::exp(lg) * d.inv_two_sinh * bessel_series(g2, d.bessel_factor * z);
}

template <class PQ>
KernelSeries build_series(double z, const DeformParams& P, const Truncation& tr, PQ&& pq) {
    tr.validate();
    if (!(z >= 0.0)) throw std::invalid_argument("kernel series: z must be >= 0");
    KernelSeries s;
    s.params = P;
    s.z = z;
    const double lam = P.lambda();
    double biggest = 0.0;
    int small = 0;
    for (int k = 0; k < tr.k_max; ++k) {
        auto [p, q] = pq(k);
        s.p.push_back(p);
        s.q.push_back(q);
        const double mu = std::abs(p) * bound_P(k, lam) + std::abs(q) * bound_Q(k, lam);
        biggest = std::max(biggest, mu);
        if (mu <= tr.tol * biggest) {
            if (++small >= tr.streak) {
                s.tail_estimate = mu;
                return s;
            }
        } else {
            small = 0;
        }
    }
    throw NumericalError("kernel series not converged within k_max = " + std::to_string(tr.k_max) +
                         " terms at z = " + std::to_string(z));
}

void check_z(double z, const Truncation& tr) {
    if (z > tr.max_z)
        throw NumericalError("z = " + std::to_string(z) + " exceeds the configured evaluation bound " +
                             std::to_string(tr.max_z));
}

KernelValue assemble(std::span<const double> x, std::span<const double> y, const KernelSeries& s, cplx pref) {
    if (x.size() != y.size()) throw std::invalid_argument("kernel: dimension mismatch");
    const int m = static_cast<int>(x.size());
    KernelValue v;
    v.terms_used = s.terms();
    v.tail_estimate = std::abs(pref) * s.tail_estimate;
    if (s.z == 0.0) {
        v.A = s.evaluate(1.0).first;
        v.B = 0.0;
        v.assembled = Multivector::scalar(m, pref * v.A);
        return v;
    }
    const double w = std::clamp(dot(x, y) / s.z, -1.0, 1.0);
    auto [A, Bh] = s.evaluate(w);
    v.A = A;
    v.B = Bh / s.z;
    Multivector k = wedge(x, y);
    k *= v.B;
    k[0] += v.A;
    k *= pref;
    v.assembled = std::move(k);
    return v;
}

}  // namespace

cplx fourier_p(int k, double z, const DeformParams& P) {
    const double nu = 0.5 * P.gamma(k) - 1.0;
    const cplx lg = cplx(-nu * ln2 + log_zpow(k / (1.0 + P.c), z) - log_gamma(nu + 1.0),
                         -pi * k / (2.0 * (1.0 + P.c)));
    return std::exp(lg) * bessel_series(nu, z);
}

cplx fourier_q(int k, double z, const DeformParams& P) {
    const double nu = 0.5 * P.gamma(k);
    const cplx lg = cplx(-nu * ln2 + log_zpow(1.0 + k / (1.0 + P.c), z) - log_gamma(nu + 1.0),
                         -pi * k / (2.0 * (1.0 + P.c)));
    return -I * std::exp(lg) * bessel_series(nu, z);
}

void Truncation::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("truncation tol must be > 0");
    if (k_max < 8) throw std::invalid_argument("truncation k_max must be >= 8, got " + std::to_string(k_max));
    if (streak < 1) throw std::invalid_argument("truncation streak must be >= 1");
    if (!(max_z > 0.0)) throw std::invalid_argument("truncation max_z must be > 0");
}

void KernelParams::validate() const {
    trunc.validate();
    if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag()))
        throw std::invalid_argument("omega must be finite");
    if (omega.real() < 0.0) throw std::invalid_argument("omega must satisfy Re omega >= 0");
    if (std::abs(omega.imag()) > pi) throw std::invalid_argument("omega must satisfy |Im omega| <= pi");
    if (omega.real() == 0.0 && std::abs(std::sin(omega.imag())) < 1e-12)
        throw std::invalid_argument("omega must not lie in i pi Z");
}

Multivector repr_P(int k, std::span<const double> xu, std::span<const double> yu) {
    if (k < 0) throw std::invalid_argument("repr_P: k must be >= 0");
    require_unit(xu, "repr_P");
    require_unit(yu, "repr_P");
    const int m = static_cast<int>(xu.size());
    const double lam = 0.5 * (m - 2);
    const double w = std::clamp(dot(xu, yu), -1.0, 1.0);
    Multivector out(m);
    if (k >= 1) {
        out = wedge(xu, yu);
        out *= -gegenbauer(k - 1, lam + 1.0, w);
    }
    out[0] += (k + 2.0 * lam) / (2.0 * lam) * gegenbauer(k, lam, w);
    return out;
}

Multivector repr_Q(int j, std::span<const double> xu, std::span<const double> yu) {
    if (j < 0) throw std::invalid_argument("repr_Q: index must be >= 0");
    require_unit(xu, "repr_Q");
    require_unit(yu, "repr_Q");
    const int m = static_cast<int>(xu.size());
    const double lam = 0.5 * (m - 2);
    const double w = std::clamp(dot(xu, yu), -1.0, 1.0);
    Multivector out = wedge(xu, yu);
    out *= gegenbauer(j, lam + 1.0, w);
    out[0] += (j + 1.0) / (2.0 * lam) * gegenbauer(j + 1, lam, w);
    return out;
}

std::pair<cplx, cplx> KernelSeries::evaluate(double w) const {
    std::vector<double> c0, c1;
    return evaluate(w, c0, c1);
}

std::pair<cplx, cplx> KernelSeries::evaluate(double w, std::vector<double>& c0, std::vector<double>& c1) const {
    const int K = terms();
    const double lam = params.lambda();
    gegenbauer_all(K, lam, w, c0);
    gegenbauer_all(K, lam + 1.0, w, c1);
    cplx A = 0.0, Bh = 0.0;
    for (int k = 0; k <= K; ++k) {
        cplx a = 0.0, b = 0.0;
        if (k < K) {
            a += p[k] * ((k + 2.0 * lam) / (2.0 * lam));
            b -= p[k];
        }
        if (k >= 1) {
            a += q[k - 1] * (k / (2.0 * lam));
            b += q[k - 1];
            Bh += b * c1[k - 1];
        }
        A += a * c0[k];
    }
    return {A, Bh};
}

cplx semigroup_p(int k, double z, const KernelParams& kp, SemigroupForm form) {
    kp.validate();
    return semigroup_p_impl(k, z, kp, omega_data(kp, form));
}

cplx semigroup_q(int k, double z, const KernelParams& kp, SemigroupForm form) {
    kp.validate();
    return semigroup_q_impl(k, z, kp, omega_data(kp, form));
}

cplx semigroup_prefactor(double r2_plus_s2, const KernelParams& kp, SemigroupForm form) {
    kp.validate();
    return std::exp(-0.5 * omega_data(kp, form).coth * r2_plus_s2);
}

KernelSeries semigroup_series(double z, const KernelParams& kp, SemigroupForm form) {
    kp.validate();
    const OmegaData d = omega_data(kp, form);
    return build_series(z, kp.params, kp.trunc, [&](int k) {
        return std::pair{semigroup_p_impl(k, z, kp, d), semigroup_q_impl(k, z, kp, d)};
    });
}

KernelSeries fourier_series(double z, const DeformParams& params, const Truncation& trunc) {
    return build_series(z, params, trunc,
                        [&](int k) { return std::pair{fourier_p(k, z, params), fourier_q(k, z, params)}; });
}

KernelValue semigroup_kernel(std::span<const double> x, std::span<const double> y, const KernelParams& kp,
                             SemigroupForm form) {
    kp.validate();
    const double r = vec_norm(x), s = vec_norm(y);
    check_z(r * s, kp.trunc);
    return assemble(x, y, semigroup_series(r * s, kp, form), semigroup_prefactor(r * r + s * s, kp, form));
}

KernelValue fourier_kernel(std::span<const double> x, std::span<const double> y, const DeformParams& params,
                           const Truncation& trunc) {
    const double z = vec_norm(x) * vec_norm(y);
    check_z(z, trunc);
    return assemble(x, y, fourier_series(z, params, trunc), 1.0);
}

std::pair<cplx, cplx> fourier_AB(double z, double w, const DeformParams& params, const Truncation& trunc) {
    check_z(z, trunc);
    const KernelSeries s = fourier_series(z, params, trunc);
    if (z == 0.0) return {s.evaluate(1.0).first, 0.0};
    auto [A, Bh] = s.evaluate(w);
    return {A, Bh / z};
}

cplx kernel_series_component(SeriesLetter letter, double z, double w, const DeformParams& P,
                             const Truncation& tr, AlphaMinusOne am1) {
    tr.validate();
    if (!(z > 0.0)) throw std::invalid_argument("kernel_series_component: z must be > 0");
    const double lam = P.lambda();
    const double phase = -pi / (2.0 * (1.0 + P.c));
    auto alpha = [&](int k) -> cplx {
        if (k == -1 && am1 == AlphaMinusOne::zero) return 0.0;
        return std::polar(1.0, phase * k);
    };
    const bool shifted = letter == SeriesLetter::C || letter == SeriesLetter::D || letter == SeriesLetter::F;
    const bool upper = letter == SeriesLetter::E || letter == SeriesLetter::F;
    const bool weighted = letter == SeriesLetter::A || letter == SeriesLetter::C;

    std::vector<double> g;
    gegenbauer_all(tr.k_max, upper ? lam + 1.0 : lam, w, g);
    cplx sum = 0.0;
    double biggest = 0.0;
    int small = 0;
    for (int k = upper ? 1 : 0; k <= tr.k_max; ++k) {
        const int j = shifted ? k - 1 : k;
        const double nu = shifted ? 0.5 * P.gamma(j) : 0.5 * P.gamma(j) - 1.0;
        const int deg = upper ? k - 1 : k;
        cplx term = alpha(j) * bessel_j(nu, z) * g[deg];
        if (weighted) term *= (k + lam);
        sum += term;
        const double bound = std::abs(alpha(j) * bessel_j(nu, z)) * (weighted ? k + lam : 1.0) *
                             gegenbauer_at_one(deg, upper ? lam + 1.0 : lam);
        biggest = std::max(biggest, bound);
        if (bound <= tr.tol * biggest) {
            if (++small >= tr.streak) return sum;
        } else {
            small = 0;
        }
    }
    throw NumericalError("auxiliary kernel series not converged within k_max = " + std::to_string(tr.k_max));
}

std::pair<cplx, cplx> assemble_from_components(double z, double w, const DeformParams& P, const Truncation& tr,
                                               AlphaMinusOne am1) {
    auto S = [&](SeriesLetter l) { return kernel_series_component(l, z, w, P, tr, am1); };
    const double lam = P.lambda();
    const double d = P.delta();
    const double zs = std::pow(z, -(d - 2.0) / 2.0);
    const cplx scalar = zs / (2.0 * lam) * (S(SeriesLetter::A) - I * S(SeriesLetter::C)) +
                        0.5 * zs * (S(SeriesLetter::B) + I * S(SeriesLetter::D));
    const cplx biv = -std::pow(z, -d / 2.0) * (S(SeriesLetter::E) + I * S(SeriesLetter::F));
    return {scalar, biv};
}

PdeResidual pde_residual(double z, double w, const DeformParams& P, const Truncation& tr, double h) {
    if (!(z > 0.0) || !(std::abs(w) < 1.0)) throw std::invalid_argument("pde_residual: need z > 0 and |w| < 1");
    if (!(h > 0.0) || h >= z) throw std::invalid_argument("pde_residual: need 0 < h < z");
    auto [f, g] = fourier_AB(z, w, P, tr);
    auto [fzp, gzp] = fourier_AB(z + h, w, P, tr);
    auto [fzm, gzm] = fourier_AB(z - h, w, P, tr);
    auto [fwp, gwp] = fourier_AB(z, w + h, P, tr);
    auto [fwm, gwm] = fourier_AB(z, w - h, P, tr);
    const cplx fz = (fzp - fzm) / (2.0 * h), gz = (gzp - gzm) / (2.0 * h);
    const cplx fw = (fwp - fwm) / (2.0 * h), gw = (gwp - gwm) / (2.0 * h);
    const double c = P.c, m = P.m;
    const cplx t1[] = {(m - 1.0 + c) * g, (1.0 + c) * z * gz, fw / z, I * (1.0 + c) * f, -I * (1.0 + c) * z * w * g};
    const cplx t2[] = {(1.0 + c) * z * fz, -w * fw, -c * z * w * g, -(1.0 + c) * z * z * w * gz,
                       z * (w * w - 1.0) * gw, I * (1.0 + c) * z * z * g};
    PdeResidual r{0.0, 0.0, 0.0, 0.0};
    cplx e1 = 0.0, e2 = 0.0;
    for (const cplx& t : t1) {
        e1 += t;
        r.scale_first = std::max(r.scale_first, std::abs(t));
    }
    for (const cplx& t : t2) {
        e2 += t;
        r.scale_second = std::max(r.scale_second, std::abs(t));
    }
    r.first = std::abs(e1);
    r.second = std::abs(e2);
    return r;
}

}  // namespace radef
