#include "radef/radial.hpp"

#include "radef/monogenics.hpp"
#include "radef/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace radef {

DeformParams::DeformParams(int m_, double c_) : m(m_), c(c_) {
    if (m < 3) throw std::invalid_argument("m must be >= 3 (m = 2 gives lambda = 0), got m=" + std::to_string(m));
    if (m > Multivector::max_dim) throw std::invalid_argument("m must be <= 12, got m=" + std::to_string(m));
    if (!std::isfinite(c) || !(c > -1.0))
        throw std::invalid_argument("deformation parameter must satisfy c > -1, got c=" + std::to_string(c));
}

double DeformParams::sigma() const { return sphere_area(m); }

// ---------------------------------------------------------------- profiles

RadialProfile::RadialProfile(std::vector<RadialTerm> terms, double gaussian) : terms_(std::move(terms)), a_(gaussian) {
    if (!(gaussian > 0.0)) throw std::invalid_argument("RadialProfile: Gaussian exponent must be > 0");
    canonicalize();
}

cplx RadialProfile::operator()(double r) const {
    cplx s = 0.0;
    for (const auto& t : terms_) s += t.coeff * std::pow(r, t.power);
    return s * std::exp(-a_ * r * r);
}

double RadialProfile::max_coeff() const {
    double v = 0.0;
    for (const auto& t : terms_) v = std::max(v, std::abs(t.coeff));
    return v;
}

RadialProfile RadialProfile::derivative() const {
    RadialProfile out;
    out.a_ = a_;
    for (const auto& t : terms_) {
        if (t.power != 0.0) out.terms_.push_back({t.coeff * t.power, t.power - 1.0});
        out.terms_.push_back({-2.0 * a_ * t.coeff, t.power + 1.0});
    }
    out.canonicalize();
    return out;
}

RadialProfile RadialProfile::times_power(double dp) const {
    RadialProfile out = *this;
    for (auto& t : out.terms_) t.power += dp;
    return out;
}

RadialProfile RadialProfile::conj() const {
    RadialProfile out = *this;
    for (auto& t : out.terms_) t.coeff = std::conj(t.coeff);
    return out;
}

RadialProfile& RadialProfile::operator+=(const RadialProfile& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) a_ = o.a_;
    if (a_ != o.a_) throw std::invalid_argument("RadialProfile: cannot add profiles with different Gaussians");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

RadialProfile& RadialProfile::operator-=(const RadialProfile& o) { return *this += cplx(-1.0) * o; }

RadialProfile& RadialProfile::operator*=(cplx s) {
    for (auto& t : terms_) t.coeff *= s;
    canonicalize();
    return *this;
}

void RadialProfile::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const RadialTerm& x, const RadialTerm& y) { return x.power < y.power; });
    std::vector<RadialTerm> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() && std::abs(merged.back().power - t.power) <= 1e-12)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const RadialTerm& t) { return t.coeff == cplx{}; });
    terms_ = std::move(merged);
}

RadialProfile operator+(RadialProfile a, const RadialProfile& b) { return a += b; }
RadialProfile operator-(RadialProfile a, const RadialProfile& b) { return a -= b; }
RadialProfile operator*(cplx s, RadialProfile a) { return a *= s; }

double profile_residual(const RadialProfile& a, const RadialProfile& b) {
    if (!a.empty() && !b.empty() && a.gaussian() != b.gaussian()) return INFINITY;
    const RadialProfile d = a - b;
    const double scale = std::max({1.0, a.max_coeff(), b.max_coeff()});
    return d.max_coeff() / scale;
}

// ---------------------------------------------------------------- sections

namespace {

const PolyCl& basis_element(int ell, int idx, int m) {
    const auto& b = monogenic_basis(ell, m);
    if (idx < 0 || idx >= static_cast<int>(b.size()))
        throw std::invalid_argument("basis index " + std::to_string(idx) + " outside 0.." +
                                    std::to_string(b.size() - 1) + " for l=" + std::to_string(ell));
    return b[idx];
}

bool same_params(const DeformParams& a, const DeformParams& b) { return a.m == b.m && a.c == b.c; }

bool same_slot(const MonogenicSection& a, const MonogenicSection& b) {
    const bool fg = a.f.empty() || b.f.empty() || a.f.gaussian() == b.f.gaussian();
    const bool gg = a.g.empty() || b.g.empty() || a.g.gaussian() == b.g.gaussian();
    return a.ell == b.ell && a.idx == b.idx && fg && gg;
}

// Zero a factor that cancels to rounding level so the corresponding power drops out.
double snap(double v, double scale) { return std::abs(v) <= 1e-12 * std::max(1.0, scale) ? 0.0 : v; }

}  // namespace

Multivector MonogenicSection::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != params.m) throw std::invalid_argument("section: point dimension mismatch");
    const Multivector M = basis_element(ell, idx, params.m).evaluate(x);
    double r2 = 0;
    for (double v : x) r2 += v * v;
    const double r = std::sqrt(r2);
    Multivector out = M * f(r);
    if (!g.empty()) accumulate_product(out, embed_vector(x), M, g(r));
    return out;
}

SectionSum::SectionSum(const MonogenicSection& s) : params_(s.params) { parts_.push_back(s); }

void SectionSum::add(const MonogenicSection& s, cplx scale) {
    if (parts_.empty() && !same_params(params_, s.params)) params_ = s.params;
    if (!same_params(params_, s.params)) throw std::invalid_argument("SectionSum: mixed deformation parameters");
    for (auto& p : parts_)
        if (same_slot(p, s)) {
            p.f += scale * s.f;
            p.g += scale * s.g;
            return;
        }
    MonogenicSection t = s;
    t.f *= scale;
    t.g *= scale;
    parts_.push_back(std::move(t));
}

SectionSum& SectionSum::operator+=(const SectionSum& o) {
    for (const auto& p : o.parts_) add(p);
    return *this;
}

SectionSum& SectionSum::operator-=(const SectionSum& o) {
    for (const auto& p : o.parts_) add(p, -1.0);
    return *this;
}

SectionSum& SectionSum::operator*=(cplx s) {
    for (auto& p : parts_) {
        p.f *= s;
        p.g *= s;
    }
    return *this;
}

Multivector SectionSum::evaluate(std::span<const double> x) const {
    Multivector out(params_.m);
    for (const auto& p : parts_) out += p.evaluate(x);
    return out;
}

SectionSum operator+(SectionSum a, const SectionSum& b) { return a += b; }
SectionSum operator-(SectionSum a, const SectionSum& b) { return a -= b; }
SectionSum operator*(cplx s, SectionSum a) { return a *= s; }

void check_moments(const MonogenicSection& s) {
    const double mu = s.params.measure_exponent();
    for (const auto& t : s.f.terms())
        if (!(2.0 * t.power + 2.0 * s.ell + mu > -1.0 + 1e-12))
            throw std::domain_error("section profile power " + std::to_string(t.power) +
                                    " is not square integrable at r = 0");
    for (const auto& t : s.g.terms())
        if (!(2.0 * t.power + 2.0 * s.ell + 2.0 + mu > -1.0 + 1e-12))
            throw std::domain_error("section x-part power " + std::to_string(t.power) +
                                    " is not square integrable at r = 0");
}

MonogenicSection apply_D(const MonogenicSection& s) {
    const double c = s.params.c, ell = s.ell, m = s.params.m;
    MonogenicSection out{s.ell, s.idx, RadialProfile{}, RadialProfile{}, s.params};
    // scalar part: -(1+c) r g' - (m + 2l) g - c(l+1) g
    {
        std::vector<RadialTerm> terms;
        const double a = s.g.gaussian();
        for (const auto& t : s.g.terms()) {
            const double k0 = -(1.0 + c) * t.power - (m + 2.0 * ell) - c * (ell + 1.0);
            const double k = snap(k0, (1.0 + c) * std::abs(t.power) + m + 2.0 * ell + std::abs(c) * (ell + 1.0));
            terms.push_back({k * t.coeff, t.power});
            terms.push_back({2.0 * a * (1.0 + c) * t.coeff, t.power + 2.0});
        }
        out.f = RadialProfile(std::move(terms), s.g.gaussian());
    }
    // x̲ part: (1+c) f'/r + c l f / r^2
    {
        std::vector<RadialTerm> terms;
        const double a = s.f.gaussian();
        for (const auto& t : s.f.terms()) {
            const double k = snap((1.0 + c) * t.power + c * ell, (1.0 + c) * std::abs(t.power) + std::abs(c) * ell);
            terms.push_back({k * t.coeff, t.power - 2.0});
            terms.push_back({-2.0 * a * (1.0 + c) * t.coeff, t.power});
        }
        out.g = RadialProfile(std::move(terms), s.f.gaussian());
    }
    check_moments(out);
    return out;
}

MonogenicSection apply_x(const MonogenicSection& s) {
    MonogenicSection out{s.ell, s.idx, cplx(-1.0) * s.g.times_power(2.0), s.f, s.params};
    return out;
}

MonogenicSection apply_E(const MonogenicSection& s) {
    auto euler = [](const RadialProfile& p, double shift) {
        std::vector<RadialTerm> terms;
        for (const auto& t : p.terms()) {
            terms.push_back({snap(t.power + shift, std::abs(t.power) + shift) * t.coeff, t.power});
            terms.push_back({-2.0 * p.gaussian() * t.coeff, t.power + 2.0});
        }
        return RadialProfile(std::move(terms), p.gaussian());
    };
    return {s.ell, s.idx, euler(s.f, s.ell), euler(s.g, s.ell + 1.0), s.params};
}

MonogenicSection apply_L(const MonogenicSection& s) {
    const double k = (1.0 + s.params.c) * (1.0 + s.params.c);
    MonogenicSection dd = apply_D(apply_D(s));
    const MonogenicSection xx = apply_x(apply_x(s));
    dd.f -= k * xx.f;
    dd.g -= k * xx.g;
    return dd;
}

namespace {

template <class Op>
SectionSum map_sections(const SectionSum& s, Op op) {
    SectionSum out(s.params());
    for (const auto& p : s.parts()) out.add(op(p));
    return out;
}

}  // namespace

SectionSum apply_D(const SectionSum& s) { return map_sections(s, [](const MonogenicSection& p) { return apply_D(p); }); }
SectionSum apply_x(const SectionSum& s) { return map_sections(s, [](const MonogenicSection& p) { return apply_x(p); }); }
SectionSum apply_E(const SectionSum& s) { return map_sections(s, [](const MonogenicSection& p) { return apply_E(p); }); }
SectionSum apply_L(const SectionSum& s) { return map_sections(s, [](const MonogenicSection& p) { return apply_L(p); }); }

// ---------------------------------------------------------------- basis

MonogenicSection phi(int n, int ell, int idx, const DeformParams& p) {
    if (n < 0 || ell < 0) throw std::invalid_argument("phi: indices must be non-negative");
    basis_element(ell, idx, p.m);
    const int t = n / 2;
    const bool odd = n % 2;
    const double alpha = 0.5 * p.gamma(ell) - 1.0 + (odd ? 1.0 : 0.0);
    double scale = std::pow(2.0 * (1.0 + p.c), n);
    for (int i = 2; i <= t; ++i) scale *= i;
    if (odd) scale = -scale;
    const auto lc = laguerre_coefficients(t, alpha);
    std::vector<RadialTerm> terms;
    for (int j = 0; j <= t; ++j) terms.push_back({scale * lc[j], p.beta(ell) + 2.0 * j});
    MonogenicSection s{ell, idx, RadialProfile{}, RadialProfile{}, p};
    (odd ? s.g : s.f) = RadialProfile(std::move(terms), 0.5);
    return s;
}

double ladder_coefficient(int n, int ell, const DeformParams& p) {
    const double k = (1.0 + p.c) * (1.0 + p.c);
    const int t = n / 2;
    return n % 2 == 0 ? 4.0 * k * t : 2.0 * k * (p.gamma(ell) + 2.0 * t);
}

double hamiltonian_eigenvalue(int n, int ell, const DeformParams& p) {
    const double c = p.c;
    return 2.0 * (1.0 + c) * ell + 2.0 * (1.0 + c) * (1.0 + c) * n + (1.0 + c) * (p.m + c);
}

// ---------------------------------------------------------------- inner product

double radial_moment(double p, double a) {
    if (!(p > -1.0)) throw std::domain_error("divergent radial moment: power " + std::to_string(p) + " <= -1");
    if (!(a > 0.0)) throw std::domain_error("radial moment needs a decaying Gaussian");
    const double s = 0.5 * (p + 1.0);
    return 0.5 * std::exp(log_gamma(s) - s * std::log(a));
}

namespace {

// [∫ bar(conj M1) M2]_0 and [∫ bar(conj M1) x̲ M2]_0 over the sphere, cached by basis slot
std::pair<cplx, cplx> spherical_factors(int m, int l1, int i1, int l2, int i2) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int, int>, std::pair<cplx, cplx>> cache;
    const auto key = std::make_tuple(m, l1, i1, l2, i2);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const PolyCl& a = basis_element(l1, i1, m);
    const PolyCl& b = basis_element(l2, i2, m);
    const std::pair<cplx, cplx> v{spherical_inner(a, b), spherical_inner(a, mul_x(b))};
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

// summed in extended precision
cplx moment(const RadialProfile& p, const RadialProfile& q, double extra) {
    using ld = long double;
    const ld a = static_cast<ld>(p.gaussian()) + q.gaussian();
    std::complex<ld> s = 0.0L;
    for (const auto& x : p.terms())
        for (const auto& y : q.terms()) {
            const ld pw = static_cast<ld>(x.power) + y.power + extra;
            if (!(pw > -1.0L)) throw std::domain_error("divergent radial moment: power " + std::to_string(static_cast<double>(pw)) + " <= -1");
            const ld h = 0.5L * (pw + 1.0L);
            const ld mom = 0.5L * std::exp(std::lgamma(h) - h * std::log(a));
            s += std::conj(std::complex<ld>(x.coeff)) * std::complex<ld>(y.coeff) * mom;
        }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace

cplx inner_product(const MonogenicSection& a, const MonogenicSection& b) {
    if (!same_params(a.params, b.params)) throw std::invalid_argument("inner_product: parameters differ");
    const auto [s0, s1] = spherical_factors(a.params.m, a.ell, a.idx, b.ell, b.idx);
    const double base = a.ell + b.ell + a.params.measure_exponent();
    cplx out = 0.0;
    if (s0 != cplx{}) out += s0 * (moment(a.f, b.f, base) + moment(a.g, b.g, base + 2.0));
    if (s1 != cplx{}) out += s1 * (moment(a.f, b.g, base + 1.0) - moment(a.g, b.f, base + 1.0));
    return out;
}

cplx inner_product(const SectionSum& a, const SectionSum& b) {
    cplx s = 0.0;
    for (const auto& p : a.parts())
        for (const auto& q : b.parts()) s += inner_product(p, q);
    return s;
}

double norm(const SectionSum& s) { return std::sqrt(std::max(0.0, inner_product(s, s).real())); }

double phi_norm_squared(int n, int ell, const DeformParams& p) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, double>, double> cache;
    const auto key = std::make_tuple(n, ell, p.m, p.c);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const MonogenicSection s = phi(n, ell, 0, p);
    const double v = inner_product(s, s).real();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

// ---------------------------------------------------------------- oracles and transforms of fields

FdDerivatives fd_derivatives(const Field& F, std::span<const double> x, double h) {
    const int m = static_cast<int>(x.size());
    double r2 = 0;
    for (double v : x) r2 += v * v;
    if (h <= 0.0) h = 1e-4 * std::max(1.0, std::sqrt(r2));
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    auto central = [&](int i, double step) {
        xp[i] = x[i] + step;
        xm[i] = x[i] - step;
        Multivector d = F(xp) - F(xm);
        xp[i] = xm[i] = x[i];
        return d * (0.5 / step);
    };
    FdDerivatives out{F(x), Multivector(m), Multivector(m)};
    for (int i = 0; i < m; ++i) {
        const Multivector d = (4.0 / 3.0) * central(i, 0.5 * h) - (1.0 / 3.0) * central(i, h);
        accumulate_product(out.dirac, Multivector::generator(m, i + 1), d);
        out.euler += d * x[i];
    }
    return out;
}

Multivector fd_dirac(const Field& F, std::span<const double> x, double c, double h, double b) {
    const FdDerivatives d = fd_derivatives(F, x, h);
    double r2 = 0;
    for (double v : x) r2 += v * v;
    Multivector out = d.dirac;
    if (b != 0.0 || c != 0.0) {
        if (r2 == 0.0) throw std::domain_error("fd_dirac: r^-2 terms are singular at x = 0");
        const Multivector xv = embed_vector(x);
        if (b != 0.0) accumulate_product(out, xv, d.value, b / r2);
        if (c != 0.0) accumulate_product(out, xv, d.euler, c / r2);
    }
    return out;
}

namespace {

Field kelvin(Field F, double outer_power, double factor, double inner_power) {
    return [F = std::move(F), outer_power, factor, inner_power](std::span<const double> x) {
        double r2 = 0;
        for (double v : x) r2 += v * v;
        const double r = std::sqrt(r2);
        if (r == 0.0) {
            if (outer_power < 0.0 || inner_power + 1.0 < 0.0)
                throw std::domain_error("Kelvin transform: negative resulting power at x = 0");
            Multivector v = F(x);
            return outer_power == 0.0 ? v : v * 0.0;
        }
        const double s = factor * std::pow(r, inner_power);
        std::vector<double> u(x.begin(), x.end());
        for (auto& v : u) v *= s;
        return F(u) * std::pow(r, outer_power);
    };
}

}  // namespace

Field kelvin_P(Field F, double a, double b) {
    if (a == 0.0) throw std::invalid_argument("kelvin_P: a must be nonzero");
    return kelvin(std::move(F), b, std::pow(0.5 * a, 1.0 / a), 2.0 / a - 1.0);
}

Field kelvin_Q(Field F, double a, double b) {
    if (a == 0.0) throw std::invalid_argument("kelvin_Q: a must be nonzero");
    return kelvin(std::move(F), -0.5 * a * b, std::sqrt(2.0 / a), 0.5 * a - 1.0);
}

Field spin_rep(const Multivector& s, Field F) {
    const Multivector sinv = bar(s);
    return [s, sinv, F = std::move(F)](std::span<const double> x) { return s * F(spin_act(sinv, x)); };
}

}  // namespace radef
