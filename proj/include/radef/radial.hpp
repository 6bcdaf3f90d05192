#pragma once

#include "radef/clifford.hpp"

#include <functional>
#include <span>
#include <vector>

namespace radef {

struct DeformParams {
    int m = 3;
    double c = 0.0;

    DeformParams() = default;
    DeformParams(int m_, double c_);  // validates m >= 3, c > -1

    double lambda() const { return 0.5 * (m - 2); }
    double delta() const { return 1.0 + (m - 1) / (1.0 + c); }
    double beta(int ell) const { return -c * ell / (1.0 + c); }
    // also meaningful for ell = -1, which the kernel series use
    double gamma(int ell) const { return 2.0 / (1.0 + c) * (ell + 0.5 * (m - 2)) + (c + 2.0) / (1.0 + c); }
    double sigma() const;
    double h_exponent() const { return 1.0 - (1.0 + m * c) / (1.0 + c); }
    // h(r) r^{m-1} = r^{measure_exponent}
    double measure_exponent() const { return (m - 1) / (1.0 + c); }
};

struct RadialTerm {
    cplx coeff;
    double power;
};

// sum_j c_j r^{p_j} e^{-a r^2}
class RadialProfile {
public:
    RadialProfile() = default;
    explicit RadialProfile(std::vector<RadialTerm> terms, double gaussian = 0.5);

    const std::vector<RadialTerm>& terms() const { return terms_; }
    double gaussian() const { return a_; }
    bool empty() const { return terms_.empty(); }

    cplx operator()(double r) const;
    double max_coeff() const;

    RadialProfile derivative() const;
    RadialProfile times_power(double dp) const;  // r^dp * profile
    RadialProfile conj() const;

    RadialProfile& operator+=(const RadialProfile& o);
    RadialProfile& operator-=(const RadialProfile& o);
    RadialProfile& operator*=(cplx s);

    // sort by power, merge powers closer than 1e-12, drop exact zeros
    void canonicalize();

private:
    std::vector<RadialTerm> terms_;
    double a_ = 0.5;
};

RadialProfile operator+(RadialProfile a, const RadialProfile& b);
RadialProfile operator-(RadialProfile a, const RadialProfile& b);
RadialProfile operator*(cplx s, RadialProfile a);

// Largest |coefficient| difference after canonicalization, relative to max(1, largest coefficient).
double profile_residual(const RadialProfile& a, const RadialProfile& b);

// f(r) M + g(r) x̲ M with M = monogenic_basis(ell, m)[idx]
struct MonogenicSection {
    int ell = 0;
    int idx = 0;
    RadialProfile f, g;
    DeformParams params;

    Multivector evaluate(std::span<const double> x) const;
};

// Finite sum of sections; components with equal (ell, idx, gaussian) are merged.
class SectionSum {
public:
    SectionSum() = default;
    explicit SectionSum(DeformParams p) : params_(p) {}
    SectionSum(const MonogenicSection& s);

    const DeformParams& params() const { return params_; }
    const std::vector<MonogenicSection>& parts() const { return parts_; }

    void add(const MonogenicSection& s, cplx scale = 1.0);
    SectionSum& operator+=(const SectionSum& o);
    SectionSum& operator-=(const SectionSum& o);
    SectionSum& operator*=(cplx s);

    Multivector evaluate(std::span<const double> x) const;

private:
    DeformParams params_;
    std::vector<MonogenicSection> parts_;
};

SectionSum operator+(SectionSum a, const SectionSum& b);
SectionSum operator-(SectionSum a, const SectionSum& b);
SectionSum operator*(cplx s, SectionSum a);

MonogenicSection apply_D(const MonogenicSection& s);
MonogenicSection apply_x(const MonogenicSection& s);
MonogenicSection apply_E(const MonogenicSection& s);
MonogenicSection apply_L(const MonogenicSection& s);
SectionSum apply_D(const SectionSum& s);
SectionSum apply_x(const SectionSum& s);
SectionSum apply_E(const SectionSum& s);
SectionSum apply_L(const SectionSum& s);

// Throws std::domain_error when some term is not square integrable near r = 0.
void check_moments(const MonogenicSection& s);

// phi_{n, ell, idx}: n = 2t gives the scalar-profile function, n = 2t+1 the x̲ one.
MonogenicSection phi(int n, int ell, int idx, const DeformParams& p);

// Ladder coefficient C(n, ell).
double ladder_coefficient(int n, int ell, const DeformParams& p);

// 2(1+c) ell + 2(1+c)^2 n + (1+c)(m+c)
double hamiltonian_eigenvalue(int n, int ell, const DeformParams& p);

// int_0^inf r^p e^{-a r^2} dr
double radial_moment(double p, double a = 1.0);

cplx inner_product(const MonogenicSection& a, const MonogenicSection& b);
cplx inner_product(const SectionSum& a, const SectionSum& b);
double norm(const SectionSum& s);

// <phi, phi>, computed from the moments and cached
double phi_norm_squared(int n, int ell, const DeformParams& p);

using Field = std::function<Multivector(std::span<const double>)>;

struct FdDerivatives {
    Multivector value;
    Multivector dirac;  // sum_i e_i d_i F
    Multivector euler;  // sum_i x_i d_i F
};

// Central differences with one Richardson step; h = 0 selects 1e-4 max(1, |x|).
FdDerivatives fd_derivatives(const Field& F, std::span<const double> x, double h = 0.0);

// (∂ + b r^-2 x̲ + c r^-2 x̲ E) F at x
Multivector fd_dirac(const Field& F, std::span<const double> x, double c, double h = 0.0, double b = 0.0);

Field kelvin_P(Field F, double a, double b);
Field kelvin_Q(Field F, double a, double b);

// (rho(s) F)(x) = s F(p(s^{-1}) x)
Field spin_rep(const Multivector& s, Field F);

}  // namespace radef
