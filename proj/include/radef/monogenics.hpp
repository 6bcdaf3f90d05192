#pragma once

#include "radef/clifford.hpp"

#include <span>
#include <vector>

namespace radef {

using MultiIndex = std::vector<int>;

// All exponent vectors of total degree `degree` in m variables, x_1^degree first
// (lexicographically descending). This order indexes PolyCl::terms.
const std::vector<MultiIndex>& monomials(int m, int degree);
std::size_t monomial_index(int m, const MultiIndex& alpha);

// Homogeneous polynomial with Clifford coefficients.
class PolyCl {
public:
    PolyCl() = default;
    PolyCl(int m, int degree);

    int m() const { return m_; }
    int degree() const { return degree_; }

    const std::vector<Multivector>& terms() const { return terms_; }
    Multivector& coeff(std::size_t i) { return terms_[i]; }
    const Multivector& coeff(std::size_t i) const { return terms_[i]; }
    Multivector& coeff(const MultiIndex& alpha) { return terms_[monomial_index(m_, alpha)]; }

    Multivector evaluate(std::span<const double> x) const;

    PolyCl& operator+=(const PolyCl& o);
    PolyCl& operator-=(const PolyCl& o);
    PolyCl& operator*=(cplx s);

    double max_abs() const;

private:
    int m_ = 0, degree_ = 0;
    std::vector<Multivector> terms_;
};

PolyCl operator+(PolyCl a, const PolyCl& b);
PolyCl operator-(PolyCl a, const PolyCl& b);
PolyCl operator*(cplx s, PolyCl a);

PolyCl dirac(const PolyCl& p);
PolyCl euler(const PolyCl& p);
PolyCl mul_x(const PolyCl& p);                       // x̲ p
PolyCl left_mul(const Multivector& a, const PolyCl& p);
PolyCl right_mul(const PolyCl& p, const Multivector& a);
PolyCl conj(const PolyCl& p);
PolyCl bar(const PolyCl& p);

double sphere_area(int m);
double sphere_integral_monomial(const MultiIndex& alpha, int m);

// [∫_{S^{m-1}} bar(conj p) q dσ]_0
cplx spherical_inner(const PolyCl& p, const PolyCl& q);

// 2^m (l+m-2)! / (l! (m-2)!)
std::size_t monogenic_dimension(int ell, int m);

// Orthonormal basis of ker(dirac) in degree ell; built once per (ell, m) and cached.
const std::vector<PolyCl>& monogenic_basis(int ell, int m);

}  // namespace radef
