#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace radef {

using cplx = std::complex<double>;

// Blades are bitmasks: bit (i-1) set means e_i is a factor, factors in increasing order.
using BladeMask = std::uint32_t;

inline int blade_grade(BladeMask b) { return __builtin_popcount(b); }

// 1-based generator indices of a blade, increasing.
std::vector<int> blade_indices(BladeMask b);
BladeMask blade_from_indices(std::span<const int> indices);

// Sign of e_A e_B = sign * e_{A xor B} with e_i^2 = -1.
int blade_product_sign(BladeMask a, BladeMask b);

// All 2^m masks sorted lexicographically by index set: {}, {1}, {1,2}, {1,2,3}, {1,3}, {2}, ...
const std::vector<BladeMask>& canonical_blade_order(int m);

class Multivector {
public:
    static constexpr int max_dim = 12;

    Multivector() = default;
    explicit Multivector(int m);

    static Multivector scalar(int m, cplx v);
    static Multivector blade(int m, BladeMask b, cplx v = 1.0);
    static Multivector generator(int m, int i);  // e_i, 1-based

    int m() const { return m_; }
    std::size_t size() const { return c_.size(); }

    cplx& operator[](BladeMask b) { return c_[b]; }
    const cplx& operator[](BladeMask b) const { return c_[b]; }
    const std::vector<cplx>& coeffs() const { return c_; }

    cplx scalar_part() const { return c_.empty() ? cplx{} : c_[0]; }

    Multivector& operator+=(const Multivector& o);
    Multivector& operator-=(const Multivector& o);
    Multivector& operator*=(cplx s);

    // sqrt of the sum of squared coefficient moduli
    double norm() const;
    double max_abs() const;

private:
    int m_ = 0;
    std::vector<cplx> c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, cplx s);
Multivector operator*(cplx s, Multivector a);
Multivector operator*(const Multivector& a, const Multivector& b);

Multivector geometric_product(const Multivector& a, const Multivector& b);

// a += s * (b * c), without temporaries
void accumulate_product(Multivector& acc, const Multivector& b, const Multivector& c, cplx s = 1.0);

Multivector grade_project(const Multivector& a, int k);

// Main anti-involution: bar(e_i) = -e_i, bar(ab) = bar(b) bar(a). Complex scalars untouched.
Multivector bar(const Multivector& a);
// Main involution: e_i -> -e_i.
Multivector epsilon(const Multivector& a);
// Complex conjugation of the coefficients.
Multivector conj(const Multivector& a);

Multivector embed_vector(std::span<const double> x);

// x ∧ y for grade-1 inputs; throws std::invalid_argument on other grades.
Multivector wedge(const Multivector& x, const Multivector& y);
Multivector wedge(std::span<const double> x, std::span<const double> y);

bool is_grade(const Multivector& a, int k, double tol = 0.0);

// Product of n_factors uniformly distributed unit vectors; n_factors must be even.
Multivector random_spin_element(int m, int n_factors, std::uint64_t seed);

// Covering map p(s)x = eps(s) x s^{-1}, with s^{-1} = bar(s) for Pin elements.
std::vector<double> spin_act(const Multivector& s, std::span<const double> x);

// Largest coefficient modulus of a - b.
double max_diff(const Multivector& a, const Multivector& b);

}  // namespace radef
