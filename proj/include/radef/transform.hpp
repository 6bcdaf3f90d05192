#pragma once

#include "radef/expansion.hpp"
#include "radef/kernel.hpp"
#include "radef/quadrature.hpp"
#include "radef/radial.hpp"

#include <functional>
#include <span>

namespace radef {

// Radial coefficients (u, v) with F(f M + g x̲ M)(y) = u(s) M(y') + v(s) y' M(y'), s = |y|.
// Only the radial integral is numerical; the sphere is handled by the reproducing kernels.
std::pair<cplx, cplx> transform_radial(const MonogenicSection& sec, double s, const KernelParams& kp,
                                       const QuadratureSpec& q);

Multivector apply_transform(const MonogenicSection& sec, std::span<const double> y, const KernelParams& kp,
                            const QuadratureSpec& q);
Multivector apply_transform(const SectionSum& f, std::span<const double> y, const KernelParams& kp,
                            const QuadratureSpec& q);

// Full m-dimensional quadrature sigma^{-1} sum w K(x_i, y) F(x_i) h(r_i) r_i^{m-1}.
Multivector apply_transform(const Field& F, std::span<const double> y, const KernelParams& kp,
                            const QuadratureSpec& q);

struct CheckedTransform {
    Multivector value;
    double estimated_error = 0.0;
};

// Section transform plus a rerun with R_max and n_r doubled; throws NumericalError when the two
// differ by more than budget.
CheckedTransform apply_transform_checked(const SectionSum& f, std::span<const double> y, const KernelParams& kp,
                                         const QuadratureSpec& q, double budget = 1e-8);

enum class Parity { even, odd };

// One-dimensional reduction of the Fourier transform on f(r) M or f(r) x̲ M.
class BochnerTransform {
public:
    BochnerTransform(int ell, int idx, const std::function<cplx(double)>& f, Parity parity, const DeformParams& p,
                     const QuadratureSpec& q);

    // Coefficient of M(y') (even) or y' M(y') (odd) at |y| = s.
    cplx radial(double s) const;
    Multivector operator()(std::span<const double> y) const;

private:
    int ell_, idx_;
    Parity parity_;
    DeformParams params_;
    double nu_;
    cplx phase_;
    std::vector<double> r_;
    std::vector<cplx> weight_;  // quadrature weight times r^{ell (+1)} f(r) r^{delta-1}
};

BochnerTransform bochner(int ell, int idx, const std::function<cplx(double)>& f, Parity parity,
                         const DeformParams& p, const QuadratureSpec& q);

struct ParsevalResult {
    double norm_f2 = 0.0;   // from the coefficients
    double norm_Ff2 = 0.0;  // from transformed values on a radial grid
};

// inner: quadrature of the transform integral; outer: radial grid for the norm of the image.
ParsevalResult parseval_check(const Expansion& f, const QuadratureSpec& inner, const QuadratureSpec& outer);

struct PairValue {
    cplx lhs, rhs;
};

// <F(D f), g> and <i(1+c) x̲ F(f), g>, through the eigen-expansion.
PairValue dirac_intertwining(const Expansion& f, const Expansion& g);

// ||F(E f) + (E + delta) F(f)|| / ||f||
double euler_intertwining_residual(const Expansion& f);

// ||F^omega f|| / ||f||
double contraction_ratio(const Expansion& f, cplx omega);

struct HsNorm {
    double value = 0.0;       // square root of the truncated double sum
    double tail_bound = 0.0;  // closed-form total minus the truncated sum, in norm units
};

HsNorm hs_norm(cplx omega, const DeformParams& p, int k_cut, int t_cut);

struct HeisenbergResult {
    double norm_f2 = 0.0, norm_xf2 = 0.0, norm_xFf2 = 0.0, norm_Ff2 = 0.0;
    double product_lhs = 0.0, product_rhs = 0.0;    // ||x̲f|| ||x̲Ff||, (delta/2) ||f||^2
    double additive_lhs = 0.0, additive_rhs = 0.0;  // ||x̲f||^2 + ||x̲Ff||^2, delta ||f||^2
};

// f must lie in the finite basis span.
HeisenbergResult heisenberg(const SectionSum& f);

// f(r) M_{ell, idx} with any Gaussian; F f by the one-dimensional reduction.
HeisenbergResult heisenberg_quadrature(int ell, int idx, const RadialProfile& f, const DeformParams& p,
                                       const QuadratureSpec& inner, const QuadratureSpec& outer);

struct MasterResult {
    Multivector lhs, rhs;
    int terms_used = 0;
};

// Gaussian-weighted composition of the Fourier kernel with its conjugate versus the semigroup kernel
// at omega = arcsinh(2 s). The sphere is integrated out exactly, the radial integrals numerically.
MasterResult master_formula_check(std::span<const double> x, std::span<const double> z, double s,
                                  const DeformParams& p, const QuadratureSpec& q, const Truncation& trunc = {});

// Smallest N <= N_max with (F^{i pi/2})^N = Id on all phi_{n, ell} with n <= n_max, ell <= ell_max; 0 if none.
int finite_order(const DeformParams& p, int n_max, int ell_max, int N_max, double tol = 1e-10);

}  // namespace radef
