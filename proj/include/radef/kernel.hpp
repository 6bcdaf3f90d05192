#pragma once

#include "radef/clifford.hpp"
#include "radef/radial.hpp"

#include <span>
#include <vector>

namespace radef {

struct Truncation {
    double tol = 1e-14;
    int k_max = 200;
    int streak = 3;
    double max_z = 40.0;  // evaluation domain for z = |x||y|

    void validate() const;
};

struct KernelParams {
    DeformParams params;
    cplx omega{0.0, 1.5707963267948966};
    Truncation trunc;

    // Re omega >= 0, omega not in i pi Z, |Im omega| <= pi
    void validate() const;
};

struct KernelValue {
    cplx A, B;
    Multivector assembled;  // prefactor (A + x̲∧y̲ B)
    int terms_used = 0;
    double tail_estimate = 0.0;
};

// Unit-sphere reproducing kernels. P_k for k >= 0; Q_j = ((j+1)/2λ) C_{j+1}^λ + (x'∧y') C_j^{λ+1}.
Multivector repr_P(int k, std::span<const double> xu, std::span<const double> yu);
Multivector repr_Q(int j, std::span<const double> xu, std::span<const double> yu);

// The kernel as sum_k p_k(z) P_k(x', y') + q_k(z) Q_k(x', y'), without the Gaussian prefactor.
struct KernelSeries {
    DeformParams params;
    double z = 0.0;
    std::vector<cplx> p, q;
    double tail_estimate = 0.0;

    int terms() const { return static_cast<int>(p.size()); }

    // Scalar part A(w) and zB(w), the coefficient of x'∧y'.
    std::pair<cplx, cplx> evaluate(double w) const;
    // Same with caller-provided scratch for the Gegenbauer tables.
    std::pair<cplx, cplx> evaluate(double w, std::vector<double>& c0, std::vector<double>& c1) const;
};

// Direct complex-omega formula, or the Re omega = 0 rewrite with real Bessel arguments.
enum class SemigroupForm { automatic, direct, eta };

// Single-term radial coefficients of the semigroup kernel (no truncation involved).
cplx semigroup_p(int k, double z, const KernelParams& kp, SemigroupForm form = SemigroupForm::automatic);
cplx semigroup_q(int k, double z, const KernelParams& kp, SemigroupForm form = SemigroupForm::automatic);

// e^{-coth(omega) (r^2 + s^2) / 2}
cplx semigroup_prefactor(double r2_plus_s2, const KernelParams& kp,
                         SemigroupForm form = SemigroupForm::automatic);

// Single-term radial coefficients of the Fourier kernel: p_k = alpha_k z^{-(delta-2)/2} J_{gamma_k/2-1}(z), q_k likewise.
cplx fourier_p(int k, double z, const DeformParams& params);
cplx fourier_q(int k, double z, const DeformParams& params);

KernelSeries semigroup_series(double z, const KernelParams& kp, SemigroupForm form = SemigroupForm::automatic);
KernelSeries fourier_series(double z, const DeformParams& params, const Truncation& trunc);

KernelValue semigroup_kernel(std::span<const double> x, std::span<const double> y, const KernelParams& kp,
                             SemigroupForm form = SemigroupForm::automatic);
KernelValue fourier_kernel(std::span<const double> x, std::span<const double> y, const DeformParams& params,
                           const Truncation& trunc = {});

// Scalar functions (A, B) of (z, w) with K = A + x̲∧y̲ B, Fourier case.
std::pair<cplx, cplx> fourier_AB(double z, double w, const DeformParams& params, const Truncation& trunc = {});

enum class SeriesLetter { A, B, C, D, E, F };

// alpha_{-1} = 0, or e^{i pi / (2(1+c))} which continues alpha_k = e^{-i pi k / (2(1+c))} to k = -1.
enum class AlphaMinusOne { zero, continued };

// The auxiliary series A_λ..F_λ of the Fourier kernel (z > 0).
cplx kernel_series_component(SeriesLetter letter, double z, double w, const DeformParams& params,
                             const Truncation& trunc = {}, AlphaMinusOne am1 = AlphaMinusOne::zero);

// K assembled from A..F: scalar part and the coefficient of x̲∧y̲.
std::pair<cplx, cplx> assemble_from_components(double z, double w, const DeformParams& params,
                                               const Truncation& trunc = {},
                                               AlphaMinusOne am1 = AlphaMinusOne::zero);

struct PdeResidual {
    double first, second;              // moduli of the two residuals
    double scale_first, scale_second;  // largest single term of each equation
};

// Residuals of the two scalar PDEs for (A, B) of the Fourier kernel, central differences of step h.
PdeResidual pde_residual(double z, double w, const DeformParams& params, const Truncation& trunc, double h);

}  // namespace radef
