#pragma once

#include "radef/kernel.hpp"
#include "radef/quadrature.hpp"
#include "radef/radial.hpp"
#include "radef/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace radef {

// 17 significant digits, '.' decimal separator, independent of the global locale.
std::string format_number(double v);

// "1", "e1", "e12", "e123", ... for blades with generator indices below 10, "e1_10" style otherwise.
std::string blade_name(BladeMask b);

// {"m": m, "blades": [{"blade": "e12", "re": .., "im": ..}, ...]} listing nonzero coefficients
// in canonical blade order.
std::string multivector_json(const Multivector& a);

// Monogenic basis of degree ell as JSON: one object per element with its nonzero monomial coefficients.
std::string monogenic_basis_json(int ell, int m);

// r, re_f, im_f, re_g, im_g on n equally spaced radii in [r_lo, r_hi].
void write_profile_csv(std::ostream& os, const MonogenicSection& s, double r_lo, double r_hi, int n);

struct KernelGrid {
    std::vector<double> z;  // z = |x||y|
    std::vector<double> w;  // w = <x', y'>, in [-1, 1]
};

// One row per (z, w) with x = e_1 and y = z (w e_1 + sqrt(1 - w^2) e_2). Columns: x1..xm, y1..ym, z, w,
// reA, imA, reB, imB, terms_used, tail_estimate, where K = A + (x̲∧y̲) B including the Gaussian factor.
// An empty grid writes the header only. Uses the Fourier series when omega = i pi/2.
void write_kernel_csv(std::ostream& os, const KernelParams& kp, const KernelGrid& grid);

// Columns y1..ym, then re/im of every blade of the value in canonical order.
void write_transform_csv(std::ostream& os, int m, const std::vector<std::vector<double>>& points,
                         const std::vector<Multivector>& values);

// {"results": [{suite, test, paper_ref, params, residual, tol, pass}, ...], "passed": n, "failed": n}
std::string verify_report_json(const std::vector<CheckResult>& results);

}  // namespace radef
