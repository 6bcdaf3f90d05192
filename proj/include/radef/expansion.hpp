#pragma once

#include "radef/radial.hpp"

#include <compare>
#include <map>

namespace radef {

struct BasisIndex {
    int n = 0, ell = 0, idx = 0;
    auto operator<=>(const BasisIndex&) const = default;
};

// e^{-omega (n + ell/(1+c))}, the eigenvalue of the transform with parameter omega on phi_{n, ell, .}
cplx transform_eigenvalue(int n, int ell, cplx omega, const DeformParams& p);

// Finite combination of normalized basis functions phi / ||phi||.
class Expansion {
public:
    Expansion() = default;
    explicit Expansion(DeformParams p) : params_(p) {}

    const DeformParams& params() const { return params_; }
    const std::map<BasisIndex, cplx>& coeffs() const { return coeffs_; }

    void add(BasisIndex i, cplx a) { coeffs_[i] += a; }

    // Orthogonal projection of sections onto the basis. Throws std::domain_error when the
    // relative remainder exceeds tol (the input is outside the finite span).
    static Expansion project(const SectionSum& f, double tol = 1e-10);

    SectionSum to_sections() const;
    double norm_squared() const;

    // Image under the transform with parameter omega, applied through the eigenvalues.
    Expansion transformed(cplx omega) const;

private:
    DeformParams params_;
    std::map<BasisIndex, cplx> coeffs_;
};

// Random combination: `terms` distinct basis slots with n <= n_max, ell <= ell_max, complex normal coefficients.
Expansion random_expansion(const DeformParams& p, int terms, int n_max, int ell_max, unsigned long long seed);

}  // namespace radef
