#pragma once

#include "radef/kernel.hpp"
#include "radef/quadrature.hpp"
#include "radef/radial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace radef {

struct CheckResult {
    std::string suite;
    std::string test;
    std::string anchor;  // name of the identity being checked
    std::string params;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerifyConfig {
    DeformParams params{3, 0.0};
    cplx omega{0.0, 1.5707963267948966};
    Truncation trunc;
    QuadratureSpec quad;
    std::uint64_t seed = 20240611;
    int samples = 20;

    void validate() const;
    std::string describe() const;  // short parameter string for reports
};

// Each suite returns one result per identity, with the worst residual over its samples.
std::vector<CheckResult> check_osp12(const VerifyConfig& cfg);
std::vector<CheckResult> check_basis(const VerifyConfig& cfg);
// `as_printed` uses the sign -sigma (k+2λ)/(2(λ+k)) in the fourth auxiliary integral; the
// reproducing-kernel identities need +sigma (k+2λ)/(2(λ+k)).
std::vector<CheckResult> check_funk_hecke(const VerifyConfig& cfg, bool as_printed = false);
std::vector<CheckResult> check_kernel_props(const VerifyConfig& cfg);
std::vector<CheckResult> check_transform(const VerifyConfig& cfg);
std::vector<CheckResult> check_heisenberg(const VerifyConfig& cfg);
std::vector<CheckResult> check_master(const VerifyConfig& cfg);
std::vector<CheckResult> check_pde(const VerifyConfig& cfg);
std::vector<CheckResult> check_special(const VerifyConfig& cfg);

// Recursions between the auxiliary kernel series. `as_printed` uses alpha_{-1} = 0 and the phase
// e^{-i pi/(2(1+c))} in the C and D relations; otherwise the continued alpha_{-1} and phase e^{+i pi/(2(1+c))}.
std::vector<CheckResult> check_series(const VerifyConfig& cfg, bool as_printed);

// Suite names accepted by run_suite, in default run order.
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, const VerifyConfig& cfg);

// Random section f M + g x̲ M with ell <= ell_max, generic powers and Gaussian.
MonogenicSection random_section(const DeformParams& p, int ell_max, std::uint64_t seed);

}  // namespace radef
