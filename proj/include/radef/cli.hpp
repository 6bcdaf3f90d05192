#pragma once

#include "radef/kernel.hpp"
#include "radef/quadrature.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace radef {

struct RunConfig {
    int m = 3;
    double c = 0.0;
    cplx omega{0.0, 1.5707963267948966};
    Truncation trunc;
    QuadratureSpec quad;
    std::uint64_t seed = 20240611;
    int samples = 20;
    std::string output_path;  // empty: standard output

    // Throws std::invalid_argument naming the violated bound.
    void validate() const;
};

// Reads the keys m, c, omega {re, im}, truncation {tol, k_max, streak}, quadrature {n_r, R_max, r_min,
// n_theta, n_phi}, seed, samples, output_path; missing keys keep their current values.
void load_config_json(const std::string& text, RunConfig& cfg);

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_config = 2 };

// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radef
