#pragma once

#include <stdexcept>

namespace radef {

// A computation could not reach its accuracy contract: series truncation hit k_max,
// an argument left the supported Bessel range, or a quadrature budget was exceeded.
// Precondition violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace radef
