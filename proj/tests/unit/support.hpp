#pragma once

#include "radef/clifford.hpp"

#include <random>
#include <vector>

namespace radef::testing {

inline Multivector random_multivector(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Multivector a(m);
    for (BladeMask b = 0; b < a.size(); ++b) a[b] = cplx(g(rng), g(rng));
    return a;
}

inline std::vector<double> random_vector(int m, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g;
    std::vector<double> v(m);
    for (auto& x : v) x = scale * g(rng);
    return v;
}

}  // namespace radef::testing
