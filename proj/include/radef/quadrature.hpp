#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace radef {

struct GaussRule {
    std::vector<double> x, w;
    std::size_t size() const { return x.size(); }
};

// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

// Product rule on S^{m-1}: nodes stored row-major (size() rows of m coordinates).
struct SphereRule {
    int m = 0;
    std::vector<double> nodes;
    std::vector<double> w;
    std::size_t size() const { return w.size(); }
    std::span<const double> node(std::size_t i) const { return {nodes.data() + i * m, static_cast<std::size_t>(m)}; }
};

// m = 3: n_theta Gauss-Legendre nodes in cos(theta) times n_phi uniform azimuths.
// m >= 4: one more polar factor per dimension, n_theta nodes each.
SphereRule sphere_rule(int m, int n_theta, int n_phi);

struct QuadratureSpec {
    int n_r = 400;
    double r_min = 1e-6;
    double R_max = 12.0;
    int n_theta = 64;
    int n_phi = 128;
    // filled in by routines that run a doubling check
    double estimated_error = 0.0;

    void validate() const;
    GaussRule radial() const { return gauss_legendre(n_r, r_min, R_max); }
    SphereRule sphere(int m) const { return sphere_rule(m, n_theta, n_phi); }
    QuadratureSpec doubled() const;
};

// Runs fn(0..n-1) on a few worker threads. Callers write results into per-index slots and
// reduce them in index order, so sums do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace radef
