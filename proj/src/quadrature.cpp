#include "radef/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <utility>

namespace radef {

namespace {

// P_n(x) and P_n'(x) for |x| < 1
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 0) return {1.0, 0.0};
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre_with_derivative(n, x).second;
        const double wt = 2.0 / ((1.0 - x * x) * dp * dp);
        g.x[i] = mid - half * x;
        g.x[n - 1 - i] = mid + half * x;
        g.w[i] = g.w[n - 1 - i] = half * wt;
    }
    return g;
}

SphereRule sphere_rule(int m, int n_theta, int n_phi) {
    if (m < 3) throw std::invalid_argument("sphere_rule: m must be >= 3");
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("sphere_rule: node counts must be positive");
    SphereRule s;
    s.m = m;
    if (m == 3) {
        const GaussRule t = gauss_legendre(n_theta, -1.0, 1.0);
        const double dphi = 2.0 * std::numbers::pi / n_phi;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double st = std::sqrt(std::max(0.0, 1.0 - t.x[i] * t.x[i]));
            for (int j = 0; j < n_phi; ++j) {
                const double phi = j * dphi;
                s.nodes.insert(s.nodes.end(), {st * std::cos(phi), st * std::sin(phi), t.x[i]});
                s.w.push_back(t.w[i] * dphi);
            }
        }
        return s;
    }
    // xi = (t, sqrt(1-t^2) eta), d sigma_{m-1} = (1-t^2)^{(m-3)/2} dt d sigma_{m-2}(eta)
    const SphereRule inner = sphere_rule(m - 1, n_theta, n_phi);
    std::vector<double> ts, tw;
    if ((m - 3) % 2 == 0) {
        const GaussRule g = gauss_legendre(n_theta, -1.0, 1.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            ts.push_back(g.x[i]);
            tw.push_back(g.w[i] * std::pow(1.0 - g.x[i] * g.x[i], (m - 3) / 2));
        }
    } else {
        // Gauss-Chebyshev rule of the second kind for (1-t^2)^{1/2}, the rest of the weight is polynomial
        const double h = std::numbers::pi / (n_theta + 1);
        for (int i = 1; i <= n_theta; ++i) {
            const double t = std::cos(i * h), s2 = 1.0 - t * t;
            ts.push_back(t);
            tw.push_back(h * s2 * std::pow(s2, (m - 4) / 2));
        }
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ts[i] * ts[i]));
        for (std::size_t j = 0; j < inner.size(); ++j) {
            s.nodes.push_back(ts[i]);
            for (double v : inner.node(j)) s.nodes.push_back(st * v);
            s.w.push_back(tw[i] * inner.w[j]);
        }
    }
    return s;
}

void QuadratureSpec::validate() const {
    if (n_r < 2) throw std::invalid_argument("quadrature: n_r must be >= 2");
    if (!(r_min > 0.0)) throw std::invalid_argument("quadrature: r_min must be > 0");
    if (!(R_max > r_min)) throw std::invalid_argument("quadrature: R_max must exceed r_min");
    if (n_theta < 2 || n_phi < 2) throw std::invalid_argument("quadrature: sphere node counts must be >= 2");
}

QuadratureSpec QuadratureSpec::doubled() const {
    QuadratureSpec q = *this;
    q.n_r *= 2;
    q.R_max *= 2;
    return q;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace radef
