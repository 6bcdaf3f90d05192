#include "radef/specfun.hpp"

#include "radef/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radef {

double laguerre(int k, double alpha, double t) {
    if (k < 0) throw std::invalid_argument("laguerre: negative degree");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 1.0 + alpha - t;
    for (int n = 1; n < k; ++n) {
        const double next = ((2.0 * n + 1.0 + alpha - t) * cur - (n + alpha) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> laguerre_coefficients(int k, double alpha) {
    if (k < 0) throw std::invalid_argument("laguerre_coefficients: negative degree");
    // c_j = (-1)^j / j! * binom(k + alpha, k - j), the binomial written as a finite product
    std::vector<double> c(k + 1);
    for (int j = 0; j <= k; ++j) {
        double v = 1.0;
        for (int i = j + 1; i <= k; ++i) v *= (i + alpha) / (i - j);
        for (int i = 1; i <= j; ++i) v /= i;
        c[j] = (j % 2) ? -v : v;
    }
    return c;
}

double gegenbauer(int k, double lambda, double w) {
    if (k < 0) throw std::invalid_argument("gegenbauer: negative degree");
    if (!(lambda > 0.0)) throw std::invalid_argument("gegenbauer: lambda must be > 0 (m >= 3)");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 2.0 * lambda * w;
    for (int n = 2; n <= k; ++n) {
        const double next = (2.0 * w * (n + lambda - 1.0) * cur - (n + 2.0 * lambda - 2.0) * prev) / n;
        prev = cur;
        cur = next;
    }
    return cur;
}

void gegenbauer_all(int kmax, double lambda, double w, std::vector<double>& out) {
    if (!(lambda > 0.0)) throw std::invalid_argument("gegenbauer: lambda must be > 0 (m >= 3)");
    out.resize(kmax + 1);
    if (kmax < 0) return;
    out[0] = 1.0;
    if (kmax == 0) return;
    out[1] = 2.0 * lambda * w;
    for (int n = 2; n <= kmax; ++n)
        out[n] = (2.0 * w * (n + lambda - 1.0) * out[n - 1] - (n + 2.0 * lambda - 2.0) * out[n - 2]) / n;
}

double gegenbauer_at_one(int k, double lambda) {
    double v = 1.0;
    for (int j = 1; j <= k; ++j) v *= (j + 2.0 * lambda - 1.0) / j;
    return v;
}

cplx bessel_series(double nu, cplx z, const BesselOptions& opt) {
    if (!(nu > -1.0)) throw std::invalid_argument("bessel: order must be > -1");
    if (std::abs(z) > opt.max_abs_z)
        throw NumericalError("bessel: |z| = " + std::to_string(std::abs(z)) +
                             " exceeds the configured bound " + std::to_string(opt.max_abs_z));
    const cplx q = -0.25 * z * z;
    cplx term = 1.0;
    // Kahan-compensated complex sum
    cplx sum = term, comp = 0.0;
    double biggest = std::abs(term);
    int small = 0;
    for (int k = 1; k < opt.max_terms; ++k) {
        term *= q / (k * (k + nu));
        const cplx y = term - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const double a = std::abs(term);
        biggest = std::max(biggest, a);
        if (a < opt.stop_rel * biggest) {
            if (++small >= opt.stop_streak) return sum;
        } else {
            small = 0;
        }
    }
    throw NumericalError("bessel: series did not stagnate");
}

cplx bessel_j_tilde(double nu, cplx z, const BesselOptions& opt) {
    return bessel_series(nu, z, opt) * std::exp(-log_gamma(nu + 1.0));
}

cplx principal_pow(cplx z, cplx a) {
    if (z == cplx{}) {
        if (a == cplx{}) return 1.0;
        if (a.real() > 0) return 0.0;
        throw std::domain_error("principal_pow: 0 raised to a power with Re <= 0");
    }
    return std::exp(a * std::log(z));
}

cplx bessel_j(double nu, cplx z, const BesselOptions& opt) {
    const bool integer_order = nu == std::floor(nu);
    if (!integer_order && z.imag() == 0.0 && z.real() < 0.0)
        throw std::domain_error("bessel_j: non-integer order on the negative real axis (branch cut)");
    if (z == cplx{}) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw std::domain_error("bessel_j: J_nu(0) is infinite for -1 < nu < 0");
    }
    const cplx half = 0.5 * z;
    const cplx p = integer_order ? std::pow(half, static_cast<int>(nu)) : principal_pow(half, nu);
    return p * bessel_j_tilde(nu, z, opt);
}

double bessel_i(double nu, double x, const BesselOptions& opt) {
    const cplx rot = std::exp(cplx(0.0, -0.5 * std::numbers::pi * nu));
    return (rot * bessel_j(nu, cplx(0.0, x), opt)).real();
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: argument must be > 0");
    return std::lgamma(x);
}

}  // namespace radef
