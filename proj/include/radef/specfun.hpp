#pragma once

#include <complex>
#include <vector>

namespace radef {

using cplx = std::complex<double>;

// Generalized Laguerre polynomial L_k^{(alpha)}(t) by three-term recurrence.
double laguerre(int k, double alpha, double t);

// Power coefficients of L_k^{(alpha)}: L_k(t) = sum_j out[j] t^j.
std::vector<double> laguerre_coefficients(int k, double alpha);

// Gegenbauer polynomial C_k^{(lambda)}(w), lambda > 0.
double gegenbauer(int k, double lambda, double w);

// C_0^{(lambda)}(w) .. C_{kmax}^{(lambda)}(w) into out (resized to kmax+1).
void gegenbauer_all(int kmax, double lambda, double w, std::vector<double>& out);

// C_k^{(lambda)}(1) = Gamma(k+2 lambda) / (k! Gamma(2 lambda)).
double gegenbauer_at_one(int k, double lambda);

struct BesselOptions {
    double max_abs_z = 60.0;
    double stop_rel = 1e-18;
    int stop_streak = 3;
    int max_terms = 2000;
};

// Gamma(nu+1) J~_nu(z) = sum_k (-z^2/4)^k Gamma(nu+1) / (k! Gamma(k+nu+1)); starts at 1, so it
// stays representable for large nu where J~ itself underflows.
cplx bessel_series(double nu, cplx z, const BesselOptions& opt = {});

// J~_nu(z) = (z/2)^{-nu} J_nu(z) = sum_k (-1)^k (z/2)^{2k} / (k! Gamma(k+nu+1)); entire in z.
cplx bessel_j_tilde(double nu, cplx z, const BesselOptions& opt = {});

// J_nu(z) with the principal branch of (z/2)^nu.
cplx bessel_j(double nu, cplx z, const BesselOptions& opt = {});

// I_nu(x) = e^{-i pi nu / 2} J_nu(i x).
double bessel_i(double nu, double x, const BesselOptions& opt = {});

double log_gamma(double x);

// exp(a Log z), principal logarithm; 0^a = 0 for Re a > 0 and 1 for a = 0.
cplx principal_pow(cplx z, cplx a);

}  // namespace radef
