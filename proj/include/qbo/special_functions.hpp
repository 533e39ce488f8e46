#pragma once

#include <cmath>
#include <complex>

namespace qbo {

using complex = std::complex<double>;

// --- Gamma-family functions for complex argument ------------------------
//
// All three use the same scheme: upward argument recurrence until
// Re z >= 10, then the Bernoulli (Stirling-type) asymptotic tail. This is
// uniformly accurate for the arguments beta*hbar*z/(2*pi) that appear in
// the Drude moment formulas over the full temperature range, including the
// complex-conjugate pair of the underdamped case.

// Continuous log Gamma (real on the positive real axis). Throws pole_error
// at non-positive integers.
complex log_gamma(complex z);

// psi(z) = d log Gamma / dz, good to >= 12 significant digits for Re z > 0.
complex digamma(complex z);

// psi'(z) = d^2 log Gamma / dz^2.
complex trigamma(complex z);

// --- Orthogonal polynomials ---------------------------------------------
//
// Production evaluation is by three-term recurrence; the explicit binomial
// sums lose precision past n ~ 30 and are kept only as test oracles.

// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

// Legendre polynomial P_n(z), valid for any real z (|z| > 1 included).
double legendre(int n, double z);

// Jacobi polynomial P_n^(mu,nu)(z) for mu, nu > -1.
double jacobi(int n, double mu, double nu, double z);

// A polynomial value carried as sign * exp(log_abs); sign == 0 encodes an
// exact zero. Keeps large-index recurrences overflow-free.
struct scaled_value {
    double log_abs = 0;
    int sign = 1;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// delta^(n/2) P_n(delta^(-1/2)), evaluated as a polynomial in delta.
// Real for every real delta (delta <= 0 included), which is what the
// density-matrix closed forms need when Delta_beta >= 1.
scaled_value legendre_scaled(int n, double delta);

// delta^(m/2) P_m^(a,a)(delta^(-1/2)) for integer a >= 0, same contract.
scaled_value jacobi_equal_scaled(int m, int a, double delta);

// Terminating hypergeometric sum 2F1(-k, -l; c; z) =
// sum_j (-k)_j (-l)_j / ((c)_j j!) z^j. Exact finite sum; the terms all
// share one sign for z > 0, so ascending accumulation is stable.
double hyp2f1_terminating(int k, int l, double c, double z);

// --- Small real helpers ---------------------------------------------------

double coth(double x);
double csch(double x);

}  // namespace qbo
