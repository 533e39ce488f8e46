#pragma once

#include "qbo/model.hpp"

namespace qbo {

// Relative half-width of the rejection band around critical damping
// (gamma = 2 w0), where lambda_d^(2,3) are individually singular.
inline constexpr double kCriticalBand = 1e-9;

// Characteristic rates and partial-fraction coefficients. Throws
// critical_damping_error inside the rejection band and domain_error if a
// rate collides with Omega.
DrudeDecomposition decompose(const ModelParams& p);

// Closed-form uncoupled moments:
//   <q^2> = hbar/(2 M omega0) coth(beta hbar omega0 / 2),
//   <p^2> = (M hbar omega0 / 2) coth(beta hbar omega0 / 2).
GaussianMoments uncoupled_moments(double M, double omega0, double beta, double hbar);

// Drude closed forms, digamma sums over the three rates. gamma == 0 routes
// to the uncoupled formulas. Underdamped evaluation runs in complex
// arithmetic; the conjugate-pair imaginary parts must cancel to 1e-10
// relative or the function throws.
GaussianMoments moments(const ModelParams& p);

// Analytic parameter derivatives of the moments. The mass and spring
// variations follow the chain rules in which (Omega, gamma, w0) depend on
// M or k0 through fixed (omega_d, gamma_o) and omega0^2 = k0 / M.
MomentDerivatives dmoments_dgamma(const ModelParams& p);
MomentDerivatives dmoments_dM(const ModelParams& p);
MomentDerivatives dmoments_dk0(const ModelParams& p);
MomentDerivatives dmoments(const ModelParams& p, Variation which);

// Chart velocity (dOmega, dgamma, dw0) induced by a unit variation of M or
// k0 at fixed (omega_d, gamma_o). Exposed for the finite-difference oracles.
struct ChartFlow {
    double dOmega = 0.0;
    double dgamma = 0.0;
    double dw0 = 0.0;
};
ChartFlow chart_flow(const ModelParams& p, Variation which);

// Parameter points displaced along the same flows, for finite differencing:
// vary_mass / vary_spring re-solve the (w0, Omega, gamma) chart so that
// (omega_d, gamma_o) stay fixed while omega0^2 = k0/M tracks the variation.
ModelParams vary_gamma(const ModelParams& p, double new_gamma);
ModelParams vary_mass(const ModelParams& p, double new_M);
ModelParams vary_spring(const ModelParams& p, double new_k0);
ModelParams vary(const ModelParams& p, Variation which, double new_value);
double variation_value(const ModelParams& p, Variation which);

}  // namespace qbo
