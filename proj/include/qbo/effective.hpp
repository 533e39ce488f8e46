#pragma once

#include "qbo/model.hpp"

namespace qbo {

// Closed solution of the eigenvalue problem for the position kernel:
// Gauss-Hermite eigenfunctions of scale c_tilde with a geometric spectrum.
struct EigenAnsatz {
    double c_tilde = 0.0;  // (p2/(hbar^2 q2))^(1/4)
    double v_tilde = 0.0;  // sqrt(1/4 + c_tilde^2 q2 + v^2)
    double y_scale = 0.0;  // coefficient of q in the shifted Gaussian integral
    double s = 0.0;        // c_tilde sqrt(2 q2)/v_tilde, strictly inside (0, 1)
    double xi = 0.0;       // (v - 1/2)/(v + 1/2)

    double occupation(int n) const;  // p_n = (1 - xi) xi^n
};

EigenAnsatz eigen_solution(const GaussianMoments& mom, double hbar);

// The uncoupled surrogate fixed by the starred frequency choice, which makes
// its mean energy equal the true internal energy U_s.
struct EffectiveOscillator {
    double xi = 0.0;
    double v = 0.0;
    double M_eff_star = 0.0;
    double omega_eff_star = 0.0;
    double k_eff_star = 0.0;
    double T_eff_star = 0.0;
    double Z_eff = 0.0;
    double U_eff_star = 0.0;
    double S = 0.0;          // von Neumann entropy, units of kB
    double F_eff_star = 0.0;
};

EffectiveOscillator effective_star(const GaussianMoments& mom, double M, double k0,
                                   double beta, double hbar, double kB);

// S_N = kB (v + 1/2) ln(v + 1/2) - kB (v - 1/2) ln(v - 1/2).
double entropy_von_neumann(double v, double kB);

// S_eff = -kB [ln(1 - xi) + xi ln(xi) / (1 - xi)]; equals S_N under the
// xi <-> v map.
double entropy_effective(double xi, double kB);

// Canonical-form comparison: effective frequency from arccoth at the true
// temperature. Generically U_tilde != U_s.
struct GrabertComparison {
    double omega_tilde = 0.0;
    double M_tilde = 0.0;
    double U_tilde = 0.0;
};
GrabertComparison grabert_comparison(const GaussianMoments& mom, double beta, double hbar);

// Fixed-mass zero-temperature comparison (moments taken at a large-beta
// proxy). T_bar stays finite at strong coupling; U_bar != U_s(beta = inf).
struct ZeroTComparison {
    double omega_bar = 0.0;
    double T_bar = 0.0;
    double U_bar = 0.0;
};
ZeroTComparison zero_T_comparison(const GaussianMoments& mom, double M, double hbar,
                                  double kB);

}  // namespace qbo
