#pragma once

#include "qbo/model.hpp"

namespace qbo {

// Heat/work split of a reversible single-parameter variation, in both the
// bare (M, k0, T) and effective (M_eff*, k_eff*, T_eff*) descriptions.
// First law: dQ_s + dW_s = dQ_eff_star + dW_eff_star = dU_s.
// The "naive" gap dQ_s - T dS_N equals Y by construction; the effective
// gap dQ_eff_star - T_eff_star dS_N must vanish.
struct VariationReport {
    Variation which = Variation::damping;
    double dQ_s = 0.0;
    double dW_s = 0.0;
    double dQ_eff_star = 0.0;
    double dW_eff_star = 0.0;
    double T_dS = 0.0;
    double Teff_dS = 0.0;
    double Y = 0.0;
    bool naive_violated = false;
    double effective_equality_residual = 0.0;
    // supporting values
    double dU_s = 0.0;
    double dS = 0.0;
    double T = 0.0;
    double T_eff_star = 0.0;
};

// Uncoupled-oscillator Clausius equalities,
//   dQ_s/dM  =  beta (hbar omega0)^2 csch^2(beta hbar omega0/2) / (8 M) = T dS/dM,
//   dQ_s/dk0 = -beta hbar^2 csch^2(beta hbar omega0/2) / (8 M)          = T dS/dk0,
// evaluated through both routes.
struct WeakCouplingReport {
    double dQ_dM = 0.0;
    double TdS_dM = 0.0;
    double dQ_dk0 = 0.0;
    double TdS_dk0 = 0.0;
    double dW_dM = 0.0;
    double dW_dk0 = 0.0;
    double residual_M = 0.0;
    double residual_k0 = 0.0;
};
WeakCouplingReport weak_coupling_equalities(double M, double omega0, double beta,
                                            double hbar, double kB);

VariationReport variation_report(const ModelParams& p, Variation which);
VariationReport gamma_variation(const ModelParams& p);
VariationReport local_variation(const ModelParams& p, Variation which);  // mass | spring

// dS_N/d(param) through the v chain rule; matches finite differences of
// S_N. Throws domain_error at v = 1/2 where the logarithm diverges.
double entropy_derivative(const ModelParams& p, Variation which);

// int_0^gamma_max (1/T_eff*) dQ_eff*/dgamma' dgamma' against
// S_N(gamma_max) - S_N(0). The integrand is assembled from the closed
// forms of dQ_eff* and T_eff*, never from dS. A critical-damping crossing
// becomes a mandatory panel boundary; n_steps (optional) seeds extra
// uniform panels.
struct CyclicIntegral {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // |lhs - rhs| / |rhs|
};
CyclicIntegral cyclic_integral(const ModelParams& p, double gamma_max, int n_steps = 0);

}  // namespace qbo
