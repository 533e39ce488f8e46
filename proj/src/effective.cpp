#include "qbo/effective.hpp"

#include <cmath>

#include "qbo/errors.hpp"

namespace qbo {

namespace {

double checked_v(double v) {
    if (!(v >= 0.5 - 1e-12)) {
        throw uncertainty_error("effective: uncertainty parameter v below 1/2");
    }
    return std::max(v, 0.5);
}

}  // namespace

double EigenAnsatz::occupation(int n) const {
    if (n < 0) throw domain_error("EigenAnsatz::occupation: negative index");
    return (1.0 - xi) * std::pow(xi, n);
}

EigenAnsatz eigen_solution(const GaussianMoments& mom, double hbar) {
    const double v = checked_v(mom.v);
    EigenAnsatz a;
    a.c_tilde = std::pow(mom.p2 / (hbar * hbar * mom.q2), 0.25);
    a.v_tilde = std::sqrt(0.25 + a.c_tilde * a.c_tilde * mom.q2 + v * v);
    a.y_scale = std::sqrt(mom.p2) * (v - 0.25 / v) / (std::sqrt(2.0) * hbar * a.v_tilde);
    a.s = a.c_tilde * std::sqrt(2.0 * mom.q2) / a.v_tilde;
    a.xi = (v - 0.5) / (v + 0.5);
    return a;
}

EffectiveOscillator effective_star(const GaussianMoments& mom, double M, double k0,
                                   double beta, double hbar, double kB) {
    if (!(M > 0.0 && k0 > 0.0 && beta > 0.0 && hbar > 0.0 && kB > 0.0)) {
        throw domain_error("effective_star: parameters must be positive");
    }
    const double Q = mom.q2, P = mom.p2;
    EffectiveOscillator eff;
    eff.v = checked_v(mom.v);
    eff.xi = (eff.v - 0.5) / (eff.v + 0.5);

    const double ratio = std::sqrt(P / Q);  // = M_eff omega_eff for any gauge
    eff.omega_eff_star = 0.5 * ratio / M + 0.5 * k0 / ratio;
    const double U_s = P / (2.0 * M) + 0.5 * k0 * Q;
    eff.M_eff_star = P / U_s;
    eff.k_eff_star = 0.5 * (k0 + P / (M * Q));
    eff.U_eff_star = U_s;
    eff.S = entropy_von_neumann(eff.v, kB);
    if (eff.xi > 0.0) {
        eff.T_eff_star = -hbar * eff.omega_eff_star / (kB * std::log(eff.xi));
        eff.Z_eff = std::sqrt(eff.xi) / (1.0 - eff.xi);  // csch(beta_eff hbar w_eff/2)/2
    } else {
        eff.T_eff_star = 0.0;  // continuous extension at the pure-state boundary
        eff.Z_eff = 0.0;
    }
    eff.F_eff_star = U_s - eff.T_eff_star * eff.S;
    return eff;
}

double entropy_von_neumann(double v, double kB) {
    v = checked_v(v);
    const double a = v + 0.5, b = v - 0.5;
    if (b <= 0.0) return 0.0;
    return kB * (a * std::log(a) - b * std::log(b));
}

double entropy_effective(double xi, double kB) {
    if (!(xi >= 0.0) || xi >= 1.0) {
        throw domain_error("entropy_effective: xi must lie in [0, 1)");
    }
    if (xi == 0.0) return 0.0;
    return -kB * (std::log(1.0 - xi) + xi * std::log(xi) / (1.0 - xi));
}

GrabertComparison grabert_comparison(const GaussianMoments& mom, double beta, double hbar) {
    const double v = checked_v(mom.v);
    GrabertComparison g;
    // arccoth(2v) = ln((2v+1)/(2v-1))/2; v = 1/2 pushes omega_tilde to infinity
    if (v <= 0.5) throw domain_error("grabert_comparison: pure state has no finite mapping");
    g.omega_tilde = (1.0 / (hbar * beta)) * std::log((2.0 * v + 1.0) / (2.0 * v - 1.0));
    g.M_tilde = std::sqrt(mom.p2 / mom.q2) / g.omega_tilde;
    g.U_tilde = hbar * g.omega_tilde * v;
    return g;
}

ZeroTComparison zero_T_comparison(const GaussianMoments& mom, double M, double hbar,
                                  double kB) {
    const double v = checked_v(mom.v);
    ZeroTComparison z;
    z.omega_bar = std::sqrt(mom.p2 / mom.q2) / M;
    const double xi = (v - 0.5) / (v + 0.5);
    z.T_bar = xi > 0.0 ? -hbar * z.omega_bar / (kB * std::log(xi)) : 0.0;
    z.U_bar = mom.p2 / M;  // p2/(2M) + (M omega_bar^2/2) q2 collapses to p2/M
    return z;
}

}  // namespace qbo
