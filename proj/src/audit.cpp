#include "qbo/audit.hpp"

#include <cmath>
#include <vector>

#include "qbo/drude.hpp"
#include "qbo/effective.hpp"
#include "qbo/errors.hpp"
#include "qbo/quadrature.hpp"
#include "qbo/special_functions.hpp"

namespace qbo {

WeakCouplingReport weak_coupling_equalities(double M, double omega0, double beta,
                                            double hbar, double kB) {
    if (!(M > 0.0 && omega0 > 0.0 && beta > 0.0 && hbar > 0.0 && kB > 0.0)) {
        throw domain_error("weak_coupling_equalities: parameters must be positive");
    }
    const double x = 0.5 * beta * hbar * omega0;
    const double cs = csch(x);
    WeakCouplingReport rep;
    rep.dQ_dM = beta * hbar * hbar * omega0 * omega0 * cs * cs / (8.0 * M);
    rep.dQ_dk0 = -beta * hbar * hbar * cs * cs / (8.0 * M);

    // independent route: T dS/d(param) through v = coth(x)/2
    const double v = 0.5 * coth(x);
    const double lnr = std::log((v + 0.5) / (v - 0.5));  // = 2x
    const double dv_dx = -0.5 * cs * cs;
    const double dx_dM = -x / (2.0 * M);   // omega0 = sqrt(k0/M) at fixed k0
    const double dx_dk0 = x / (2.0 * M * omega0 * omega0);
    const double T = 1.0 / (kB * beta);
    rep.TdS_dM = T * kB * dv_dx * dx_dM * lnr;
    rep.TdS_dk0 = T * kB * dv_dx * dx_dk0 * lnr;

    const GaussianMoments mom = uncoupled_moments(M, omega0, beta, hbar);
    rep.dW_dM = -mom.p2 / (2.0 * M * M);
    rep.dW_dk0 = 0.5 * mom.q2;
    rep.residual_M = std::abs(rep.dQ_dM - rep.TdS_dM) / std::max(std::abs(rep.TdS_dM), 1e-300);
    rep.residual_k0 =
        std::abs(rep.dQ_dk0 - rep.TdS_dk0) / std::max(std::abs(rep.TdS_dk0), 1e-300);
    return rep;
}

VariationReport variation_report(const ModelParams& p, Variation which) {
    const GaussianMoments mom = moments(p);
    const MomentDerivatives der = dmoments(p, which);
    const EffectiveOscillator eff =
        effective_star(mom, p.M, p.k0(), p.beta, p.hbar, p.kB);
    const double Q = mom.q2, P = mom.p2;

    VariationReport rep;
    rep.which = which;
    rep.T = p.temperature();
    rep.T_eff_star = eff.T_eff_star;

    rep.dQ_s = der.dp2 / (2.0 * p.M) + 0.5 * p.k0() * der.dq2;
    switch (which) {
        case Variation::damping: rep.dW_s = 0.0; break;
        case Variation::mass: rep.dW_s = -P / (2.0 * p.M * p.M); break;
        case Variation::spring: rep.dW_s = 0.5 * Q; break;
    }
    rep.dU_s = rep.dQ_s + rep.dW_s;

    rep.dQ_eff_star = der.dp2 / (2.0 * eff.M_eff_star) + 0.5 * eff.k_eff_star * der.dq2;

    const double Us = eff.U_eff_star;  // = U_s
    const double dM_eff = der.dp2 / Us - P * rep.dU_s / (Us * Us);
    double dk_eff = 0.5 * (der.dp2 / (p.M * Q) - P * der.dq2 / (p.M * Q * Q));
    if (which == Variation::mass) dk_eff -= 0.5 * P / (p.M * p.M * Q);
    if (which == Variation::spring) dk_eff += 0.5;
    rep.dW_eff_star = -P * dM_eff / (2.0 * eff.M_eff_star * eff.M_eff_star) +
                      0.5 * Q * dk_eff;

    const double closure = rep.dQ_eff_star + rep.dW_eff_star - rep.dU_s;
    const double scale_u = std::abs(rep.dQ_eff_star) + std::abs(rep.dW_eff_star) +
                           std::abs(rep.dU_s) + 1e-300;
    if (std::abs(closure) > 1e-9 * scale_u) {
        throw consistency_error("variation_report: first-law closure violated");
    }

    const double dv = (Q * der.dp2 + P * der.dq2) / (2.0 * p.hbar * std::sqrt(Q * P));
    if (mom.v - 0.5 < 1e-12) {
        throw domain_error(
            "variation_report: entropy derivative diverges at the pure-state point v = 1/2");
    }
    rep.dS = p.kB * dv * std::log((mom.v + 0.5) / (mom.v - 0.5));
    rep.T_dS = rep.T * rep.dS;
    rep.Teff_dS = eff.T_eff_star * rep.dS;
    rep.Y = rep.dQ_s - rep.T_dS;

    const double scale = std::abs(rep.dQ_s) + std::abs(rep.T_dS) + 1e-300;
    rep.naive_violated = (rep.dQ_s - rep.T_dS) > 1e-12 * scale;
    rep.effective_equality_residual =
        (rep.dQ_eff_star - rep.Teff_dS) / std::max(std::abs(rep.Teff_dS), 1e-300);
    return rep;
}

VariationReport gamma_variation(const ModelParams& p) {
    return variation_report(p, Variation::damping);
}

VariationReport local_variation(const ModelParams& p, Variation which) {
    if (which == Variation::damping) {
        throw domain_error("local_variation: use gamma_variation for the damping parameter");
    }
    return variation_report(p, which);
}

double entropy_derivative(const ModelParams& p, Variation which) {
    const GaussianMoments mom = moments(p);
    if (mom.v - 0.5 < 1e-12) {
        throw domain_error("entropy_derivative: logarithm diverges at v = 1/2");
    }
    const MomentDerivatives der = dmoments(p, which);
    const double dv = (mom.q2 * der.dp2 + mom.p2 * der.dq2) /
                      (2.0 * p.hbar * std::sqrt(mom.q2 * mom.p2));
    return p.kB * dv * std::log((mom.v + 0.5) / (mom.v - 0.5));
}

CyclicIntegral cyclic_integral(const ModelParams& p, double gamma_max, int n_steps) {
    if (!(gamma_max > 0.0)) throw domain_error("cyclic_integral: gamma_max must be positive");
    const double gamma_c = 2.0 * p.w0;
    if (std::abs(gamma_max - gamma_c) <= kCriticalBand * p.w0) {
        throw critical_damping_error("cyclic_integral: endpoint inside the critical band");
    }

    const auto integrand = [&p](double g) {
        const ModelParams pg = vary_gamma(p, g);
        const GaussianMoments mom = moments(pg);
        const MomentDerivatives der = dmoments(pg, Variation::damping);
        const EffectiveOscillator eff =
            effective_star(mom, pg.M, pg.k0(), pg.beta, pg.hbar, pg.kB);
        const double dQ_eff =
            der.dp2 / (2.0 * eff.M_eff_star) + 0.5 * eff.k_eff_star * der.dq2;
        return dQ_eff / eff.T_eff_star;
    };

    std::vector<double> bps;
    if (gamma_max > gamma_c) bps.push_back(gamma_c);  // branch switch: panel boundary
    if (n_steps > 1) {
        for (int i = 1; i < n_steps; ++i) bps.push_back(gamma_max * i / n_steps);
    }

    CyclicIntegral out;
    out.lhs = integrate(integrand, 0.0, gamma_max, 0.0, 1e-11, bps).value;

    const GaussianMoments m1 = moments(vary_gamma(p, gamma_max));
    const GaussianMoments m0 = uncoupled_moments(p.M, p.w0, p.beta, p.hbar);
    out.rhs = entropy_von_neumann(m1.v, p.kB) - entropy_von_neumann(m0.v, p.kB);
    out.residual = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
    return out;
}

}  // namespace qbo
