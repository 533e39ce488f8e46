#include "qbo/drude.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbo/errors.hpp"
#include "qbo/special_functions.hpp"

namespace qbo {

namespace {
constexpr double pi = std::numbers::pi;
}

const char* to_string(Variation v) {
    switch (v) {
        case Variation::damping: return "damping";
        case Variation::mass: return "mass";
        case Variation::spring: return "spring";
    }
    return "?";
}

ModelParams::ModelParams(double M_, double w0_, double Omega_, double gamma_,
                         double beta_, double hbar_, double kB_)
    : M(M_), w0(w0_), Omega(Omega_), gamma(gamma_), beta(beta_), hbar(hbar_), kB(kB_) {
    validate();
}

double ModelParams::omega0() const { return std::sqrt(omega0_sq()); }

double ModelParams::gamma_o() const {
    const double wd = Omega + gamma;
    return gamma * (Omega * wd + w0 * w0) / (wd * wd);
}

complex ModelParams::w1() const {
    const double s = w0 * w0 - 0.25 * gamma * gamma;
    return s >= 0 ? complex(std::sqrt(s), 0.0) : complex(0.0, std::sqrt(-s));
}

void ModelParams::validate() const {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw domain_error(std::string("ModelParams: ") + name + " must be positive and finite");
        }
    };
    positive(M, "M");
    positive(w0, "w0");
    positive(Omega, "Omega");
    positive(beta, "beta");
    positive(hbar, "hbar");
    positive(kB, "kB");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw domain_error("ModelParams: gamma must be non-negative and finite");
    }
}

ModelParams caption_params(double gamma, double T) {
    if (!(T > 0.0)) throw domain_error("caption_params: temperature must be positive");
    return ModelParams(1.0, 1.0, 1.0, gamma, 1.0 / T);
}

DrudeDecomposition decompose(const ModelParams& p) {
    if (std::abs(0.5 * p.gamma - p.w0) <= kCriticalBand * p.w0) {
        throw critical_damping_error(
            "decompose: gamma within the critical-damping rejection band around 2*w0");
    }
    DrudeDecomposition d;
    const double w1sq = p.w0 * p.w0 - 0.25 * p.gamma * p.gamma;
    complex z1, z2;
    if (w1sq > 0.0) {
        d.regime = DampingRegime::underdamped;
        z1 = complex(0.5 * p.gamma, std::sqrt(w1sq));
        z2 = std::conj(z1);
    } else {
        d.regime = DampingRegime::overdamped;
        const double r = std::sqrt(-w1sq);
        z1 = complex(0.5 * p.gamma - r, 0.0);
        z2 = complex(0.5 * p.gamma + r, 0.0);
    }
    const complex Om(p.Omega, 0.0);
    for (const complex& z : {z1, z2}) {
        if (std::abs(Om - z) <= 1e-12 * std::max(p.Omega, std::abs(z))) {
            throw domain_error("decompose: Omega collides with a damped rate z1/z2");
        }
    }
    d.pole = {Om, z1, z2};
    d.lambda = {
        (z1 + z2) / ((Om - z1) * (z2 - Om)),
        (Om + z2) / ((z1 - Om) * (z2 - z1)),
        (Om + z1) / ((z2 - Om) * (z1 - z2)),
    };
    return d;
}

GaussianMoments uncoupled_moments(double M, double omega0, double beta, double hbar) {
    if (!(M > 0.0 && omega0 > 0.0 && beta > 0.0 && hbar > 0.0)) {
        throw domain_error("uncoupled_moments: inputs must be positive");
    }
    const double c = coth(0.5 * beta * hbar * omega0);
    GaussianMoments m;
    m.q2 = hbar / (2.0 * M * omega0) * c;
    m.p2 = 0.5 * M * hbar * omega0 * c;
    m.v = 0.5 * c;
    return m;
}

namespace {

// Thermal weight attached to each rate: f(z) = 1/(beta z) + (hbar/pi) psi(beta hbar z / 2 pi).
complex rate_weight(const ModelParams& p, const complex& z) {
    return 1.0 / (p.beta * z) + (p.hbar / pi) * digamma(p.beta * p.hbar * z / (2.0 * pi));
}

complex rate_weight_derivative(const ModelParams& p, const complex& z) {
    return -1.0 / (p.beta * z * z) +
           (p.hbar * p.hbar * p.beta / (2.0 * pi * pi)) * trigamma(p.beta * p.hbar * z / (2.0 * pi));
}

void check_residue(const complex& sum, const char* who) {
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
        throw numeric_error(std::string(who) + ": non-finite evaluation");
    }
    if (std::abs(sum.imag()) > 1e-10 * std::max(1e-300, std::abs(sum.real()))) {
        throw consistency_error(std::string(who) +
                                ": conjugate-pair imaginary parts failed to cancel");
    }
}

}  // namespace

GaussianMoments moments(const ModelParams& p) {
    if (p.gamma == 0.0) return uncoupled_moments(p.M, p.omega0(), p.beta, p.hbar);
    const DrudeDecomposition d = decompose(p);
    complex q_sum = 0.0, p_sum = 0.0;
    for (int l = 0; l < 3; ++l) {
        const complex f = rate_weight(p, d.pole[l]);
        q_sum += d.lambda[l] * f;
        p_sum += d.lambda[l] * d.pole[l] * d.pole[l] * f;
    }
    check_residue(q_sum, "moments<q^2>");
    check_residue(p_sum, "moments<p^2>");
    GaussianMoments m;
    m.q2 = q_sum.real() / p.M;
    m.p2 = -p.M * p_sum.real();
    if (!(m.q2 > 0.0) || !(m.p2 > 0.0)) {
        throw numeric_error("moments: non-positive variance");
    }
    m.v = std::sqrt(m.q2 * m.p2) / p.hbar;
    if (m.v < 0.5 - 1e-12) {
        throw uncertainty_error("moments: uncertainty product below hbar/2");
    }
    return m;
}

ChartFlow chart_flow(const ModelParams& p, Variation which) {
    ChartFlow flow;
    if (which == Variation::damping) {
        flow.dgamma = 1.0;
        return flow;
    }
    const double w0sq = p.w0 * p.w0;
    const double wd = p.Omega + p.gamma;
    const double den = p.Omega * (p.gamma - p.Omega) - w0sq;
    if (std::abs(den) <= 1e-9 * (p.Omega * p.Omega + w0sq)) {
        throw domain_error("chart_flow: parameter flow singular at Omega(gamma-Omega) = w0^2");
    }
    // d/dM at fixed (k0, omega_d, gamma_o), i.e. d(omega0^2)/dM = -omega0^2/M
    flow.dOmega = (p.Omega / wd) * w0sq * p.gamma / (p.M * den);
    flow.dgamma = -flow.dOmega;
    flow.dw0 = p.w0 * p.Omega * (w0sq + p.Omega * p.Omega - p.gamma * p.gamma) /
               (2.0 * p.M * wd * den);
    if (which == Variation::spring) {
        // d(omega0^2)/dk0 = 1/M = -(1/omega0^2) d(omega0^2)/dM, so the whole
        // flow picks up the factor -(Omega+gamma)/(w0^2 Omega).
        const double scale = -wd / (w0sq * p.Omega);
        flow.dOmega *= scale;
        flow.dgamma *= scale;
        flow.dw0 *= scale;
    }
    return flow;
}

MomentDerivatives dmoments(const ModelParams& p, Variation which) {
    const DrudeDecomposition d = decompose(p);
    const ChartFlow flow = chart_flow(p, which);

    const complex dOm(flow.dOmega, 0.0);
    std::array<complex, 3> dpole;
    dpole[0] = dOm;
    for (int l : {1, 2}) {
        // roots of z^2 - gamma z + w0^2: (2z - gamma) dz = z dgamma - 2 w0 dw0
        const complex z = d.pole[l];
        dpole[l] = (z * flow.dgamma - 2.0 * p.w0 * flow.dw0) / (2.0 * z - p.gamma);
    }

    const complex Om = d.pole[0], z1 = d.pole[1], z2 = d.pole[2];
    const complex dz1 = dpole[1], dz2 = dpole[2];
    std::array<complex, 3> dlambda;
    {
        const complex n = z1 + z2, dn = dz1 + dz2;
        const complex den = (Om - z1) * (z2 - Om);
        const complex dden = (dOm - dz1) * (z2 - Om) + (Om - z1) * (dz2 - dOm);
        dlambda[0] = (dn * den - n * dden) / (den * den);
    }
    {
        const complex n = Om + z2, dn = dOm + dz2;
        const complex den = (z1 - Om) * (z2 - z1);
        const complex dden = (dz1 - dOm) * (z2 - z1) + (z1 - Om) * (dz2 - dz1);
        dlambda[1] = (dn * den - n * dden) / (den * den);
    }
    {
        const complex n = Om + z1, dn = dOm + dz1;
        const complex den = (z2 - Om) * (z1 - z2);
        const complex dden = (dz2 - dOm) * (z1 - z2) + (z2 - Om) * (dz1 - dz2);
        dlambda[2] = (dn * den - n * dden) / (den * den);
    }

    complex q_sum = 0.0, p_sum = 0.0;   // the moments themselves
    complex dq_sum = 0.0, dp_sum = 0.0; // their flow derivatives
    for (int l = 0; l < 3; ++l) {
        const complex z = d.pole[l];
        const complex f = rate_weight(p, z);
        const complex fp = rate_weight_derivative(p, z);
        const complex K = f * dlambda[l] + d.lambda[l] * fp * dpole[l];
        q_sum += d.lambda[l] * f;
        p_sum += d.lambda[l] * z * z * f;
        dq_sum += K;
        dp_sum += K * z * z + 2.0 * z * d.lambda[l] * f * dpole[l];
    }
    check_residue(dq_sum, "dmoments<q^2>");
    check_residue(dp_sum, "dmoments<p^2>");

    MomentDerivatives out;
    out.which = which;
    out.dq2 = dq_sum.real() / p.M;
    out.dp2 = -p.M * dp_sum.real();
    if (which == Variation::mass) {
        out.dq2 -= q_sum.real() / (p.M * p.M);   // -<q^2>/M with <q^2> = q_sum/M
        out.dp2 += -p_sum.real();                // +<p^2>/M with <p^2> = -M p_sum
    }
    return out;
}

MomentDerivatives dmoments_dgamma(const ModelParams& p) { return dmoments(p, Variation::damping); }
MomentDerivatives dmoments_dM(const ModelParams& p) { return dmoments(p, Variation::mass); }
MomentDerivatives dmoments_dk0(const ModelParams& p) { return dmoments(p, Variation::spring); }

namespace {

// Solve (omega_d - Omega)(Omega^2 + omega0^2) = gamma_o omega_d Omega for the
// chart value Omega, starting from the branch-continuous guess.
double solve_chart_Omega(double omega0_sq, double omega_d, double gamma_o, double guess) {
    auto f = [&](double Om) {
        return (omega_d - Om) * (Om * Om + omega0_sq) - gamma_o * omega_d * Om;
    };
    auto fp = [&](double Om) {
        return -(Om * Om + omega0_sq) + 2.0 * Om * (omega_d - Om) - gamma_o * omega_d;
    };
    double Om = std::min(std::max(guess, 1e-12 * omega_d), omega_d);
    for (int it = 0; it < 100; ++it) {
        const double step = f(Om) / fp(Om);
        double next = Om - step;
        if (!(next > 0.0) || !(next <= omega_d) || !std::isfinite(next)) {
            next = 0.5 * (Om + (step > 0 ? 0.0 : omega_d));
        }
        const double delta = std::abs(next - Om);
        Om = next;
        if (delta < 1e-15 * omega_d) break;
    }
    if (std::abs(f(Om)) > 1e-9 * omega_d * omega_d * omega_d) {
        throw convergence_error("vary_mass/vary_spring: chart inversion did not converge");
    }
    return Om;
}

ModelParams rebuild_chart(const ModelParams& p, double new_M, double new_k0) {
    const double omega0_sq = new_k0 / new_M;
    const double omega_d = p.omega_d();
    const double gamma_o = p.gamma_o();
    const double Om = solve_chart_Omega(omega0_sq, omega_d, gamma_o, p.Omega);
    const double gamma = omega_d - Om;
    const double w0 = std::sqrt(omega0_sq * omega_d / Om);
    return ModelParams(new_M, w0, Om, gamma < 0 ? 0.0 : gamma, p.beta, p.hbar, p.kB);
}

}  // namespace

ModelParams vary_gamma(const ModelParams& p, double new_gamma) {
    return ModelParams(p.M, p.w0, p.Omega, new_gamma, p.beta, p.hbar, p.kB);
}

ModelParams vary_mass(const ModelParams& p, double new_M) {
    return rebuild_chart(p, new_M, p.k0());
}

ModelParams vary_spring(const ModelParams& p, double new_k0) {
    return rebuild_chart(p, p.M, new_k0);
}

ModelParams vary(const ModelParams& p, Variation which, double new_value) {
    switch (which) {
        case Variation::damping: return vary_gamma(p, new_value);
        case Variation::mass: return vary_mass(p, new_value);
        case Variation::spring: return vary_spring(p, new_value);
    }
    throw domain_error("vary: bad variation tag");
}

double variation_value(const ModelParams& p, Variation which) {
    switch (which) {
        case Variation::damping: return p.gamma;
        case Variation::mass: return p.M;
        case Variation::spring: return p.k0();
    }
    throw domain_error("variation_value: bad variation tag");
}

}  // namespace qbo
