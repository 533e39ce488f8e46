#pragma once

#include <array>
#include <complex>

namespace qbo {

using complex = std::complex<double>;

enum class Variation { damping, mass, spring };
enum class DampingRegime { underdamped, overdamped };

const char* to_string(Variation v);

// Oscillator (M, k0) plus Drude bath in the (w0, Omega, gamma) chart, at
// inverse temperature beta. The conventional triple (omega0, omega_d,
// gamma_o) is a derived view:
//
//   omega0^2 = w0^2 Omega / (Omega + gamma)
//   omega_d  = Omega + gamma
//   gamma_o  = gamma (Omega (Omega + gamma) + w0^2) / (Omega + gamma)^2
//
// Values are validated on construction and treated as immutable afterwards.
struct ModelParams {
    double M = 1.0;
    double w0 = 1.0;
    double Omega = 1.0;
    double gamma = 0.0;
    double beta = 1.0;
    double hbar = 1.0;
    double kB = 1.0;

    ModelParams() = default;
    ModelParams(double M_, double w0_, double Omega_, double gamma_, double beta_,
                double hbar_ = 1.0, double kB_ = 1.0);

    double omega0_sq() const { return w0 * w0 * Omega / (Omega + gamma); }
    double omega0() const;
    double k0() const { return M * omega0_sq(); }
    double omega_d() const { return Omega + gamma; }
    double gamma_o() const;
    double temperature() const { return 1.0 / (kB * beta); }

    // w1 = sqrt(w0^2 - (gamma/2)^2); imaginary in the overdamped regime.
    complex w1() const;

    void validate() const;
};

// Caption convention: hbar = kB = w0 = Omega = M = 1, temperature in w0 units.
ModelParams caption_params(double gamma, double T);

// Three characteristic rates {Omega, z1, z2} of the Drude response and the
// partial-fraction coefficients lambda_d^(l). Sum rules:
//   sum_l lambda_l = 0,  sum_l lambda_l omega_l = 1.
struct DrudeDecomposition {
    std::array<complex, 3> pole;    // {Omega, z1, z2}
    std::array<complex, 3> lambda;  // lambda_d^(1..3)
    DampingRegime regime = DampingRegime::underdamped;
};

// Equilibrium second moments and the uncertainty parameter
// v = sqrt(<q^2><p^2>) / hbar >= 1/2.
struct GaussianMoments {
    double q2 = 0.0;
    double p2 = 0.0;
    double v = 0.0;
};

struct MomentDerivatives {
    double dq2 = 0.0;
    double dp2 = 0.0;
    Variation which = Variation::damping;
};

}  // namespace qbo
