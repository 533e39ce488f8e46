#pragma once

#include <functional>
#include <vector>

#include "qbo/model.hpp"

// Brute-force verifiers, independent of the closed-form production paths.
// Each one reproduces the uncoupled limit before it is trusted against
// anything else; the unit tests enforce that order.
namespace qbo::oracles {

// Equilibrium moments by Matsubara summation with nu_n = 2 pi n / (hbar beta)
// and the Drude kernel gammahat(x) = gamma_o omega_d / (omega_d + x):
//   <q^2> = (1/(M beta)) sum_n [nu_n^2 + omega0^2 + |nu_n| gammahat(|nu_n|)]^(-1)
//   <p^2> = (M/beta)    sum_n (omega0^2 + |nu_n| gammahat) [ ... ]^(-1)
// The <p^2> form is the bare nu^2-weighted sum with its divergent constant
// asymptote removed; the remaining 1/nu tails are subtracted term by term to
// `tail_order` and restored from zeta-function closed sums.
GaussianMoments matsubara_moments(const ModelParams& p, int n_terms = 200000,
                                  int tail_order = 3, double rel_tol = 1e-10);

// Drude susceptibility at omega + i0+, built from the memory kernel (not
// from the partial-fraction rates, which it is checked against).
complex susceptibility(const ModelParams& p, double omega);

// Moments from the fluctuation-dissipation integrals over Im chi.
// omega_max == 0 integrates the full line adaptively (resolved tail);
// a finite omega_max truncates hard and throws convergence_error when the
// discarded tail estimate exceeds the tolerance.
GaussianMoments fdt_quadrature_moments(const ModelParams& p, double omega_max = 0.0,
                                       double rel_tol = 1e-9);

// Finite bath: N oscillators sampled from the Drude spectral density
// J(omega) = M gamma_o omega_d^2 omega / (omega^2 + omega_d^2) on a log grid,
// coupling fixed by the exact per-bin spectral mass, counter-term
// sum c_j^2/(2 k_j) included exactly.
struct StarBath {
    int N = 0;
    std::vector<double> omega;     // bath frequencies, ascending (m_j = 1)
    std::vector<double> coupling;  // c_j
    double counter_term = 0.0;     // sum c_j^2 / (2 k_j)
};
StarBath discretize_drude_bath(const ModelParams& p, int N, double omega_cutoff);

// Normal modes of the (N+1)-body quadratic form. The mass-weighted
// stiffness matrix is an arrowhead, so the modes come from its secular
// equation in O(N^2) instead of a dense O(N^3) factorization.
struct NormalModes {
    std::vector<double> frequency;      // wbar_k, ascending
    std::vector<double> system_weight;  // squared q-component of each mode
};
NormalModes star_normal_modes(const ModelParams& p, const StarBath& bath);

GaussianMoments star_bath_moments(const ModelParams& p, int N, double omega_cutoff = 0.0);

// <n|rho_s|m> by tensor Gauss-Hermite quadrature in the rotated coordinates
// (q+q')/sqrt2, (q-q')/sqrt2, where kernel and eigenfunctions factorize into
// one Gaussian per axis; the rule is exact for the polynomial part.
// Practical up to n, m <= 40.
double rho_element_quadrature(int n, int m, const GaussianMoments& mom, double M,
                              double omega0, double hbar);

// All elements n, m <= n_max from one shared node set (row-major,
// (n_max+1)^2); same construction as rho_element_quadrature.
std::vector<double> rho_element_table(int n_max, const GaussianMoments& mom, double M,
                                      double omega0, double hbar);

// Central finite difference with a Richardson table of `richardson` levels.
struct FdSpec {
    double h = 1e-5;
    int richardson = 2;
};
struct FdResult {
    double value = 0.0;
    double step = 0.0;
};
FdResult finite_difference(const std::function<double(double)>& f, double x, FdSpec spec);

// Sup-norm residual of the eigenvalue equation
//   int dq' <q|rho_s|q'> phi_n(q') = p_n phi_n(q)
// over a position grid, with the Gauss-Hermite family of scale c_tilde and
// the geometric eigenvalue p_n = (1 - xi) xi^n. Passing c_tilde_override
// probes the sensitivity of the ansatz scale.
double eigencheck_quadrature(int n, const GaussianMoments& mom, double hbar,
                             double c_tilde_override = 0.0);

}  // namespace qbo::oracles
