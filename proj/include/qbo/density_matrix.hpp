#pragma once

#include <vector>

#include "qbo/model.hpp"

namespace qbo {

// The four dimensionless combinations of the moments that carry the whole
// number-basis representation, plus the basis scale c = sqrt(M omega0/hbar).
// Uncoupled limit: Upsilon = Delta = 0 and Lambda = exp(-beta hbar omega0).
// Lambda = 0 marks the pure (ground) state, where Delta = (Upsilon/Lambda)^2
// is taken as its limit 0 and the entries come from a Gaussian-overlap
// branch instead.
struct DimensionlessSet {
    double A = 0.0;
    double Upsilon = 0.0;
    double Lambda = 0.0;
    double Delta = 0.0;
    double c = 0.0;        // basis inverse-length scale
    double c_tilde = 0.0;  // state inverse-length scale (p2/(hbar^2 q2))^(1/4)
    double v = 0.0;
    double hbar = 1.0;
    bool pure = false;
};

DimensionlessSet dimensionless_quantities(const GaussianMoments& mom, double M,
                                          double omega0, double hbar);

// <q|rho_s|q'> Gaussian kernel; integrates to 1 along the diagonal.
double position_kernel(double q, double qp, const GaussianMoments& mom, double hbar);

// <n|rho_s|m> in the uncoupled number basis. Production route: Jacobi form
// with log-space Gamma ratios, evaluated as a polynomial in 1 - Delta so it
// stays real on both sides of Delta = 1. Opposite parity returns exactly 0.
double matrix_element(int n, int m, const DimensionlessSet& ds, const GaussianMoments& mom);

// The same element through the terminating-2F1 closed form; kept as a
// first-class cross-check route, never called by production code.
double matrix_element_hyp2f1(int n, int m, const DimensionlessSet& ds,
                             const GaussianMoments& mom);

// Diagonal occupation p_n = <n|rho_s|n>, Legendre form (independent of the
// Jacobi evaluation above).
double occupation(int n, const DimensionlessSet& ds, const GaussianMoments& mom);

// Geometric decay base of the diagonal: Lambda + |Upsilon|. Coincides with
// xi = (v - 1/2)/(v + 1/2) when Upsilon = 0.
double occupation_decay(const DimensionlessSet& ds);

// Analytic tail sum_{n > n_cut} p_n of the diagonal law.
double occupation_tail(const DimensionlessSet& ds, const GaussianMoments& mom, int n_cut);

// Parity-blocked truncated matrix; trace_deficit = 1 - sum of the kept
// diagonal. n_cut = ceil(ln tolerance / ln xi_diag) with the diagonal decay
// base xi_diag. Within ~1e-8 of a pure state the deficit inherits the
// double-precision cancellation noise of v - 1/2 and may come out at
// either sign of that magnitude.
struct ReducedDensityMatrix {
    int n_cut = 0;
    std::vector<double> entries;  // (n_cut+1)^2, row-major
    double trace_deficit = 0.0;
    double xi_diag = 0.0;

    double at(int n, int m) const { return entries[static_cast<size_t>(n) * (n_cut + 1) + m]; }
    int dim() const { return n_cut + 1; }
};

ReducedDensityMatrix build_truncated(const DimensionlessSet& ds, const GaussianMoments& mom,
                                     double tolerance);

// U_s = <p^2>/(2M) + (k0/2) <q^2>; equals the occupation-weighted bare
// energies sum_n p_n hbar omega0 (n + 1/2).
double internal_energy(const GaussianMoments& mom, double M, double k0);

// Ladder-operator contractions of the truncated matrix: first and third
// moments must vanish (parity blocks), and the reconstructed second moments
// must reproduce the inputs. Throws consistency_error naming the offending
// moment; the returned report carries the raw numbers.
struct FirstMomentReport {
    double q_mean = 0.0;
    double p_mean = 0.0;
    double q3 = 0.0;
    double p3 = 0.0;
    double q2_rebuilt = 0.0;
    double p2_rebuilt = 0.0;
    bool ok = false;
};
FirstMomentReport first_moment_checks(const ReducedDensityMatrix& rho,
                                      const GaussianMoments& mom, double M, double omega0,
                                      double hbar);

}  // namespace qbo
