#include "qbo/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbo/errors.hpp"
#include "qbo/special_functions.hpp"

namespace qbo {

namespace {
constexpr double pi = std::numbers::pi;
}

DimensionlessSet dimensionless_quantities(const GaussianMoments& mom, double M,
                                          double omega0, double hbar) {
    if (!(mom.q2 > 0.0) || !(mom.p2 > 0.0)) {
        throw domain_error("dimensionless_quantities: moments must be positive");
    }
    const double Q = mom.q2, P = mom.p2;
    DimensionlessSet ds;
    ds.hbar = hbar;
    ds.v = std::sqrt(Q * P) / hbar;
    if (ds.v < 0.5 - 1e-12) {
        throw uncertainty_error("dimensionless_quantities: uncertainty product below hbar/2");
    }
    ds.c = std::sqrt(M * omega0 / hbar);
    ds.c_tilde = std::pow(P / (hbar * hbar * Q), 0.25);
    const double c2 = ds.c * ds.c;
    const double c4 = c2 * c2;
    ds.A = (c2 + 2.0 * P / (hbar * hbar)) * (c2 + 1.0 / (2.0 * Q)) / (4.0 * c4);
    if (!(ds.A > 0.0)) {
        throw domain_error("dimensionless_quantities: degenerate normalization A <= 0");
    }
    ds.Upsilon = (P / (hbar * hbar * Q) - c4) / (4.0 * c4 * ds.A);
    ds.Lambda = (P / (hbar * hbar) - 1.0 / (4.0 * Q)) / (2.0 * c2 * ds.A);
    if (ds.Lambda < -1e-12 || ds.Lambda >= 1.0) {
        throw domain_error("dimensionless_quantities: Lambda outside [0, 1)");
    }
    ds.Lambda = std::max(ds.Lambda, 0.0);
    if (ds.Lambda < 1e-300) {
        ds.pure = true;
        if (std::abs(ds.Upsilon) > 1e-10) {
            throw domain_error(
                "dimensionless_quantities: pure state with basis mismatch is outside the model");
        }
        ds.Delta = 0.0;  // limit value at the Lambda = 0 boundary
    } else {
        const double r = ds.Upsilon / ds.Lambda;
        ds.Delta = r * r;
    }
    return ds;
}

double position_kernel(double q, double qp, const GaussianMoments& mom, double hbar) {
    if (!std::isfinite(q) || !std::isfinite(qp)) {
        throw domain_error("position_kernel: non-finite position");
    }
    const double s = q + qp, d = q - qp;
    return std::exp(-s * s / (8.0 * mom.q2) - mom.p2 * d * d / (2.0 * hbar * hbar)) /
           std::sqrt(2.0 * pi * mom.q2);
}

namespace {

// Ground-state overlap branch: rho = |0_state><0_state| expressed in the
// basis of scale c. <2k|0_state> from the closed Gaussian-Hermite integral.
double pure_overlap(int n, const DimensionlessSet& ds) {
    if (n % 2 == 1) return 0.0;
    const int k = n / 2;
    const double c = ds.c, ct = ds.c_tilde;
    const double abar = 0.5 * (c * c + ct * ct);
    const double t = (c * c - abar) / abar;  // = (c^2 - ct^2)/(c^2 + ct^2)
    if (k > 0 && t == 0.0) return 0.0;  // matched scales: pure ground state itself
    const double log_norm = 0.5 * (std::log(c) - n * std::log(2.0) - std::lgamma(n + 1.0) -
                                   0.5 * std::log(pi));
    const double log_mag = log_norm + 0.25 * std::log(ct * ct / pi) +
                           0.5 * (std::log(pi) - std::log(abar)) +
                           (k > 0 ? k * std::log(std::abs(t)) : 0.0) +
                           std::lgamma(2.0 * k + 1.0) - std::lgamma(k + 1.0);
    const double sign = (t < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    return sign * std::exp(log_mag);
}

// log of the Gamma-ratio prefactor of the united closed form.
double log_gamma_ratio(int n, int m) {
    const int kn = (n + 1) / 2, km = (m + 1) / 2;
    return 0.5 * (std::lgamma(kn + 0.5) - std::lgamma(km + 0.5) +
                  std::lgamma(n / 2 + 1.0) - std::lgamma(m / 2 + 1.0)) +
           std::lgamma(m + 1.0) - std::lgamma(0.5 * (n + m) + 1.0);
}

}  // namespace

double matrix_element(int n, int m, const DimensionlessSet& ds, const GaussianMoments&) {
    if (n < 0 || m < 0) throw domain_error("matrix_element: negative index");
    if ((n + m) % 2 == 1) return 0.0;
    if (n < m) std::swap(n, m);
    if (ds.pure) return pure_overlap(n, ds) * pure_overlap(m, ds);

    const int a = (n - m) / 2;
    if (a > 0 && ds.Upsilon == 0.0) return 0.0;
    const double delta = 1.0 - ds.Delta;
    const scaled_value poly = jacobi_equal_scaled(m, a, delta);
    if (poly.sign == 0) return 0.0;

    const double v = ds.v;
    const double log_mag = (a > 0 ? a * std::log(std::abs(ds.Upsilon)) : 0.0) +
                           (m + 0.5) * std::log(ds.Lambda) + log_gamma_ratio(n, m) -
                           0.5 * std::log((v - 0.5) * (v + 0.5)) + poly.log_abs;
    if (log_mag > 700.0) {
        throw overflow_error("matrix_element: value beyond the double-precision horizon");
    }
    const int upsilon_sign = ds.Upsilon > 0.0 ? -1 : 1;  // sign of (-Upsilon)
    const double sign = ((a % 2 == 1 && upsilon_sign < 0) ? -1.0 : 1.0) * poly.sign;
    return sign * std::exp(log_mag);
}

double matrix_element_hyp2f1(int n, int m, const DimensionlessSet& ds,
                             const GaussianMoments& mom) {
    if (n < 0 || m < 0) throw domain_error("matrix_element_hyp2f1: negative index");
    if ((n + m) % 2 == 1) return 0.0;
    if (ds.pure) return pure_overlap(n, ds) * pure_overlap(m, ds);

    const bool odd = n % 2 == 1;
    const int k = n / 2, l = m / 2;
    const double chalf = odd ? 1.5 : 0.5;
    const double Q = mom.q2;

    double log_pre = -std::log(ds.c) - 0.5 * std::log(2.0 * pi * Q * ds.A) +
                     0.5 * (std::lgamma(k + chalf) - std::lgamma(k + 1.0) +
                            std::lgamma(l + chalf) - std::lgamma(l + 1.0));
    if (odd) log_pre += std::log(2.0) + std::log(ds.Lambda);

    if (ds.Upsilon == 0.0) {
        // off-diagonal weight vanishes; diagonal reduces to the j = k term
        if (k != l) return 0.0;
        double log_term = log_pre + 2.0 * k * std::log(ds.Lambda);
        double fac = 1.0;  // (-k)_k (-k)_k / ((c)_k k!) of the surviving term
        for (int j = 0; j < k; ++j) fac *= (k - j) * (k - j) / ((chalf + j) * (j + 1.0));
        return std::exp(log_term) * fac;
    }

    const double lu = std::log(std::abs(ds.Upsilon));
    const double z = (ds.Lambda / ds.Upsilon) * (ds.Lambda / ds.Upsilon);  // 1/Delta
    const double lz = std::log(z);

    // log-magnitude terms of the terminating series; every term is positive
    const int jmax = std::min(k, l);
    std::vector<double> logs(jmax + 1);
    double running = 0.0, lmax = -1e308;
    for (int j = 0; j <= jmax; ++j) {
        logs[j] = log_pre + (k + l) * lu + running + j * lz;
        lmax = std::max(lmax, logs[j]);
        if (j < jmax) {
            running += std::log((k - j) * static_cast<double>(l - j) /
                                ((chalf + j) * (j + 1.0)));
        }
    }
    long double sum = 0.0L;
    for (double lg : logs) sum += std::exp(static_cast<long double>(lg - lmax));
    const int upsilon_sign = ds.Upsilon > 0.0 ? -1 : 1;  // sign of (-Upsilon)
    const double sign = ((k + l) % 2 == 1 && upsilon_sign < 0) ? -1.0 : 1.0;
    return sign * std::exp(lmax) * static_cast<double>(sum);
}

double occupation(int n, const DimensionlessSet& ds, const GaussianMoments&) {
    if (n < 0) throw domain_error("occupation: negative index");
    if (ds.pure) {
        const double o = pure_overlap(n, ds);
        return o * o;
    }
    const double delta = 1.0 - ds.Delta;
    const scaled_value poly = legendre_scaled(n, delta);
    if (poly.sign == 0) return 0.0;
    const double v = ds.v;
    const double log_mag = (n + 0.5) * std::log(ds.Lambda) -
                           0.5 * std::log((v - 0.5) * (v + 0.5)) + poly.log_abs;
    return poly.sign * std::exp(log_mag);
}

double occupation_decay(const DimensionlessSet& ds) {
    if (ds.pure) {
        const double c2 = ds.c * ds.c, ct2 = ds.c_tilde * ds.c_tilde;
        const double t = (c2 - ct2) / (c2 + ct2);
        return t * t;
    }
    return ds.Lambda + std::abs(ds.Upsilon);
}

double occupation_tail(const DimensionlessSet& ds, const GaussianMoments& mom, int n_cut) {
    const double r = occupation_decay(ds);
    if (r <= 0.0) return 0.0;
    long double acc = 0.0L;
    for (int n = n_cut + 1; n <= n_cut + 100000; ++n) {
        const double p = occupation(n, ds, mom);
        acc += p;
        if (p < 1e-12 * (1.0 - r) * static_cast<double>(acc) && n > n_cut + 4) break;
    }
    return static_cast<double>(acc);
}

ReducedDensityMatrix build_truncated(const DimensionlessSet& ds, const GaussianMoments& mom,
                                     double tolerance) {
    if (!(tolerance > 0.0) || tolerance > 1e-3) {
        throw domain_error("build_truncated: tolerance in (0, 1e-3]");
    }
    ReducedDensityMatrix rho;
    rho.xi_diag = occupation_decay(ds);
    if (rho.xi_diag <= 0.0) {
        rho.n_cut = 0;
    } else {
        rho.n_cut = static_cast<int>(std::ceil(std::log(tolerance) / std::log(rho.xi_diag)));
        rho.n_cut = std::max(rho.n_cut, 0);
    }
    const int dim = rho.n_cut + 1;
    rho.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
    long double trace = 0.0L;
    for (int n = 0; n < dim; ++n) {
        for (int m = n; m < dim; ++m) {
            const double val = matrix_element(n, m, ds, mom);
            rho.entries[static_cast<size_t>(n) * dim + m] = val;
            rho.entries[static_cast<size_t>(m) * dim + n] = val;
        }
        const double diag = rho.entries[static_cast<size_t>(n) * dim + n];
        if (!(diag > 0.0)) {
            throw consistency_error("build_truncated: non-positive diagonal entry at n = " +
                                    std::to_string(n));
        }
        trace += diag;
    }
    rho.trace_deficit = static_cast<double>(1.0L - trace);
    return rho;
}

double internal_energy(const GaussianMoments& mom, double M, double k0) {
    return mom.p2 / (2.0 * M) + 0.5 * k0 * mom.q2;
}

FirstMomentReport first_moment_checks(const ReducedDensityMatrix& rho,
                                      const GaussianMoments& mom, double M, double omega0,
                                      double hbar) {
    const int dim = rho.dim();
    FirstMomentReport rep;
    const double lq = std::sqrt(hbar / (2.0 * M * omega0));  // ladder length scale
    const double lp = std::sqrt(0.5 * M * hbar * omega0);

    long double qm = 0.0L, pm = 0.0L;
    for (int n = 0; n < dim; ++n) {
        if (n + 1 < dim) {
            qm += std::sqrt(n + 1.0) * rho.at(n, n + 1);
            pm += std::sqrt(n + 1.0) * rho.at(n, n + 1);  // same contraction, parity-zero
        }
        if (n >= 1) {
            qm += std::sqrt(static_cast<double>(n)) * rho.at(n, n - 1);
            pm -= std::sqrt(static_cast<double>(n)) * rho.at(n, n - 1);
        }
    }
    rep.q_mean = lq * static_cast<double>(qm);
    rep.p_mean = lp * static_cast<double>(pm);

    // third moments: Tr(rho X^3) with X = a + a^dagger, and the skew partner
    const auto cube_trace = [&](int sign_a) {
        // X|n> = sqrt(n)|n-1> + sign_a sqrt(n+1)|n+1>
        std::vector<double> x(static_cast<size_t>(dim) * dim, 0.0);
        for (int n = 0; n + 1 < dim; ++n) {
            x[static_cast<size_t>(n) * dim + n + 1] = std::sqrt(n + 1.0) * sign_a;
            x[static_cast<size_t>(n + 1) * dim + n] = std::sqrt(n + 1.0);
        }
        std::vector<double> x2(static_cast<size_t>(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            for (int k = 0; k < dim; ++k) {
                const double xik = x[static_cast<size_t>(i) * dim + k];
                if (xik == 0.0) continue;
                for (int j = 0; j < dim; ++j) {
                    x2[static_cast<size_t>(i) * dim + j] += xik * x[static_cast<size_t>(k) * dim + j];
                }
            }
        }
        long double tr = 0.0L;
        for (int i = 0; i < dim; ++i) {
            for (int k = 0; k < dim; ++k) {
                const double x2ik = x2[static_cast<size_t>(i) * dim + k];
                if (x2ik == 0.0) continue;
                for (int j = 0; j < dim; ++j) {
                    tr += rho.at(j, i) * x2ik * x[static_cast<size_t>(k) * dim + j];
                }
            }
        }
        return static_cast<double>(tr);
    };
    rep.q3 = lq * lq * lq * cube_trace(+1);
    rep.p3 = lp * lp * lp * cube_trace(-1);

    long double diag = 0.0L, cross = 0.0L;
    for (int n = 0; n < dim; ++n) {
        diag += (2.0 * n + 1.0) * rho.at(n, n);
        if (n + 2 < dim) cross += std::sqrt((n + 1.0) * (n + 2.0)) * rho.at(n, n + 2);
    }
    rep.q2_rebuilt = lq * lq * static_cast<double>(diag + 2.0L * cross);
    rep.p2_rebuilt = lp * lp * static_cast<double>(diag - 2.0L * cross);

    const double first_scale = std::sqrt(hbar);
    if (std::abs(rep.q_mean) > 1e-12 * first_scale || std::abs(rep.p_mean) > 1e-12 * first_scale) {
        throw consistency_error("first_moment_checks: nonzero first moment");
    }
    if (std::abs(rep.q3) > 1e-12 * lq * lq * lq || std::abs(rep.p3) > 1e-12 * lp * lp * lp) {
        throw consistency_error("first_moment_checks: nonzero third moment");
    }
    const double tail_allowance = 8.0 * rho.trace_deficit * (2.0 * dim + 3.0);
    if (std::abs(rep.q2_rebuilt - mom.q2) > mom.q2 * (1e-8 + tail_allowance)) {
        throw consistency_error("first_moment_checks: <q^2> reconstruction mismatch");
    }
    if (std::abs(rep.p2_rebuilt - mom.p2) > mom.p2 * (1e-8 + tail_allowance)) {
        throw consistency_error("first_moment_checks: <p^2> reconstruction mismatch");
    }
    rep.ok = true;
    return rep;
}

}  // namespace qbo
