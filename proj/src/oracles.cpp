#include "qbo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbo/drude.hpp"
#include "qbo/errors.hpp"
#include "qbo/quadrature.hpp"
#include "qbo/special_functions.hpp"

namespace qbo::oracles {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta5 = 1.0369277551433699263;
constexpr double kZeta7 = 1.0083492773819228268;

}  // namespace

GaussianMoments matsubara_moments(const ModelParams& p, int n_terms, int tail_order,
                                  double rel_tol) {
    if (n_terms < 1000) throw domain_error("matsubara_moments: need n_terms >= 1000");
    if (tail_order < 0 || tail_order > 3) {
        throw domain_error("matsubara_moments: tail_order in [0, 3]");
    }
    const double w0sq = p.omega0_sq();
    const double wd = p.omega_d();
    const double go = p.gamma_o();
    const double nu1 = 2.0 * pi / (p.hbar * p.beta);  // nu_n = nu1 * n

    // a(nu) = omega0^2 + nu gammahat(nu) = a0 + a1/nu + a2/nu^2 + a3/nu^3 + ...
    const double a0 = w0sq + go * wd;
    const double a1 = -go * wd * wd;
    const double a2 = go * wd * wd * wd;
    const double a3 = -go * wd * wd * wd * wd;

    // subtracted asymptotes: u ~ 1/nu^2 - a0/nu^4 - a1/nu^5 + (a0^2-a2)/nu^6 + (2 a0 a1 - a3)/nu^7
    //                        f ~ a0/nu^2 + a1/nu^3 + (a2-a0^2)/nu^4 + (a3-2 a0 a1)/nu^5
    const double uq[4] = {-a0, -a1, a0 * a0 - a2, 2.0 * a0 * a1 - a3};
    const double fp[3] = {a1, a2 - a0 * a0, a3 - 2.0 * a0 * a1};

    // tail_order k keeps the asymptote of the p-summand through 1/nu^(2+k)
    // and of the q-summand through 1/nu^(4+k).
    const int nq = std::min(tail_order + 1, 4);
    const int np = std::min(tail_order, 3);

    long double q_sum = 0.0L, p_sum = 0.0L;
    double last_q_rem = 0.0, last_p_rem = 0.0;
    for (int n = n_terms; n >= 1; --n) {
        const double nu = nu1 * n;
        const double a = w0sq + go * wd * nu / (wd + nu);
        const double u = 1.0 / (nu * nu + a);
        const double f = a * u;
        const double inv = 1.0 / nu;
        double gq = inv * inv;
        double gp = a0 * inv * inv;
        double pw_q = inv * inv * inv * inv;  // 1/nu^4
        double pw_p = inv * inv * inv;        // 1/nu^3
        for (int k = 0; k < 4; ++k) {
            if (k < nq) gq += uq[k] * pw_q;
            pw_q *= inv;
            if (k < np) gp += fp[k] * pw_p;
            pw_p *= inv;
        }
        q_sum += static_cast<long double>(u - gq);
        p_sum += static_cast<long double>(f - gp);
        if (n == n_terms) {
            last_q_rem = std::abs(u - gq);
            last_p_rem = std::abs(f - gp);
        }
    }

    // closed tails: sum_{n>=1} nu_n^{-k} = nu1^{-k} zeta(k)
    const double z2 = pi * pi / 6.0, z4 = pi * pi * pi * pi / 90.0;
    const double z6 = std::pow(pi, 6) / 945.0;
    const double i1 = 1.0 / nu1;
    double q_tail = i1 * i1 * z2;
    double p_tail = a0 * i1 * i1 * z2;
    const double zq[4] = {z4, kZeta5, z6, kZeta7};
    const double zp[3] = {kZeta3, z4, kZeta5};
    double pw = i1 * i1 * i1 * i1;
    double pwp = i1 * i1 * i1;
    for (int k = 0; k < 4; ++k) {
        if (k < nq) q_tail += uq[k] * pw * zq[k];
        pw *= i1;
        if (k < np) p_tail += fp[k] * pwp * zp[k];
        pwp *= i1;
    }

    GaussianMoments m;
    m.q2 = (1.0 / (p.M * p.beta)) * (1.0 / w0sq + 2.0 * (static_cast<double>(q_sum) + q_tail));
    m.p2 = (p.M / p.beta) * (1.0 + 2.0 * (static_cast<double>(p_sum) + p_tail));

    // crude but safe truncation bound for a ~ C/n^k remainder: |r_N| * N
    const double q_err = last_q_rem * n_terms * 2.0 / (p.M * p.beta);
    const double p_err = last_p_rem * n_terms * 2.0 * p.M / p.beta;
    if (q_err > rel_tol * std::abs(m.q2) || p_err > rel_tol * std::abs(m.p2)) {
        throw convergence_error(
            "matsubara_moments: truncation error above tolerance; raise n_terms or tail_order");
    }
    m.v = std::sqrt(m.q2 * m.p2) / p.hbar;
    return m;
}

complex susceptibility(const ModelParams& p, double omega) {
    const double w0sq = p.omega0_sq();
    const complex s(0.0, -omega);  // Laplace variable on the imaginary axis
    const complex kernel = p.gamma_o() * p.omega_d() / (p.omega_d() + s);
    return 1.0 / (p.M * (w0sq + s * s + s * kernel));
}

namespace {

// The memory-kernel denominator must factor over the decomposition rates:
// M (s + Omega)(s + z1)(s + z2) with s = -i omega.
void validate_susceptibility(const ModelParams& p) {
    if (p.gamma == 0.0) return;
    const DrudeDecomposition d = decompose(p);
    for (double omega : {0.37 * p.w0, 1.1 * p.w0, 3.7 * p.omega_d()}) {
        const complex s(0.0, -omega);
        const complex direct = susceptibility(p, omega);
        const complex factored =
            (p.omega_d() + s) /
            (p.M * (s + d.pole[0]) * (s + d.pole[1]) * (s + d.pole[2]));
        if (std::abs(direct - factored) > 1e-10 * std::abs(factored)) {
            throw consistency_error(
                "susceptibility: kernel construction disagrees with the rate factorization");
        }
    }
}

}  // namespace

GaussianMoments fdt_quadrature_moments(const ModelParams& p, double omega_max,
                                       double rel_tol) {
    validate_susceptibility(p);
    const double wd = p.omega_d();
    const double go = p.gamma_o();
    const auto im_chi = [&p](double w) { return susceptibility(p, w).imag(); };
    const auto q_integrand = [&](double w) {
        return coth(0.5 * p.beta * p.hbar * w) * im_chi(w);
    };
    const auto p_integrand = [&](double w) { return w * w * q_integrand(w); };

    // panel seeds around the response peak (narrow for weak damping)
    const double wr = p.omega0();
    const double width = std::max(go, 1e-3 * p.w0);
    std::vector<double> bps;
    for (double b : {wr - 10 * width, wr - width, wr, wr + width, wr + 10 * width, wd,
                     5.0 * wd}) {
        if (b > 0) bps.push_back(b);
    }

    GaussianMoments m;
    if (omega_max > 0.0) {
        const quad_result q = integrate(q_integrand, 0.0, omega_max, 0.0, rel_tol, bps);
        const quad_result pp = integrate(p_integrand, 0.0, omega_max, 0.0, rel_tol, bps);
        m.q2 = (p.hbar / pi) * q.value;
        m.p2 = (p.M * p.M * p.hbar / pi) * pp.value;
        // leading discarded tails: Im chi ~ gamma_o omega_d^2 / (M omega^5)
        const double tail_q = p.hbar * go * wd * wd / (4.0 * pi * p.M * std::pow(omega_max, 4));
        const double tail_p = p.M * p.hbar * go * wd * wd / (2.0 * pi * omega_max * omega_max);
        if (tail_q > rel_tol * std::abs(m.q2) || tail_p > rel_tol * std::abs(m.p2)) {
            throw convergence_error(
                "fdt_quadrature_moments: omega_max too small for the requested tolerance");
        }
    } else {
        const double split = std::max({30.0 * wd, 30.0 * p.w0, 50.0 / (p.beta * p.hbar)});
        const quad_result q = integrate_to_infinity(q_integrand, 0.0, split, 0.0, rel_tol, bps);
        const quad_result pp = integrate_to_infinity(p_integrand, 0.0, split, 0.0, rel_tol, bps);
        m.q2 = (p.hbar / pi) * q.value;
        m.p2 = (p.M * p.M * p.hbar / pi) * pp.value;
    }
    if (!(m.q2 > 0.0) || !(m.p2 > 0.0)) {
        throw numeric_error("fdt_quadrature_moments: non-positive variance");
    }
    m.v = std::sqrt(m.q2 * m.p2) / p.hbar;
    return m;
}

StarBath discretize_drude_bath(const ModelParams& p, int N, double omega_cutoff) {
    if (N < 100) throw domain_error("discretize_drude_bath: need N >= 100");
    const double wd = p.omega_d();
    const double go = p.gamma_o();
    // the truncated spectral support widens slowly with N so the missing
    // infrared and ultraviolet tails stay below the per-bin sampling error;
    // the N = 250 baseline is a log grid up to 50 omega_d
    const double stretch = std::pow(N / 250.0, 1.2);
    if (omega_cutoff <= 0.0) omega_cutoff = 50.0 * wd * stretch;
    const double omega_min = 1e-4 * std::min(p.w0, wd) / stretch;
    if (omega_cutoff <= omega_min) {
        throw domain_error("discretize_drude_bath: cutoff below the grid floor");
    }

    StarBath bath;
    bath.N = N;
    bath.omega.resize(N);
    bath.coupling.resize(N);
    const double ratio = std::log(omega_cutoff / omega_min) / N;
    double edge_lo = omega_min;
    for (int j = 0; j < N; ++j) {
        const double edge_hi = omega_min * std::exp(ratio * (j + 1));
        // exact spectral mass of the bin: int J = (M gamma_o wd^2 / 2) ln[(e2^2+wd^2)/(e1^2+wd^2)]
        const double mass = 0.5 * p.M * go * wd * wd *
                            std::log1p((edge_hi * edge_hi - edge_lo * edge_lo) /
                                       (edge_lo * edge_lo + wd * wd));
        // node at the exact mass centroid: int omega J / int J. The first
        // moment is M gamma_o wd^2 [de - wd (atan(e2/wd) - atan(e1/wd))],
        // rearranged so no cancellation survives for bins far below wd:
        //   de - wd atan(u) = de e1 e2/(wd^2 + e1 e2) + wd (u - atan u),
        //   u = de wd/(wd^2 + e1 e2)
        const double de = edge_hi - edge_lo;
        const double u = de * wd / (wd * wd + edge_lo * edge_hi);
        double u_minus_atan;
        if (std::abs(u) < 1e-3) {
            const double u2 = u * u;
            u_minus_atan = u * u2 * (1.0 / 3.0 - u2 / 5.0 + u2 * u2 / 7.0);
        } else {
            u_minus_atan = u - std::atan(u);
        }
        const double first =
            p.M * go * wd * wd *
            (de * edge_lo * edge_hi / (wd * wd + edge_lo * edge_hi) + wd * u_minus_atan);
        const double w = go > 0.0 ? first / mass : std::sqrt(edge_lo * edge_hi);
        if (j > 0 && !(w > bath.omega[j - 1])) {
            throw numeric_error("discretize_drude_bath: node frequencies not ascending");
        }
        bath.omega[j] = w;
        bath.coupling[j] = std::sqrt(2.0 / pi * w * mass);  // m_j = 1
        bath.counter_term += bath.coupling[j] * bath.coupling[j] / (2.0 * w * w);
        edge_lo = edge_hi;
    }
    return bath;
}

NormalModes star_normal_modes(const ModelParams& p, const StarBath& bath) {
    // modes with zero coupling stay exact bath eigenmodes with no q-content;
    // only the coupled ones enter the secular equation
    std::vector<double> d, b2, decoupled;
    d.reserve(bath.N);
    b2.reserve(bath.N);
    for (int j = 0; j < bath.N; ++j) {
        const double dj = bath.omega[j] * bath.omega[j];
        const double b = bath.coupling[j] / std::sqrt(p.M);
        if (b * b > 0.0) {
            d.push_back(dj);
            b2.push_back(b * b);
        } else {
            decoupled.push_back(dj);
        }
    }
    const int N = static_cast<int>(d.size());
    const double d0 = (p.k0() + 2.0 * bath.counter_term) / p.M;

    const auto secular = [&](double lam) {
        double s = d0 - lam;
        for (int j = 0; j < N; ++j) s -= b2[j] / (d[j] - lam);
        return s;
    };
    // Secular value and slope at lam = a + mu, everything expressed through
    // the pole-shifted offsets (d_j - a) - mu. With the anchor a at the pole
    // the root clings to, mu keeps full relative precision where the direct
    // form would cancel.
    const auto secular_shifted = [&](double a, double mu, double& g, double& gp) {
        g = (d0 - a) - mu;
        gp = -1.0;
        for (int j = 0; j < N; ++j) {
            const double inv = 1.0 / ((d[j] - a) - mu);
            g -= b2[j] * inv;
            gp -= b2[j] * inv * inv;
        }
    };
    // strictly decreasing in mu on (mlo, mhi) with g(mlo) > 0 > g(mhi)
    const auto solve_mu = [&](double a, double mlo, double mhi) {
        double x = 0.5 * (mlo + mhi);
        for (int it = 0; it < 300; ++it) {
            double g, gp;
            secular_shifted(a, x, g, gp);
            if (g > 0) mlo = x; else mhi = x;
            double next = x - g / gp;
            if (!(next > mlo && next < mhi)) next = 0.5 * (mlo + mhi);
            const double dx = std::abs(next - x);
            x = next;
            if (dx <= 1e-15 * std::abs(x) || mhi - mlo <= 1e-15 * std::abs(x)) break;
        }
        return x;
    };

    NormalModes modes;
    modes.frequency.reserve(bath.N + 1);
    modes.system_weight.reserve(bath.N + 1);
    if (N == 0) {
        if (!(d0 > 0.0)) {
            throw numeric_error("star_normal_modes: non-positive system mode");
        }
        modes.frequency.push_back(std::sqrt(d0));
        modes.system_weight.push_back(1.0);
    } else {
        // positive definiteness of the arrowhead: det = prod(d_j) (d0 - sum b^2/d)
        double sec0 = d0;
        for (int j = 0; j < N; ++j) sec0 -= b2[j] / d[j];
        if (!(sec0 > 0.0)) {
            throw numeric_error(
                "star_normal_modes: non-positive normal mode; counter-term balance violated");
        }
        double hi_guess = std::max(d[N - 1], d0) + 1.0;
        while (secular(hi_guess) > 0) hi_guess = 2.0 * hi_guess + 1.0;
        for (int k = 0; k <= N; ++k) {
            const double lo = (k == 0) ? 0.0 : d[k - 1];
            const double hi = (k == N) ? hi_guess : d[k];
            const double mid = 0.5 * (lo + hi);
            const bool upper_half = secular(mid) > 0.0;  // root in (mid, hi)?
            // anchor the pole end on the root's side when it is a pole;
            // the outer gaps only have one pole end to anchor
            double a;
            if (k == 0) a = hi;
            else if (k == N) a = lo;
            else a = upper_half ? hi : lo;
            const double gap = hi - lo;
            double mlo, mhi;
            if (upper_half) {
                mlo = mid - a;
                mhi = (hi - a) - 1e-14 * gap;
            } else {
                mlo = (lo - a) + 1e-14 * gap;
                mhi = mid - a;
            }
            double mu;
            double glo, ghi, slope;
            secular_shifted(a, mlo, glo, slope);
            secular_shifted(a, mhi, ghi, slope);
            if (glo > 0 && ghi < 0) {
                mu = solve_mu(a, mlo, mhi);
            } else {
                // the root clings tighter than the guard band; its weight is
                // below anything the moment sums can resolve
                mu = glo <= 0 ? mlo : mhi;
            }
            const double lam = a + mu;
            if (!(lam > 0.0)) {
                throw numeric_error(
                    "star_normal_modes: non-positive normal mode; counter-term balance violated");
            }
            double wsum = 1.0;
            for (int j = 0; j < N; ++j) {
                const double r = (d[j] - a) - mu;
                wsum += b2[j] / (r * r);
            }
            modes.frequency.push_back(std::sqrt(lam));
            modes.system_weight.push_back(1.0 / wsum);
        }
    }
    for (double dj : decoupled) {
        modes.frequency.push_back(std::sqrt(dj));
        modes.system_weight.push_back(0.0);
    }
    if (!decoupled.empty()) {
        std::vector<size_t> idx(modes.frequency.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return modes.frequency[a] < modes.frequency[b];
        });
        NormalModes sorted;
        for (size_t i : idx) {
            sorted.frequency.push_back(modes.frequency[i]);
            sorted.system_weight.push_back(modes.system_weight[i]);
        }
        modes = std::move(sorted);
    }
    return modes;
}

GaussianMoments star_bath_moments(const ModelParams& p, int N, double omega_cutoff) {
    const StarBath bath = discretize_drude_bath(p, N, omega_cutoff);
    const NormalModes modes = star_normal_modes(p, bath);
    GaussianMoments m;
    long double q = 0.0L, pp = 0.0L;
    for (size_t k = 0; k < modes.frequency.size(); ++k) {
        const double w = modes.frequency[k];
        const double occ = coth(0.5 * p.beta * p.hbar * w);
        q += static_cast<long double>(modes.system_weight[k] * occ / w);
        pp += static_cast<long double>(modes.system_weight[k] * occ * w);
    }
    m.q2 = p.hbar / (2.0 * p.M) * static_cast<double>(q);
    m.p2 = 0.5 * p.M * p.hbar * static_cast<double>(pp);
    m.v = std::sqrt(m.q2 * m.p2) / p.hbar;
    return m;
}

double rho_element_quadrature(int n, int m, const GaussianMoments& mom, double M,
                              double omega0, double hbar) {
    if (n < 0 || m < 0) throw domain_error("rho_element_quadrature: negative index");
    if (n > 40 || m > 40) {
        throw domain_error("rho_element_quadrature: practical only for n, m <= 40");
    }
    const double Q = mom.q2, P = mom.p2;
    const double c = std::sqrt(M * omega0 / hbar);
    const double alpha = 1.0 / (4.0 * Q) + 0.5 * c * c;         // (q+q')/sqrt2 axis
    const double delta = P / (hbar * hbar) + 0.5 * c * c;       // (q-q')/sqrt2 axis
    // N_n N_m = c / sqrt(2^(n+m) n! m! pi)
    const double log_norm = std::log(c) -
                            0.5 * ((n + m) * std::log(2.0) + std::lgamma(n + 1.0) +
                                   std::lgamma(m + 1.0) + std::log(pi)) -
                            0.5 * std::log(2.0 * pi * Q);
    const double pref = std::exp(log_norm) / std::sqrt(alpha * delta);

    const auto run = [&](int K) {
        const hermite_rule rule = gauss_hermite(K);
        long double sum = 0.0L;
        std::vector<double> hu(K), hw(K);
        for (int i = 0; i < K; ++i) {
            hu[i] = rule.x[i] / std::sqrt(alpha);
            hw[i] = rule.x[i] / std::sqrt(delta);
        }
        for (int i = 0; i < K; ++i) {
            long double row = 0.0L;
            for (int j = 0; j < K; ++j) {
                const double q = (hu[i] + hw[j]) / std::sqrt(2.0);
                const double qp = (hu[i] - hw[j]) / std::sqrt(2.0);
                row += static_cast<long double>(rule.w[j] * hermite(m, c * qp)) *
                       hermite(n, c * q);
            }
            sum += static_cast<long double>(rule.w[i]) * row;
        }
        return pref * static_cast<double>(sum);
    };

    const int K = n + m + 8;
    const double v1 = run(K);
    const double v2 = run(K + 8);
    if (std::abs(v1 - v2) > std::max(1e-13, 1e-10 * std::abs(v2))) {
        throw convergence_error("rho_element_quadrature: rule did not stabilize");
    }
    return v2;
}

std::vector<double> rho_element_table(int n_max, const GaussianMoments& mom, double M,
                                      double omega0, double hbar) {
    if (n_max < 0 || n_max > 40) throw domain_error("rho_element_table: n_max in [0, 40]");
    const double Q = mom.q2, P = mom.p2;
    const double c = std::sqrt(M * omega0 / hbar);
    const double alpha = 1.0 / (4.0 * Q) + 0.5 * c * c;
    const double delta = P / (hbar * hbar) + 0.5 * c * c;
    const int K = 2 * n_max + 16;
    const hermite_rule rule = gauss_hermite(K);

    // H_n at every (u_i + w_j)/sqrt2 and (u_i - w_j)/sqrt2 argument
    const int dim = n_max + 1;
    std::vector<double> hplus(static_cast<size_t>(dim) * K * K);
    std::vector<double> hminus(static_cast<size_t>(dim) * K * K);
    for (int i = 0; i < K; ++i) {
        const double u = rule.x[i] / std::sqrt(alpha);
        for (int j = 0; j < K; ++j) {
            const double w = rule.x[j] / std::sqrt(delta);
            for (int sgn = 0; sgn < 2; ++sgn) {
                const double arg = c * (sgn ? u - w : u + w) / std::sqrt(2.0);
                auto* tab = sgn ? hminus.data() : hplus.data();
                double hm = 1.0, h = 2.0 * arg;
                tab[static_cast<size_t>(i) * K + j] = 1.0;
                if (n_max >= 1) tab[static_cast<size_t>(K) * K + i * K + j] = h;
                for (int nn = 2; nn <= n_max; ++nn) {
                    const double hp = 2.0 * arg * h - 2.0 * (nn - 1.0) * hm;
                    hm = h;
                    h = hp;
                    tab[static_cast<size_t>(nn) * K * K + i * K + j] = h;
                }
            }
        }
    }

    std::vector<double> out(static_cast<size_t>(dim) * dim, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        for (int m = n; m <= n_max; ++m) {
            const double log_norm =
                std::log(c) -
                0.5 * ((n + m) * std::log(2.0) + std::lgamma(n + 1.0) +
                       std::lgamma(m + 1.0) + std::log(pi)) -
                0.5 * std::log(2.0 * pi * Q);
            const double pref = std::exp(log_norm) / std::sqrt(alpha * delta);
            long double sum = 0.0L;
            for (int i = 0; i < K; ++i) {
                long double row = 0.0L;
                for (int j = 0; j < K; ++j) {
                    row += static_cast<long double>(rule.w[j]) *
                           hplus[static_cast<size_t>(n) * K * K + i * K + j] *
                           hminus[static_cast<size_t>(m) * K * K + i * K + j];
                }
                sum += static_cast<long double>(rule.w[i]) * row;
            }
            const double val = pref * static_cast<double>(sum);
            out[static_cast<size_t>(n) * dim + m] = val;
            out[static_cast<size_t>(m) * dim + n] = val;
        }
    }
    return out;
}

FdResult finite_difference(const std::function<double(double)>& f, double x, FdSpec spec) {
    if (!(spec.h > 0.0)) throw domain_error("finite_difference: step must be positive");
    if (spec.richardson < 0 || spec.richardson > 6) {
        throw domain_error("finite_difference: richardson levels in [0, 6]");
    }
    const int levels = spec.richardson;
    std::vector<double> row(levels + 1);
    for (int k = 0; k <= levels; ++k) {
        const double h = spec.h / std::pow(2.0, k);
        row[k] = (f(x + h) - f(x - h)) / (2.0 * h);
    }
    // Romberg in h^2
    for (int j = 1; j <= levels; ++j) {
        const double w = std::pow(4.0, j);
        for (int k = levels; k >= j; --k) {
            row[k] = (w * row[k] - row[k - 1]) / (w - 1.0);
        }
    }
    return {row[levels], spec.h};
}

double eigencheck_quadrature(int n, const GaussianMoments& mom, double hbar,
                             double c_tilde_override) {
    if (n < 0 || n > 20) throw domain_error("eigencheck_quadrature: n in [0, 20]");
    const double Q = mom.q2, P = mom.p2;
    const double c_tilde = c_tilde_override > 0.0
                               ? c_tilde_override
                               : std::pow(P / (hbar * hbar * Q), 0.25);
    const double v = mom.v;
    if (v < 0.5 - 1e-12) throw uncertainty_error("eigencheck_quadrature: v < 1/2");
    const double xi = std::max(0.0, (v - 0.5) / (v + 0.5));
    const double p_n = (1.0 - xi) * std::pow(xi, n);

    const double A = 1.0 / (8.0 * Q) + P / (2.0 * hbar * hbar) + 0.5 * c_tilde * c_tilde;
    const double Bcoef = P / (hbar * hbar) - 1.0 / (4.0 * Q);
    const double Ccoef = -(1.0 / (8.0 * Q) + P / (2.0 * hbar * hbar));
    const double norm = std::sqrt(c_tilde / (std::pow(2.0, n) * std::tgamma(n + 1.0) *
                                             std::sqrt(pi)));
    const hermite_rule rule = gauss_hermite(n + 12);

    const double L = (std::sqrt(2.0 * n + 1.0) + 4.0) / c_tilde;
    double residual = 0.0;
    const int grid = 41;
    for (int g = 0; g < grid; ++g) {
        const double q = -L + 2.0 * L * g / (grid - 1);
        const double B = Bcoef * q;
        const double C = Ccoef * q * q;
        long double sum = 0.0L;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double qp = (rule.x[i] + B / (2.0 * std::sqrt(A))) / std::sqrt(A);
            sum += static_cast<long double>(rule.w[i]) * hermite(n, c_tilde * qp);
        }
        const double ev = norm / std::sqrt(2.0 * pi * Q) *
                          std::exp(C + B * B / (4.0 * A)) / std::sqrt(A) *
                          static_cast<double>(sum);
        const double target =
            p_n * norm * std::exp(-0.5 * c_tilde * c_tilde * q * q) * hermite(n, c_tilde * q);
        residual = std::max(residual, std::abs(ev - target));
    }
    return residual;
}

}  // namespace qbo::oracles
