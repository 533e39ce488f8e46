#include "qbo/audit.hpp"

#include "qbo/density_matrix.hpp"

#include <cmath>

#include <doctest.h>

#include "qbo/drude.hpp"
#include "qbo/effective.hpp"
#include "qbo/errors.hpp"
#include "qbo/oracles.hpp"
#include "qbo/special_functions.hpp"
#include "test_helpers.hpp"

using namespace qbo;
using namespace qbo::testing;

TEST_CASE("weak-coupling equalities") {
    const WeakCouplingReport rep = weak_coupling_equalities(1.0, 1.0, 1.0, 1.0, 1.0);
    const double cs = csch(0.5);
    CHECK(rel_err(rep.dQ_dM, cs * cs / 8.0) < 1e-14);
    CHECK(rel_err(rep.dQ_dM, 0.460337) < 1e-6);
    CHECK(rel_err(rep.dQ_dk0, -cs * cs / 8.0) < 1e-14);
    CHECK(rel_err(rep.dQ_dk0, -0.460337) < 1e-6);
    CHECK(rep.residual_M < 1e-10);
    CHECK(rep.residual_k0 < 1e-10);
    const GaussianMoments u = uncoupled_moments(1.0, 1.0, 1.0, 1.0);
    CHECK(rel_err(rep.dW_dM, -u.p2 / 2.0) < 1e-14);
    CHECK(rel_err(rep.dW_dk0, u.q2 / 2.0) < 1e-14);

    // both routes across a small parameter sweep
    for (int i = 0; i < 30; ++i) {
        const WeakCouplingReport r =
            weak_coupling_equalities(uniform(0.3, 3.0), uniform(0.3, 3.0), uniform(0.1, 8.0),
                                     1.0, 1.0);
        CHECK(r.residual_M < 1e-10);
        CHECK(r.residual_k0 < 1e-10);
    }
}

TEST_CASE("damping variation: naive violation, effective equality") {
    // low temperature, weak coupling: the T-based gap is strictly positive
    const VariationReport rep = gamma_variation(caption_params(0.5, 1.0 / 50.0));
    CHECK(rep.dQ_s - rep.T_dS > 0.0);
    CHECK(rep.naive_violated);
    CHECK(std::abs(rep.effective_equality_residual) < 1e-9);
    CHECK(rep.dW_s == 0.0);

    for (double gamma : {0.5, 1.5, 4.0, 10.0}) {
        for (double T : {0.05, 0.5, 1.0, 2.0}) {
            const ModelParams p = caption_params(gamma, T);
            const VariationReport r = gamma_variation(p);
            CHECK(std::abs(r.effective_equality_residual) < 1e-9);
            // first law
            CHECK(std::abs(r.dQ_s + r.dW_s - (r.dQ_eff_star + r.dW_eff_star)) <
                  1e-9 * (std::abs(r.dU_s) + std::abs(r.dQ_s)));

            // closed form of the effective work from the starred parameters
            const GaussianMoments m = moments(p);
            const MomentDerivatives d = dmoments_dgamma(p);
            const double k0 = p.k0();
            const double want =
                (1.0 - p.M * k0 * m.q2 / m.p2) * d.dp2 / (4.0 * p.M) +
                0.25 * k0 * (1.0 - m.p2 / (p.M * k0 * m.q2)) * d.dq2;
            CHECK(rel_err(r.dW_eff_star, want) < 1e-10);
        }
    }
}

TEST_CASE("mass and spring variations") {
    const VariationReport rm = local_variation(caption_params(10.0, 1.0), Variation::mass);
    CHECK(rm.dQ_s - rm.Teff_dS >= 0.0);
    CHECK(rm.dQ_s - rm.T_dS > 0.0);
    CHECK(rm.naive_violated);
    // Y reconstruction: naive gap equals its decomposition
    const double y_alt = (rm.T_eff_star - rm.T) * rm.dS + (rm.dW_eff_star - rm.dW_s);
    CHECK(rel_err(rm.Y, y_alt) < 1e-9);
    CHECK(rel_err(rm.Y, rm.dQ_s - rm.T_dS) < 1e-12);

    for (double gamma : {0.5, 1.5, 4.0, 10.0}) {
        for (double T : {0.05, 0.5, 1.0, 2.0}) {
            const ModelParams p = caption_params(gamma, T);
            for (Variation which : {Variation::mass, Variation::spring}) {
                const VariationReport r = local_variation(p, which);
                CHECK(std::abs(r.effective_equality_residual) < 1e-9);
                CHECK(std::abs(r.dQ_s + r.dW_s - (r.dQ_eff_star + r.dW_eff_star)) <
                      1e-9 * (std::abs(r.dU_s) + std::abs(r.dQ_s) + std::abs(r.dW_s)));
                CHECK(r.dW_eff_star - r.dW_s >= -1e-12 * std::abs(r.dW_s));
            }
        }
    }
    CHECK_THROWS_AS(local_variation(caption_params(4.0, 1.0), Variation::damping), domain_error);
}

TEST_CASE("entropy derivative matches finite differences") {
    const ModelParams p = caption_params(4.0, 1.0);
    for (Variation which : {Variation::damping, Variation::mass, Variation::spring}) {
        const double x0 = variation_value(p, which);
        const auto f = [&](double x) {
            return entropy_von_neumann(moments(vary(p, which, x)).v, p.kB);
        };
        const double fd = oracles::finite_difference(f, x0, {1e-5 * x0, 2}).value;
        CHECK(rel_err(entropy_derivative(p, which), fd) < 1e-6);
    }

    // uncoupled limit against the analytic mass derivative of S_N
    const ModelParams u(1.0, 1.0, 1.0, 1e-7, 1.3);
    const double x = 0.5 * u.beta;  // beta hbar omega0 / 2 at omega0 = 1
    const double cs = csch(x);
    const double dv_dM = x * cs * cs / 4.0;  // d(coth(x)/2)/dM via dx/dM = -x/(2M)
    const double v = 0.5 * coth(x);
    const double want = dv_dM * std::log((v + 0.5) / (v - 0.5));
    CHECK(rel_err(entropy_derivative(u, Variation::mass), want) < 1e-5);

    // pure-state divergence is flagged, not evaluated
    const ModelParams frozen(1.0, 1.0, 1.0, 0.0, 1e9);
    CHECK_THROWS_AS(entropy_derivative(frozen, Variation::mass), domain_error);
}

TEST_CASE("cyclic integral closes the entropy difference") {
    // overdamped endpoint: the path crosses the critical band at gamma = 2
    const CyclicIntegral a = cyclic_integral(caption_params(10.0, 1.0), 10.0);
    CHECK(a.residual < 1e-8);
    // underdamped branch at low temperature
    const CyclicIntegral b = cyclic_integral(caption_params(0.5, 0.1), 0.5);
    CHECK(b.residual < 1e-8);
    // empty path
    const CyclicIntegral c = cyclic_integral(caption_params(0.5, 1.0), 1e-6);
    CHECK(std::abs(c.lhs) < 1e-6);
    CHECK_THROWS_AS(cyclic_integral(caption_params(0.5, 1.0), 2.0), critical_damping_error);
}

TEST_CASE("caption-grid sign structure") {
    // naive gap under damping variation is positive at beta >= 10
    for (double gamma : {0.5, 1.5, 4.0, 10.0}) {
        for (double beta : {10.0, 50.0}) {
            const VariationReport r = gamma_variation(caption_params(gamma, 1.0 / beta));
            CHECK(r.dQ_s - r.T_dS > 0.0);
        }
        // effective work release is never positive under coupling growth
        for (double T : {0.02, 0.1, 0.5, 1.0, 2.0, 3.0}) {
            CHECK(gamma_variation(caption_params(gamma, T)).dW_eff_star <= 0.0);
        }
    }
}

TEST_CASE("full stack at a point with non-unit constants") {
    // hbar, kB, masses and frequencies all different from 1: any dropped
    // unit factor shows up as a cross-module mismatch here
    const ModelParams p(1.7, 0.8, 2.3, 1.1, 0.9, 0.7, 1.9);
    const GaussianMoments m = moments(p);
    const GaussianMoments ms = oracles::matsubara_moments(p);
    CHECK(rel_err(m.q2, ms.q2) < 1e-8);
    CHECK(rel_err(m.p2, ms.p2) < 1e-8);
    const GaussianMoments fd = oracles::fdt_quadrature_moments(p);
    CHECK(rel_err(m.q2, fd.q2) < 1e-6);
    CHECK(rel_err(m.p2, fd.p2) < 1e-6);
    const GaussianMoments sb = oracles::star_bath_moments(p, 1000);
    CHECK(rel_err(m.q2, sb.q2) < 1e-3);
    CHECK(rel_err(m.p2, sb.p2) < 1e-3);

    const EffectiveOscillator eff = effective_star(m, p.M, p.k0(), p.beta, p.hbar, p.kB);
    CHECK(rel_err(eff.U_eff_star, m.p2 / (2 * p.M) + 0.5 * p.k0() * m.q2) < 1e-14);
    CHECK(rel_err(entropy_effective(eff.xi, p.kB), eff.S) < 1e-12);
    CHECK(rel_err(eff.F_eff_star, -p.kB * eff.T_eff_star * std::log(eff.Z_eff)) < 1e-12);
    const double x = -std::log(eff.xi);
    CHECK(rel_err(p.hbar / (2 * eff.M_eff_star * eff.omega_eff_star) * coth(0.5 * x), m.q2) <
          1e-12);

    for (Variation which : {Variation::damping, Variation::mass, Variation::spring}) {
        const VariationReport r = variation_report(p, which);
        CHECK(std::abs(r.effective_equality_residual) < 1e-9);
        const double x0 = variation_value(p, which);
        const auto f = [&](double v) {
            return entropy_von_neumann(moments(vary(p, which, v)).v, p.kB);
        };
        const double dS_fd = oracles::finite_difference(f, x0, {1e-5 * x0, 2}).value;
        CHECK(rel_err(r.dS, dS_fd) < 1e-6);
    }

    // density-matrix routes and the quadrature at this unit system
    const DimensionlessSet ds = dimensionless_quantities(m, p.M, p.omega0(), p.hbar);
    for (int n : {0, 1, 2, 5}) {
        for (int mm : {0, 2, 3, 6}) {
            if ((n + mm) % 2) continue;
            const double a = matrix_element(n, mm, ds, m);
            const double b = matrix_element_hyp2f1(n, mm, ds, m);
            CHECK(std::abs(a - b) <= 1e-10 * std::max({std::abs(a), std::abs(b), 1e-280}));
            const double quad =
                oracles::rho_element_quadrature(n, mm, m, p.M, p.omega0(), p.hbar);
            CHECK(std::abs(a - quad) <= std::max(1e-8 * std::abs(quad), 3e-15));
        }
    }
    for (int n = 0; n <= 3; ++n) {
        CHECK(oracles::eigencheck_quadrature(n, m, p.hbar) < 1e-8);
    }
    const CyclicIntegral cyc = cyclic_integral(p, 3.5);
    CHECK(cyc.residual < 1e-8);
}
