#include "qbo/oracles.hpp"

#include <cmath>

#include <doctest.h>

#include "qbo/drude.hpp"
#include "qbo/errors.hpp"
#include "qbo/special_functions.hpp"
#include "test_helpers.hpp"

using namespace qbo;
using namespace qbo::testing;

TEST_CASE("matsubara oracle self-validates on the uncoupled limit") {
    for (double beta : {0.3, 1.0, 5.0, 20.0}) {
        const ModelParams p(1.0, 1.0, 1.0, 0.0, beta);
        const GaussianMoments m = oracles::matsubara_moments(p);
        const GaussianMoments u = uncoupled_moments(p.M, p.omega0(), beta, p.hbar);
        CHECK(rel_err(m.q2, u.q2) < 1e-9);
        CHECK(rel_err(m.p2, u.p2) < 1e-9);
    }
}

TEST_CASE("matsubara oracle agrees with the closed forms at caption points") {
    const ModelParams p = caption_params(4.0, 1.0);
    const GaussianMoments m = oracles::matsubara_moments(p);
    const GaussianMoments c = moments(p);
    CHECK(rel_err(m.q2, c.q2) < 1e-8);
    CHECK(rel_err(m.p2, c.p2) < 1e-8);
}

TEST_CASE("matsubara oracle reports unreachable tolerance") {
    const ModelParams p = caption_params(10.0, 0.05);
    CHECK_THROWS_AS(oracles::matsubara_moments(p, 1000, 0, 1e-10), convergence_error);
    CHECK_THROWS_AS(oracles::matsubara_moments(p, 500), domain_error);
}

TEST_CASE("susceptibility matches the rate factorization") {
    // coefficient identity: (s+Omega)(s+z1)(s+z2) = s^3 + omega_d s^2
    //                        + (omega0^2 + gamma_o omega_d) s + omega0^2 omega_d
    for (double gamma : {0.5, 1.5, 4.0, 10.0}) {
        const ModelParams p = caption_params(gamma, 1.0);
        const DrudeDecomposition d = decompose(p);
        const complex e2 = d.pole[0] + d.pole[1] + d.pole[2];
        const complex e1 = d.pole[0] * d.pole[1] + d.pole[0] * d.pole[2] + d.pole[1] * d.pole[2];
        const complex e0 = d.pole[0] * d.pole[1] * d.pole[2];
        CHECK(std::abs(e2 - p.omega_d()) < 1e-12 * p.omega_d());
        CHECK(std::abs(e1 - (p.omega0_sq() + p.gamma_o() * p.omega_d())) < 1e-12 * std::abs(e1));
        CHECK(std::abs(e0 - p.omega0_sq() * p.omega_d()) < 1e-12 * std::abs(e0));
        // dissipative part is positive on the physical half-line
        for (double w : {0.1, 1.0, 7.3}) CHECK(oracles::susceptibility(p, w).imag() > 0.0);
    }
}

TEST_CASE("fdt quadrature reproduces the uncoupled limit as a narrow resonance") {
    const ModelParams p(1.0, 1.0, 1.0, 1e-6, 1.0);
    const GaussianMoments m = oracles::fdt_quadrature_moments(p);
    const GaussianMoments u = uncoupled_moments(1.0, 1.0, 1.0, 1.0);
    CHECK(rel_err(m.q2, u.q2) < 1e-3);
    CHECK(rel_err(m.p2, u.p2) < 1e-3);
}

TEST_CASE("fdt quadrature agrees with the closed forms") {
    const ModelParams p = caption_params(10.0, 0.5);
    const GaussianMoments m = oracles::fdt_quadrature_moments(p);
    const GaussianMoments c = moments(p);
    CHECK(rel_err(m.q2, c.q2) < 1e-6);
    CHECK(rel_err(m.p2, c.p2) < 1e-6);
}

TEST_CASE("fdt quadrature flags an insufficient hard cutoff") {
    const ModelParams p = caption_params(10.0, 0.5);
    CHECK_THROWS_AS(oracles::fdt_quadrature_moments(p, 3.0 * p.omega_d(), 1e-9),
                    convergence_error);
    // doubling the cutoff moves the result; the tail really is there
    const double lo = 20.0 * p.omega_d(), hi = 40.0 * p.omega_d();
    const double p2_lo = oracles::fdt_quadrature_moments(p, lo, 1e-2).p2;
    const double p2_hi = oracles::fdt_quadrature_moments(p, hi, 1e-2).p2;
    const double p2_ref = moments(p).p2;
    CHECK(std::abs(p2_hi - p2_ref) < std::abs(p2_lo - p2_ref));
}

TEST_CASE("matsubara and fdt quadrature agree with each other") {
    // two independent routes to the same moments
    for (double gamma : {0.5, 4.0}) {
        for (double T : {0.05, 1.0}) {
            const ModelParams p = caption_params(gamma, T);
            const GaussianMoments a = oracles::matsubara_moments(p);
            const GaussianMoments b = oracles::fdt_quadrature_moments(p);
            CHECK(rel_err(a.q2, b.q2) < 1e-6);
            CHECK(rel_err(a.p2, b.p2) < 1e-6);
        }
    }
}

TEST_CASE("star bath rejects a broken counter-term balance") {
    const ModelParams p = caption_params(4.0, 1.0);
    oracles::StarBath bath = oracles::discretize_drude_bath(p, 150, 0.0);
    bath.counter_term = -0.75 * p.k0();  // drives the lowest mode negative
    CHECK_THROWS_AS(oracles::star_normal_modes(p, bath), numeric_error);
}

TEST_CASE("star bath with vanishing coupling is exactly uncoupled") {
    const ModelParams p(1.0, 1.0, 1.0, 0.0, 1.0);
    const GaussianMoments m = oracles::star_bath_moments(p, 200);
    const GaussianMoments u = uncoupled_moments(1.0, p.omega0(), 1.0, 1.0);
    CHECK(rel_err(m.q2, u.q2) < 1e-12);
    CHECK(rel_err(m.p2, u.p2) < 1e-12);
}

TEST_CASE("star bath converges to the closed forms") {
    const ModelParams p = caption_params(1.5, 1.0);
    const GaussianMoments c = moments(p);
    const GaussianMoments m = oracles::star_bath_moments(p, 4000);
    CHECK(rel_err(m.q2, c.q2) < 1e-2);
    CHECK(rel_err(m.p2, c.p2) < 1e-2);

    double prev = 1e300;
    for (int N : {100, 400, 1600}) {
        const GaussianMoments s = oracles::star_bath_moments(p, N);
        const double err = rel_err(s.q2, c.q2) + rel_err(s.p2, c.p2);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("star bath counter-term keeps the quadratic form positive") {
    const ModelParams p = caption_params(10.0, 0.05);
    const oracles::StarBath bath = oracles::discretize_drude_bath(p, 500, 0.0);
    const oracles::NormalModes modes = oracles::star_normal_modes(p, bath);
    CHECK(modes.frequency.size() == 501);
    for (double f : modes.frequency) CHECK(f > 0.0);
    double wsum = 0.0;
    for (double w : modes.system_weight) wsum += w;
    CHECK(rel_err(wsum, 1.0) < 1e-10);  // completeness of the q-projection
}

TEST_CASE("density-matrix quadrature oracle basics") {
    const GaussianMoments u = uncoupled_moments(1.0, 1.0, 1.0, 1.0);
    CHECK(std::abs(oracles::rho_element_quadrature(0, 1, u, 1, 1, 1)) < 1e-14);
    const double p0 = oracles::rho_element_quadrature(0, 0, u, 1, 1, 1);
    CHECK(rel_err(p0, 1.0 - std::exp(-1.0)) < 1e-12);
    CHECK(rel_err(p0, 0.632121) < 1e-6);
    CHECK_THROWS_AS(oracles::rho_element_quadrature(41, 0, u, 1, 1, 1), domain_error);
}

TEST_CASE("finite difference driver") {
    const auto square = [](double x) { return x * x; };
    CHECK(rel_err(oracles::finite_difference(square, 3.0, {1e-3, 0}).value, 6.0) < 1e-9);
    const auto quintic = [](double x) { return std::pow(x, 5); };
    CHECK(rel_err(oracles::finite_difference(quintic, 1.3, {0.05, 3}).value,
                  5.0 * std::pow(1.3, 4)) < 1e-10);
    CHECK_THROWS_AS(oracles::finite_difference(square, 1.0, {0.0, 1}), domain_error);
}

TEST_CASE("eigencheck residual") {
    // canonical basis diagonalizes the uncoupled state for any n
    const GaussianMoments u = uncoupled_moments(1.0, 1.0, 1.0, 1.0);
    for (int n : {0, 1, 4}) CHECK(oracles::eigencheck_quadrature(n, u, 1.0) < 1e-9);

    const ModelParams p = caption_params(10.0, 0.5);
    const GaussianMoments m = moments(p);
    for (int n = 0; n <= 5; ++n) CHECK(oracles::eigencheck_quadrature(n, m, p.hbar) < 1e-8);

    // a 1% perturbation of the ansatz scale must be detected
    const double ct = std::pow(m.p2 / (m.q2), 0.25);
    CHECK(oracles::eigencheck_quadrature(0, m, p.hbar, 1.01 * ct) > 1e-4);
}
