#include "qbo/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qbo/errors.hpp"
#include "qbo/special_functions.hpp"
#include "test_helpers.hpp"

using namespace qbo;
using namespace qbo::testing;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("adaptive integrator on known integrals") {
    const auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK(rel_err(integrate(gauss, -8.0, 8.0, 0.0, 1e-12).value, std::sqrt(pi)) < 1e-12);

    // a sharp peak found only through refinement
    const auto peak = [](double x) { return 1.0 / ((x - 0.3) * (x - 0.3) + 1e-6); };
    const double want = (std::atan(0.7 / 1e-3) + std::atan(1.3 / 1e-3)) / 1e-3;
    CHECK(rel_err(integrate(peak, -1.0, 1.0, 0.0, 1e-10).value, want) < 1e-9);

    CHECK_THROWS_AS(
        integrate([](double x) { return std::cos(1e5 * x); }, 0.0, 1.0, 0.0, 1e-14, {}, 8),
        convergence_error);
}

TEST_CASE("tail integration to infinity") {
    const auto f = [](double x) { return 1.0 / (1.0 + x * x); };
    const double got = integrate_to_infinity(f, 0.0, 10.0, 0.0, 1e-12).value;
    CHECK(rel_err(got, pi / 2.0) < 1e-11);
}

TEST_CASE("gauss-hermite rules") {
    for (int n : {1, 2, 7, 24, 61, 96}) {
        const hermite_rule rule = gauss_hermite(n);
        long double wsum = 0.0L, x2sum = 0.0L;
        for (int i = 0; i < n; ++i) {
            wsum += rule.w[i];
            x2sum += rule.w[i] * rule.x[i] * rule.x[i];
        }
        CHECK(rel_err(static_cast<double>(wsum), std::sqrt(pi)) < 1e-13);
        if (n >= 2) CHECK(rel_err(static_cast<double>(x2sum), 0.5 * std::sqrt(pi)) < 1e-12);
        // exactness on a high-degree monomial: int x^(2n-2) e^(-x^2)
        if (n >= 2 && n <= 24) {
            long double mom = 0.0L, want = std::sqrt(pi);
            for (int i = 0; i < n; ++i) mom += rule.w[i] * std::pow(rule.x[i], 2 * n - 2);
            for (int k = 1; k <= n - 1; ++k) want *= (2.0L * k - 1.0L) / 2.0L;
            CHECK(rel_err(static_cast<double>(mom), static_cast<double>(want)) < 1e-10);
        }
    }
}

TEST_CASE("gaussian-hermite closed integral") {
    // int exp(-(t-y)^2) H_n(s t) dt = sqrt(pi) (1-s^2)^(n/2) H_n(s y / sqrt(1-s^2))
    for (int n = 0; n <= 8; ++n) {
        for (int i = 0; i < 12; ++i) {
            const double s = uniform(-0.95, 0.95);
            const double y = uniform(-2.5, 2.5);
            const auto f = [&](double t) { return std::exp(-(t - y) * (t - y)) * hermite(n, s * t); };
            const double got = integrate(f, y - 10.0, y + 10.0, 1e-12, 1e-12).value;
            const double want = std::sqrt(pi) * std::pow(1.0 - s * s, 0.5 * n) *
                                hermite(n, s * y / std::sqrt(1.0 - s * s));
            CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
        }
    }
}
