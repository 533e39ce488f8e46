#pragma once

#include <functional>
#include <vector>

namespace qbo {

struct quad_result {
    double value = 0;
    double error = 0;  // estimated absolute error
    int panels = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) over [a, b]. `breakpoints` become mandatory
// initial panel boundaries (values outside (a, b) are ignored); the nodes
// themselves are strictly interior, so an integrand may be non-evaluable at a
// boundary point. Throws convergence_error if the panel budget runs out
// before |error| <= max(abs_tol, rel_tol * |value|).
quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      double abs_tol = 0.0, double rel_tol = 1e-10,
                      const std::vector<double>& breakpoints = {},
                      int max_panels = 4000);

// Integral over [a, infinity) via the u = 1/x substitution on the tail,
// for integrands decaying at least like 1/x^2.
quad_result integrate_to_infinity(const std::function<double(double)>& f, double a,
                                  double split, double abs_tol = 0.0,
                                  double rel_tol = 1e-10,
                                  const std::vector<double>& breakpoints = {});

// Gauss-Hermite rule: integrates f against exp(-x^2) on the real line exactly
// for polynomial f of degree <= 2n - 1. Nodes ascending.
struct hermite_rule {
    std::vector<double> x;
    std::vector<double> w;
};
hermite_rule gauss_hermite(int n);

}  // namespace qbo
