#include "qbo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qbo/errors.hpp"

namespace qbo {

namespace {

// QUADPACK G7/K15 pair on [-1, 1]; positive half of the symmetric rule.
constexpr double kNodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr double kWeights[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
// Gauss weights attach to kNodes[0], [2], [4], [6].
constexpr double kGaussWeights[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct panel {
    double a, b, value, err;
    bool operator<(const panel& o) const {
        if (err != o.err) return err > o.err;  // largest error first
        return a < o.a;
    }
};

panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fs;
        if (i == 0) {
            fs = f(mid);
        } else {
            const double dx = half * kNodes[i];
            fs = f(mid - dx) + f(mid + dx);
        }
        kronrod += kWeights[i] * fs;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * fs;
    }
    kronrod *= half;
    gauss *= half;
    const double diff = std::abs(kronrod - gauss);
    // QUADPACK-style sharpened estimate
    const double err = diff > 0 ? diff * std::min(1.0, std::pow(200.0 * diff, 1.5) / diff) : 0.0;
    return {a, b, kronrod, std::max(err, std::abs(kronrod) * 1e-16)};
}

}  // namespace

quad_result integrate(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, double rel_tol,
                      const std::vector<double>& breakpoints, int max_panels) {
    if (!(b > a)) return {0.0, 0.0, 0};
    std::vector<double> edges{a, b};
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    std::sort(edges.begin(), edges.end());

    std::multiset<panel> panels;
    double total = 0.0, total_err = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const panel p = evaluate_panel(f, edges[i], edges[i + 1]);
        total += p.value;
        total_err += p.err;
        panels.insert(p);
    }

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (static_cast<int>(panels.size()) >= max_panels) {
            throw convergence_error("integrate: panel budget exhausted, error " +
                                    std::to_string(total_err));
        }
        const panel worst = *panels.begin();
        panels.erase(panels.begin());
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw convergence_error("integrate: interval collapsed before tolerance was met");
        }
        const panel left = evaluate_panel(f, worst.a, mid);
        const panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        panels.insert(left);
        panels.insert(right);
    }
    return {total, total_err, static_cast<int>(panels.size())};
}

quad_result integrate_to_infinity(const std::function<double(double)>& f, double a,
                                  double split, double abs_tol, double rel_tol,
                                  const std::vector<double>& breakpoints) {
    split = std::max(split, a + 1.0);
    const quad_result head = integrate(f, a, split, abs_tol / 2, rel_tol / 2, breakpoints);
    // tail: int_split^inf f = int_0^{1/split} f(1/u)/u^2 du
    const auto tail_f = [&f](double u) { return f(1.0 / u) / (u * u); };
    const quad_result tail =
        integrate(tail_f, 0.0, 1.0 / split,
                  std::max(abs_tol / 2, std::abs(head.value) * rel_tol / 2), rel_tol / 2);
    return {head.value + tail.value, head.error + tail.error, head.panels + tail.panels};
}

hermite_rule gauss_hermite(int n) {
    if (n < 1) throw domain_error("gauss_hermite: need at least one node");
    hermite_rule rule;
    rule.x.assign(n, 0.0);
    rule.w.assign(n, 0.0);
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // initial guesses for roots in descending order (largest first)
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(n, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.x[n - 1];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.x[n - 2];
        } else {
            z = 2.0 * z - rule.x[n - i + 1];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            // orthonormal Hermite recurrence
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.x[n - 1 - i] = z;
        rule.x[i] = -z;
        rule.w[n - 1 - i] = 2.0 / (pp * pp);
        rule.w[i] = rule.w[n - 1 - i];
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

}  // namespace qbo
