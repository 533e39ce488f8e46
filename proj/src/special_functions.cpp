#include "qbo/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "qbo/errors.hpp"

namespace qbo {

namespace {

constexpr double pi = std::numbers::pi;

// Asymptotic tails hold once Re z >= kShift; the last retained Bernoulli
// term is then below 1e-17 relative.
constexpr double kShift = 10.0;

// B_2k / (2k (2k-1)), k = 1..10  (log Gamma tail)
constexpr double kLogGammaTail[] = {
    1.0 / 12.0,           -1.0 / 360.0,        1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,        -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,  43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// B_2k / (2k), k = 1..10  (digamma tail)
constexpr double kDigammaTail[] = {
    1.0 / 12.0,         -1.0 / 120.0,      1.0 / 252.0,  -1.0 / 240.0,
    1.0 / 132.0,        -691.0 / 32760.0,  1.0 / 12.0,   -3617.0 / 8160.0,
    43867.0 / 14364.0,  -174611.0 / 6600.0,
};

// B_2k, k = 1..10  (trigamma tail)
constexpr double kTrigammaTail[] = {
    1.0 / 6.0,         -1.0 / 30.0,      1.0 / 42.0,  -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0,  7.0 / 6.0,   -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0,
};

void check_pole(const complex& z, const char* who) {
    if (std::abs(z.imag()) < 1e-13 && z.real() < 0.5) {
        const double r = std::round(z.real());
        if (std::abs(z.real() - r) < 1e-13 * std::max(1.0, std::abs(z.real()))) {
            throw pole_error(std::string(who) + ": pole at non-positive integer argument");
        }
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw domain_error(std::string(who) + ": non-finite argument");
    }
}

}  // namespace

complex log_gamma(complex z) {
    check_pole(z, "log_gamma");
    complex shift = 0.0;
    while (z.real() < kShift) {
        shift -= std::log(z);
        z += 1.0;
    }
    const complex zinv = 1.0 / z;
    const complex zinv2 = zinv * zinv;
    complex tail = 0.0;
    complex p = zinv;
    for (double c : kLogGammaTail) {
        tail += c * p;
        p *= zinv2;
    }
    const complex base =
        (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi);
    return base + tail + shift;
}

complex digamma(complex z) {
    check_pole(z, "digamma");
    complex shift = 0.0;
    while (z.real() < kShift) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    const complex zinv = 1.0 / z;
    const complex zinv2 = zinv * zinv;
    complex tail = 0.0;
    complex p = zinv2;
    for (double c : kDigammaTail) {
        tail -= c * p;
        p *= zinv2;
    }
    return std::log(z) - 0.5 * zinv + tail + shift;
}

complex trigamma(complex z) {
    check_pole(z, "trigamma");
    complex shift = 0.0;
    while (z.real() < kShift) {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    const complex zinv = 1.0 / z;
    const complex zinv2 = zinv * zinv;
    complex tail = 0.0;
    complex p = zinv * zinv2;
    for (double c : kTrigammaTail) {
        tail += c * p;
        p *= zinv2;
    }
    return zinv + 0.5 * zinv2 + tail + shift;
}

double hermite(int n, double x) {
    if (n < 0) throw domain_error("hermite: negative degree");
    if (n == 0) return 1.0;
    double hm = 1.0, h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double hp = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double legendre(int n, double z) {
    if (n < 0) throw domain_error("legendre: negative degree");
    if (n == 0) return 1.0;
    double pm = 1.0, p = z;
    for (int k = 1; k < n; ++k) {
        const double pp = ((2.0 * k + 1.0) * z * p - k * pm) / (k + 1.0);
        pm = p;
        p = pp;
    }
    return p;
}

double jacobi(int n, double mu, double nu, double z) {
    if (n < 0) throw domain_error("jacobi: negative degree");
    if (mu <= -1.0 || nu <= -1.0) throw domain_error("jacobi: parameters must exceed -1");
    if (n == 0) return 1.0;
    double pm = 1.0;
    double p = 0.5 * (mu - nu) + (1.0 + 0.5 * (mu + nu)) * z;
    for (int m = 2; m <= n; ++m) {
        const double s = mu + nu;
        const double c0 = 2.0 * m * (m + s) * (2.0 * m + s - 2.0);
        const double c1 = (2.0 * m + s - 1.0) *
                          ((2.0 * m + s) * (2.0 * m + s - 2.0) * z + mu * mu - nu * nu);
        const double c2 = 2.0 * (m + mu - 1.0) * (m + nu - 1.0) * (2.0 * m + s);
        const double pp = (c1 * p - c2 * pm) / c0;
        pm = p;
        p = pp;
    }
    return p;
}

namespace {

// Shared renormalizing driver for the "scaled" recurrences, which replace
// z = delta^(-1/2) by the polynomial-in-delta form so the result stays real
// for delta <= 0.
scaled_value run_scaled(int n, double first,
                        const auto& coef /* m -> (c1, c2) with c0 folded in */,
                        double delta) {
    scaled_value out;
    if (n == 0) return out;  // log 0^... = 1
    double pm = 1.0, p = first, log_scale = 0.0;
    for (int m = 2; m <= n; ++m) {
        const auto [c1, c2] = coef(m);
        const double pp = c1 * p - c2 * delta * pm;
        pm = p;
        p = pp;
        const double mag = std::max(std::abs(p), std::abs(pm));
        if (mag > 1e250) {
            p /= 1e250;
            pm /= 1e250;
            log_scale += std::log(1e250);
        }
    }
    if (p == 0.0) {
        out.sign = 0;
        return out;
    }
    out.sign = p > 0 ? 1 : -1;
    out.log_abs = std::log(std::abs(p)) + log_scale;
    return out;
}

}  // namespace

scaled_value legendre_scaled(int n, double delta) {
    if (n < 0) throw domain_error("legendre_scaled: negative degree");
    return run_scaled(n, 1.0,
                      [](int m) {
                          const double k = m - 1.0;
                          return std::pair{(2.0 * k + 1.0) / (k + 1.0), k / (k + 1.0)};
                      },
                      delta);
}

scaled_value jacobi_equal_scaled(int m, int a, double delta) {
    if (m < 0) throw domain_error("jacobi_equal_scaled: negative degree");
    if (a < 0) throw domain_error("jacobi_equal_scaled: negative parameter");
    return run_scaled(m, 1.0 + a,
                      [a](int j) {
                          const double s = 2.0 * a;
                          const double c0 = 2.0 * j * (j + s) * (2.0 * j + s - 2.0);
                          const double c1 = (2.0 * j + s - 1.0) * (2.0 * j + s) * (2.0 * j + s - 2.0);
                          const double c2 = 2.0 * (j + a - 1.0) * (j + a - 1.0) * (2.0 * j + s);
                          return std::pair{c1 / c0, c2 / c0};
                      },
                      delta);
}

double hyp2f1_terminating(int k, int l, double c, double z) {
    if (k < 0 || l < 0) throw domain_error("hyp2f1_terminating: negative index");
    const int jmax = std::min(k, l);
    double sum = 1.0, term = 1.0;
    for (int j = 0; j < jmax; ++j) {
        term *= (j - k) * (j - l) * z / ((c + j) * (j + 1.0));
        sum += term;
    }
    return sum;
}

double coth(double x) { return 1.0 / std::tanh(x); }

double csch(double x) {
    const double ax = std::abs(x);
    if (ax > 20.0) {
        const double e = std::exp(-ax);
        const double v = 2.0 * e / (1.0 - e * e);
        return x > 0 ? v : -v;
    }
    return 1.0 / std::sinh(x);
}

}  // namespace qbo
