#include "qbo/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>

#include "qbo/errors.hpp"

namespace qbo {

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int dim) {
    if (dim < 1 || a.size() != static_cast<size_t>(dim) * dim) {
        throw domain_error("symmetric_eigenvalues: bad dimensions");
    }
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * dim + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, scale = 0.0;
        for (int i = 0; i < dim; ++i) {
            scale += std::abs(at(i, i));
            for (int j = i + 1; j < dim; ++j) off += at(i, j) * at(i, j);
        }
        if (off <= 1e-30 * std::max(scale * scale, 1e-300)) break;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double delta = t * apq;
                at(p, p) -= delta;
                at(q, q) += delta;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int r = 0; r < dim; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p), arq = at(r, q);
                    at(r, p) = arp - s * (arq + tau * arp);
                    at(p, r) = at(r, p);
                    at(r, q) = arq + s * (arp - tau * arq);
                    at(q, r) = at(r, q);
                }
            }
        }
    }
    std::vector<double> ev(dim);
    for (int i = 0; i < dim; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace qbo
