#include "qbo/figures.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <vector>

#include "qbo/audit.hpp"
#include "qbo/drude.hpp"
#include "qbo/effective.hpp"
#include "qbo/errors.hpp"

#include <json.hpp>

namespace qbo {

void RunConfig::validate() const {
    if (!(t_min > 0.0) || !(t_max > t_min)) {
        throw domain_error("RunConfig: need 0 < t_min < t_max");
    }
    if (n_points < 2) throw domain_error("RunConfig: need at least two grid points");
    if (!(hbar > 0.0 && kB > 0.0 && w0 > 0.0 && Omega > 0.0 && M > 0.0)) {
        throw domain_error("RunConfig: unit constants must be positive");
    }
    if (gamma_list.empty()) throw domain_error("RunConfig: empty gamma list");
    for (double g : gamma_list) {
        if (!(g > 0.0)) throw domain_error("RunConfig: gamma values must be positive");
        if (std::abs(0.5 * g - w0) <= kCriticalBand * w0) {
            throw domain_error("RunConfig: gamma inside the critical-damping band");
        }
    }
}

ModelParams RunConfig::params(double gamma, double t) const {
    // t = kB T / (hbar w0)  =>  beta = 1/(kB T) = 1/(t hbar w0)
    return ModelParams(M, w0, Omega, gamma, 1.0 / (t * hbar * w0), hbar, kB);
}

namespace {

double figure_value(int id, const ModelParams& p) {
    switch (id) {
        case 1: {
            const GaussianMoments mom = moments(p);
            const EffectiveOscillator eff =
                effective_star(mom, p.M, p.k0(), p.beta, p.hbar, p.kB);
            return p.k0() / eff.k_eff_star;
        }
        case 2: {
            const GaussianMoments mom = moments(p);
            return entropy_von_neumann(mom.v, p.kB);
        }
        case 3: {
            const VariationReport rep = gamma_variation(p);
            return 10.0 * (rep.dQ_s - rep.T_dS) / p.hbar;
        }
        case 4: {
            const VariationReport rep = gamma_variation(p);
            return 100.0 * rep.dW_eff_star / p.hbar;
        }
        case 5: {
            const VariationReport rep = local_variation(p, Variation::mass);
            return (rep.dQ_s - rep.Teff_dS) / (p.hbar * p.w0 / p.M);
        }
        case 6: {
            const VariationReport rep = local_variation(p, Variation::spring);
            return (rep.dQ_s - rep.Teff_dS) / (p.hbar / (p.M * p.w0));
        }
        case 7: {
            const VariationReport rep = local_variation(p, Variation::mass);
            return (rep.dQ_s - rep.T_dS) / (p.hbar * p.w0 / p.M);
        }
        default:
            throw domain_error("figure_data: figure id must be 1..7");
    }
}

const char* figure_label(int id) {
    switch (id) {
        case 1: return "k0/k_eff_star";
        case 2: return "S_N";
        case 3: return "10*(dQ_s/dgamma - T*dS/dgamma)/hbar";
        case 4: return "100*(dW_eff_star/dgamma)/hbar";
        case 5: return "(dQ_s/dM - T_eff_star*dS/dM)/(hbar*w0/M)";
        case 6: return "(dQ_s/dk0 - T_eff_star*dS/dk0)/(hbar/(M*w0))";
        case 7: return "(dQ_s/dM - T*dS/dM)/(hbar*w0/M)";
        default: return "";
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

FigureTable figure_data(int id, const RunConfig& config) {
    if (id < 1 || id > 7) throw domain_error("figure_data: figure id must be 1..7");
    config.validate();

    FigureTable table;
    table.figure_id = id;
    table.y_label = figure_label(id);
    table.gamma = config.gamma_list;
    table.temperature.resize(config.n_points);
    for (int i = 0; i < config.n_points; ++i) {
        table.temperature[i] =
            config.t_min + (config.t_max - config.t_min) * i / (config.n_points - 1.0);
    }

    // rows are independent; evaluate concurrently, collect in grid order
    std::vector<std::future<std::vector<double>>> rows;
    rows.reserve(config.n_points);
    for (int i = 0; i < config.n_points; ++i) {
        rows.push_back(std::async(std::launch::async | std::launch::deferred,
                                  [id, &config, t = table.temperature[i]] {
                                      std::vector<double> row;
                                      row.reserve(config.gamma_list.size());
                                      for (double g : config.gamma_list) {
                                          row.push_back(figure_value(id, config.params(g, t)));
                                      }
                                      return row;
                                  }));
    }
    table.y.reserve(config.n_points);
    for (auto& f : rows) table.y.push_back(f.get());
    return table;
}

std::string gamma_column_label(double gamma) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "gamma_%g", gamma);
    return buf;
}

std::string to_csv(const FigureTable& table) {
    std::string out = "T";
    for (double g : table.gamma) out += "," + gamma_column_label(g);
    out += "\n";
    for (size_t i = 0; i < table.temperature.size(); ++i) {
        out += format_double(table.temperature[i]);
        for (double y : table.y[i]) out += "," + format_double(y);
        out += "\n";
    }
    return out;
}

std::string to_json_string(const FigureTable& table) {
    nlohmann::json j;
    j["figure"] = table.figure_id;
    j["x_label"] = "kB*T/(hbar*w0)";
    j["y_label"] = table.y_label;
    j["gamma"] = table.gamma;
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < table.temperature.size(); ++i) {
        rows.push_back({{"T", table.temperature[i]}, {"y", table.y[i]}});
    }
    j["rows"] = rows;
    return j.dump(2);
}

}  // namespace qbo
