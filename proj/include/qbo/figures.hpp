#pragma once

#include <string>
#include <vector>

#include "qbo/model.hpp"

namespace qbo {

// Sweep configuration. Temperatures are the dimensionless x = kB T/(hbar w0)
// of the figure captions; the default grid [0.02, 3] x 150 covers every
// caption feature (the plots' numeric ranges are a convention, not data).
struct RunConfig {
    double hbar = 1.0;
    double kB = 1.0;
    double w0 = 1.0;
    double Omega = 1.0;
    double M = 1.0;
    std::vector<double> gamma_list = {0.5, 1.5, 4.0, 10.0};
    double t_min = 0.02;
    double t_max = 3.0;
    int n_points = 150;

    void validate() const;
    ModelParams params(double gamma, double t) const;
};

struct FigureTable {
    int figure_id = 0;
    std::string y_label;
    std::vector<double> temperature;        // rows, ascending
    std::vector<double> gamma;              // columns
    std::vector<std::vector<double>> y;     // y[row][column]
};

// Caption quantities:
//   1: k0 / k_eff*                                   (<= 1)
//   2: S_N                                           (von Neumann entropy)
//   3: 10 (dQ_s/dgamma - T dS_N/dgamma) / hbar
//   4: 100 (dW_eff*/dgamma) / hbar                   (<= 0)
//   5: (dQ_s/dM - T_eff* dS_N/dM) / (hbar w0 / M)
//   6: (dQ_s/dk0 - T_eff* dS_N/dk0) / (hbar/(M w0))
//   7: (dQ_s/dM - T dS_N/dM) / (hbar w0 / M)
FigureTable figure_data(int id, const RunConfig& config);

std::string gamma_column_label(double gamma);
std::string to_csv(const FigureTable& table);
std::string to_json_string(const FigureTable& table);

}  // namespace qbo
