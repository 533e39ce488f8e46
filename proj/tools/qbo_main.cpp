// qbo: command-line surface for the quantum Brownian oscillator library.
// Exit codes: 0 success, 2 usage error, 3 numeric-domain error,
// 4 selftest tolerance failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbo/audit.hpp"
#include "qbo/density_matrix.hpp"
#include "qbo/drude.hpp"
#include "qbo/effective.hpp"
#include "qbo/errors.hpp"
#include "qbo/figures.hpp"
#include "qbo/oracles.hpp"
#include "qbo/symmetric_eigen.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    double gamma = 0.5;
    double temp = 1.0;
    double beta = 0.0;  // overrides temp when set
    double M = 1.0, w0 = 1.0, Omega = 1.0, hbar = 1.0, kB = 1.0;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--gamma", o.gamma, "damping parameter");
    cmd->add_option("--temp", o.temp, "temperature in units of hbar*w0/kB");
    cmd->add_option("--beta", o.beta, "inverse temperature (overrides --temp)");
    cmd->add_option("--M", o.M, "oscillator mass");
    cmd->add_option("--w0", o.w0, "renormalized frequency");
    cmd->add_option("--Omega", o.Omega, "Drude scale");
    cmd->add_option("--hbar", o.hbar, "action constant");
    cmd->add_option("--kB", o.kB, "Boltzmann constant");
    if (with_format) {
        cmd->add_option("--format", o.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    }
    cmd->add_option("--out", o.out, "write output to a file instead of stdout");
}

qbo::ModelParams make_params(const CommonOpts& o) {
    // --temp is x = kB T/(hbar w0), so beta = 1/(kB T) = 1/(x hbar w0)
    const double beta = o.beta > 0.0 ? o.beta : 1.0 / (o.temp * o.hbar * o.w0);
    return qbo::ModelParams(o.M, o.w0, o.Omega, o.gamma, beta, o.hbar, o.kB);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream f(o.out);
        if (!f) throw qbo::domain_error("cannot open output file " + o.out);
        f << text;
        if (!text.empty() && text.back() != '\n') f << '\n';
    }
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json params_json(const qbo::ModelParams& p) {
    return json{{"M", p.M},         {"w0", p.w0},     {"Omega", p.Omega},
                {"gamma", p.gamma}, {"beta", p.beta}, {"hbar", p.hbar},
                {"kB", p.kB},       {"k0", p.k0()},   {"omega0", p.omega0()}};
}

int run_moments(const CommonOpts& o) {
    const qbo::ModelParams p = make_params(o);
    const qbo::GaussianMoments m = qbo::moments(p);
    if (o.format == "csv") {
        emit(o, "q2,p2,v\n" + fmt_double(m.q2) + "," + fmt_double(m.p2) + "," +
                    fmt_double(m.v) + "\n");
    } else {
        emit(o, json{{"params", params_json(p)},
                     {"q2", m.q2},
                     {"p2", m.p2},
                     {"v", m.v},
                     {"U_s", qbo::internal_energy(m, p.M, p.k0())}}
                    .dump(2));
    }
    return 0;
}

int run_densmat(const CommonOpts& o, double tolerance) {
    const qbo::ModelParams p = make_params(o);
    const qbo::GaussianMoments m = qbo::moments(p);
    const qbo::DimensionlessSet ds =
        qbo::dimensionless_quantities(m, p.M, p.omega0(), p.hbar);
    const qbo::ReducedDensityMatrix rho = qbo::build_truncated(ds, m, tolerance);
    if (o.format == "csv") {
        std::string text = "n,m,value\n";
        for (int n = 0; n <= rho.n_cut; ++n) {
            for (int mm = 0; mm <= rho.n_cut; ++mm) {
                text += std::to_string(n) + "," + std::to_string(mm) + "," +
                        fmt_double(rho.at(n, mm)) + "\n";
            }
        }
        emit(o, text);
    } else {
        json entries = json::array();
        for (int n = 0; n <= rho.n_cut; ++n) {
            json row = json::array();
            for (int mm = 0; mm <= rho.n_cut; ++mm) row.push_back(rho.at(n, mm));
            entries.push_back(row);
        }
        emit(o, json{{"params", params_json(p)},
                     {"n_cut", rho.n_cut},
                     {"trace_deficit", rho.trace_deficit},
                     {"A", ds.A},
                     {"Upsilon", ds.Upsilon},
                     {"Lambda", ds.Lambda},
                     {"Delta", ds.Delta},
                     {"entries", entries}}
                    .dump(2));
    }
    return 0;
}

int run_effective(const CommonOpts& o) {
    const qbo::ModelParams p = make_params(o);
    const qbo::GaussianMoments m = qbo::moments(p);
    const qbo::EffectiveOscillator eff =
        qbo::effective_star(m, p.M, p.k0(), p.beta, p.hbar, p.kB);
    const qbo::GrabertComparison gr = qbo::grabert_comparison(m, p.beta, p.hbar);
    json out{{"params", params_json(p)},
             {"xi", eff.xi},
             {"v", eff.v},
             {"M_eff_star", eff.M_eff_star},
             {"omega_eff_star", eff.omega_eff_star},
             {"k_eff_star", eff.k_eff_star},
             {"T_eff_star", eff.T_eff_star},
             {"Z_eff", eff.Z_eff},
             {"U_eff_star", eff.U_eff_star},
             {"S", eff.S},
             {"F_eff_star", eff.F_eff_star},
             {"grabert", json{{"omega_tilde", gr.omega_tilde},
                              {"M_tilde", gr.M_tilde},
                              {"U_tilde", gr.U_tilde}}}};
    if (p.beta >= 1e3) {  // zero-temperature proxy regime
        const qbo::ZeroTComparison z = qbo::zero_T_comparison(m, p.M, p.hbar, p.kB);
        out["zero_T"] = json{{"omega_bar", z.omega_bar}, {"T_bar", z.T_bar}, {"U_bar", z.U_bar}};
    }
    emit(o, out.dump(2));
    return 0;
}

int run_audit(const CommonOpts& o, const std::string& vary) {
    const qbo::ModelParams p = make_params(o);
    qbo::Variation which = qbo::Variation::damping;
    if (vary == "mass") which = qbo::Variation::mass;
    else if (vary == "spring") which = qbo::Variation::spring;
    else if (vary != "damping") throw qbo::domain_error("audit: --vary mass|spring|damping");
    const qbo::VariationReport rep = qbo::variation_report(p, which);
    emit(o, json{{"params", params_json(p)},
                 {"which", qbo::to_string(rep.which)},
                 {"dQ_s", rep.dQ_s},
                 {"dW_s", rep.dW_s},
                 {"dQ_eff_star", rep.dQ_eff_star},
                 {"dW_eff_star", rep.dW_eff_star},
                 {"T_dS", rep.T_dS},
                 {"Teff_dS", rep.Teff_dS},
                 {"Y", rep.Y},
                 {"naive_violated", rep.naive_violated},
                 {"effective_residual", rep.effective_equality_residual}}
                .dump(2));
    return 0;
}

int run_figure(const CommonOpts& o, int figure_id, qbo::RunConfig config) {
    config.hbar = o.hbar;
    config.kB = o.kB;
    config.w0 = o.w0;
    config.Omega = o.Omega;
    config.M = o.M;
    const qbo::FigureTable table = qbo::figure_data(figure_id, config);
    emit(o, o.format == "csv" ? qbo::to_csv(table) : qbo::to_json_string(table));
    return 0;
}

int run_oracle(const CommonOpts& o, const std::string& which, int n_terms, int n_modes,
               double omega_max, int level_n, int level_m) {
    const qbo::ModelParams p = make_params(o);
    const qbo::GaussianMoments closed = qbo::moments(p);
    json j{{"params", params_json(p)},
           {"closed_form", {{"q2", closed.q2}, {"p2", closed.p2}, {"v", closed.v}}}};
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    if (which == "matsubara") {
        const qbo::GaussianMoments m = qbo::oracles::matsubara_moments(p, n_terms);
        j["oracle"] = {{"q2", m.q2}, {"p2", m.p2}};
        j["rel_error"] = {{"q2", rel(m.q2, closed.q2)}, {"p2", rel(m.p2, closed.p2)}};
    } else if (which == "fdt") {
        const qbo::GaussianMoments m = qbo::oracles::fdt_quadrature_moments(p, omega_max);
        j["oracle"] = {{"q2", m.q2}, {"p2", m.p2}};
        j["rel_error"] = {{"q2", rel(m.q2, closed.q2)}, {"p2", rel(m.p2, closed.p2)}};
    } else if (which == "starbath") {
        const qbo::GaussianMoments m = qbo::oracles::star_bath_moments(p, n_modes, omega_max);
        j["oracle"] = {{"q2", m.q2}, {"p2", m.p2}, {"N", n_modes}};
        j["rel_error"] = {{"q2", rel(m.q2, closed.q2)}, {"p2", rel(m.p2, closed.p2)}};
    } else if (which == "rho") {
        const qbo::DimensionlessSet ds =
            qbo::dimensionless_quantities(closed, p.M, p.omega0(), p.hbar);
        const double quad =
            qbo::oracles::rho_element_quadrature(level_n, level_m, closed, p.M, p.omega0(), p.hbar);
        const double jac = qbo::matrix_element(level_n, level_m, ds, closed);
        const double hyp = qbo::matrix_element_hyp2f1(level_n, level_m, ds, closed);
        j["oracle"] = {{"n", level_n}, {"m", level_m}, {"quadrature", quad},
                       {"jacobi_route", jac}, {"hyp2f1_route", hyp}};
    } else {
        throw qbo::domain_error("oracle: --which matsubara|fdt|starbath|rho");
    }
    emit(o, j.dump(2));
    return 0;
}

struct SelfTest {
    int failures = 0;
    void check(const std::string& name, double value, double bound) {
        const bool ok = value <= bound;
        std::printf("%-58s %12.3e  (tol %8.1e)  %s\n", name.c_str(), value, bound,
                    ok ? "pass" : "FAIL");
        if (!ok) ++failures;
    }
};

int run_selftest() {
    SelfTest t;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };

    // oracle self-validation against the uncoupled closed forms
    {
        const qbo::ModelParams p(1.0, 1.0, 1.0, 1e-9, 1.0);
        const qbo::GaussianMoments u = qbo::uncoupled_moments(1.0, 1.0, 1.0, 1.0);
        const qbo::GaussianMoments m = qbo::oracles::matsubara_moments(p);
        t.check("matsubara vs uncoupled coth (gamma -> 0), q2", rel(m.q2, u.q2), 1e-8);
        t.check("matsubara vs uncoupled coth (gamma -> 0), p2", rel(m.p2, u.p2), 1e-8);
    }
    for (double gamma : {0.5, 4.0}) {
        const qbo::ModelParams p = qbo::caption_params(gamma, 1.0);
        const qbo::GaussianMoments closed = qbo::moments(p);
        const qbo::GaussianMoments ms = qbo::oracles::matsubara_moments(p);
        const qbo::GaussianMoments fd = qbo::oracles::fdt_quadrature_moments(p);
        const std::string tag = " (gamma=" + std::to_string(gamma).substr(0, 3) + ", T=1)";
        t.check("matsubara vs closed form, q2" + tag, rel(ms.q2, closed.q2), 1e-8);
        t.check("matsubara vs closed form, p2" + tag, rel(ms.p2, closed.p2), 1e-8);
        t.check("fdt quadrature vs closed form, q2" + tag, rel(fd.q2, closed.q2), 1e-6);
        t.check("fdt quadrature vs closed form, p2" + tag, rel(fd.p2, closed.p2), 1e-6);
    }
    {
        const qbo::ModelParams p = qbo::caption_params(4.0, 1.0);
        const qbo::GaussianMoments m = qbo::moments(p);
        const qbo::DimensionlessSet ds = qbo::dimensionless_quantities(m, p.M, p.omega0(), p.hbar);
        double worst = 0.0;
        for (int n : {0, 2, 3}) {
            for (int mm : {0, 1, 2, 4}) {
                if ((n + mm) % 2) continue;
                const double quad =
                    qbo::oracles::rho_element_quadrature(n, mm, m, p.M, p.omega0(), p.hbar);
                const double jac = qbo::matrix_element(n, mm, ds, m);
                worst = std::max(worst, std::abs(quad - jac) / std::abs(quad));
            }
        }
        t.check("density-matrix closed form vs quadrature (n,m<=4)", worst, 1e-8);

        const qbo::EffectiveOscillator eff = qbo::effective_star(m, p.M, p.k0(), p.beta, p.hbar, p.kB);
        t.check("U_eff_star == U_s", rel(eff.U_eff_star, qbo::internal_energy(m, p.M, p.k0())), 1e-14);
        t.check("S_eff == S_N", rel(qbo::entropy_effective(eff.xi, p.kB), eff.S), 1e-12);

        double worst_eq = 0.0;
        for (auto which : {qbo::Variation::damping, qbo::Variation::mass, qbo::Variation::spring}) {
            worst_eq = std::max(worst_eq,
                                std::abs(qbo::variation_report(p, which).effective_equality_residual));
        }
        t.check("effective Clausius equality residual", worst_eq, 1e-9);
    }
    std::printf("%s\n", t.failures == 0 ? "selftest: all checks passed"
                                        : "selftest: FAILURES detected");
    return t.failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Brownian oscillator thermodynamics"};
    app.require_subcommand(1);

    CommonOpts o;
    double tolerance = 1e-12;
    std::string vary = "mass";
    std::string oracle_which = "matsubara";
    int figure_id = 1;
    int n_terms = 200000, n_modes = 1000;
    double omega_max = 0.0;
    int level_n = 0, level_m = 0;
    qbo::RunConfig config;

    auto* cmd_moments = app.add_subcommand("moments", "equilibrium <q^2>, <p^2>, v");
    add_common(cmd_moments, o);

    auto* cmd_densmat = app.add_subcommand("densmat", "truncated reduced density matrix");
    add_common(cmd_densmat, o);
    cmd_densmat->add_option("--tolerance", tolerance, "geometric tail bound for truncation");

    auto* cmd_effective = app.add_subcommand("effective", "starred effective oscillator record");
    add_common(cmd_effective, o, false);

    auto* cmd_audit = app.add_subcommand("audit", "Clausius audit of one parameter variation");
    add_common(cmd_audit, o, false);
    cmd_audit->add_option("--vary", vary, "mass | spring | damping")
        ->check(CLI::IsMember({"mass", "spring", "damping"}));

    auto* cmd_figure = app.add_subcommand("figure", "emit caption-formula sweep data");
    cmd_figure->add_option("id", figure_id, "figure id 1..7")->required();
    add_common(cmd_figure, o);
    cmd_figure->add_option("--gammas", config.gamma_list, "damping values (columns)");
    cmd_figure->add_option("--tmin", config.t_min, "grid start");
    cmd_figure->add_option("--tmax", config.t_max, "grid end");
    cmd_figure->add_option("--npoints", config.n_points, "grid size");

    auto* cmd_oracle = app.add_subcommand("oracle", "run a brute-force verifier");
    add_common(cmd_oracle, o);
    cmd_oracle->add_option("--which", oracle_which, "matsubara | fdt | starbath | rho")
        ->check(CLI::IsMember({"matsubara", "fdt", "starbath", "rho"}));
    cmd_oracle->add_option("--terms", n_terms, "matsubara terms");
    cmd_oracle->add_option("--modes", n_modes, "star-bath size N");
    cmd_oracle->add_option("--omega-max", omega_max, "hard cutoff (0 = resolved tail)");
    cmd_oracle->add_option("--n", level_n, "row index for --which rho");
    cmd_oracle->add_option("--m", level_m, "column index for --which rho");

    app.add_subcommand("selftest", "oracle-equivalence smoke suite (exit 4 on failure)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits clean; any usage problem is 2
    }

    try {
        if (cmd_moments->parsed()) return run_moments(o);
        if (cmd_densmat->parsed()) return run_densmat(o, tolerance);
        if (cmd_effective->parsed()) return run_effective(o);
        if (cmd_audit->parsed()) return run_audit(o, vary);
        if (cmd_figure->parsed()) {
            if (cmd_figure->get_option("--format")->count() == 0) o.format = "csv";
            return run_figure(o, figure_id, config);
        }
        if (cmd_oracle->parsed())
            return run_oracle(o, oracle_which, n_terms, n_modes, omega_max, level_n, level_m);
        return run_selftest();
    } catch (const qbo::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
