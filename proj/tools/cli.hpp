#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbareff/hbareff.hpp"

namespace hbareff::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_bound_violation = 2,
    exit_nonconvergence = 3,
};

struct RunConfig {
    std::string command;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;

    std::string state_path;
    std::string barrier_path;
    std::optional<double> hbar;
    std::string phi_mode = "exact";

    std::vector<double> mu;
    std::optional<double> mu_from;
    std::optional<double> mu_to;
    int steps = 0;
    std::vector<std::string> modes{"exact", "interpolation", "asymptote"};

    int levels = 3;
    std::string method = "auto";
    bool falsify = false;
    int dim = 6;
    long samples = 10000;

    double t_min = 0.0;
    double t_max = 0.0;
    double r = 0.0;
    std::optional<double> energy;
    std::string purity = "exact";

    double gamma = 0.0;
};

class UsageError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline PhiMode phi_mode_of(const std::string& text) {
    if (auto m = parse_phi_mode(text)) return *m;
    throw UsageError("unknown phi mode \"" + text + "\" (expected exact, interpolation or asymptote)");
}

inline std::vector<double> linear_grid(double from, double to, int steps) {
    if (steps < 1) throw UsageError("--steps must be at least 1");
    if (steps == 1) return {from};
    if (!(from < to)) throw UsageError("--mu-from must be below --mu-to");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = from + (to - from) * i / (steps - 1);
    grid.back() = to;
    return grid;
}

inline std::vector<double> mu_grid(const RunConfig& c) {
    if (!c.mu.empty()) return c.mu;
    if (c.mu_from && c.mu_to) return linear_grid(*c.mu_from, *c.mu_to, c.steps);
    throw UsageError("give --mu or --mu-from/--mu-to/--steps");
}

inline void emit(std::ostream& out, const RunConfig& c, const io::Table& table) {
    if (c.format == "json") {
        nlohmann::json doc = {{"schema_version", io::schema_version}, {"command", c.command},
                              {"rows", io::table_to_json(table)}};
        out << doc.dump(2) << '\n';
    } else {
        io::write_csv(out, table);
    }
}

inline double require_energy(const RunConfig& c) {
    if (!c.energy) throw UsageError("--energy is required");
    return *c.energy;
}

inline int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
    QuantumState state = io::load_state(c.state_path);
    if (c.hbar) std::visit([&](auto& s) { s.hbar = *c.hbar; }, state);
    const double hbar = std::visit([](const auto& s) { return s.hbar; }, state);

    nlohmann::json doc = {{"schema_version", io::schema_version},
                          {"command", "check"},
                          {"state_type", std::holds_alternative<GaussianState>(state) ? "gaussian" : "fock"}};
    const auto validation = validate_state(state);
    doc["valid"] = validation.ok();
    doc["violations"] = io::to_json(validation);
    int code = exit_ok;
    if (!validation.ok()) {
        doc["moments"] = nullptr;
        doc["bounds"] = nullptr;
        doc["all_pass"] = false;
        code = exit_bound_violation;
    } else {
        const auto moments = compute_moments(state);
        if (moments.truncation_warning) err << "warning: state populates the top two Fock levels; moments truncated\n";
        const auto bounds = evaluate_bounds(moments, hbar, phi_mode_of(c.phi_mode));
        doc["moments"] = io::to_json(moments);
        doc["bounds"] = io::to_json(bounds);
        doc["all_pass"] = bounds.all_pass();
        if (!bounds.all_pass()) code = exit_bound_violation;
    }
    out << doc.dump(2) << '\n';
    return code;
}

inline int cmd_phi(const RunConfig& c, std::ostream& out) {
    if (c.mu.empty()) throw UsageError("--mu is required");
    const PhiMode mode = phi_mode_of(c.phi_mode);
    io::Table table{{"mu", "phi", "phi_mode", "fallback_flag"}, {}};
    for (const double mu : c.mu) {
        const auto v = phi_evaluate(mu, mode);
        table.rows.push_back({mu, v.value, std::string(to_string(v.piece)), static_cast<long>(v.fallback)});
    }
    emit(out, c, table);
    return exit_ok;
}

inline int cmd_phi_curve(const RunConfig& c, std::ostream& out) {
    if (!c.mu_from || !c.mu_to) throw UsageError("--mu-from and --mu-to are required");
    if (!(*c.mu_from > 0.0) || *c.mu_to > 1.0 || *c.mu_from > *c.mu_to)
        throw UsageError("need 0 < mu-from <= mu-to <= 1");
    const auto grid = linear_grid(*c.mu_from, *c.mu_to, c.steps);
    bool want_exact = false, want_app = false, want_asym = false;
    for (const auto& m : c.modes) {
        const PhiMode mode = phi_mode_of(m);
        want_exact |= mode == PhiMode::exact;
        want_app |= mode == PhiMode::interpolation;
        want_asym |= mode == PhiMode::asymptote;
    }
    io::Table table{{"mu"}, {}};
    if (want_exact) table.header.push_back("phi_exact");
    if (want_app) table.header.push_back("phi_app");
    if (want_asym) table.header.push_back("phi_asymptote");
    table.header.push_back("fallback_flag");
    for (const double mu : grid) {
        std::vector<io::Cell> row{mu};
        const auto exact = phi_evaluate(mu, PhiMode::exact);
        if (want_exact) row.emplace_back(exact.value);
        if (want_app) row.emplace_back(phi(mu, PhiMode::interpolation));
        if (want_asym) row.emplace_back(phi(mu, PhiMode::asymptote));
        row.emplace_back(static_cast<long>(exact.fallback));
        table.rows.push_back(std::move(row));
    }
    emit(out, c, table);
    return exit_ok;
}

inline int cmd_oracle(const RunConfig& c, std::ostream& out) {
    if (c.falsify) {
        if (!c.seed) throw UsageError("--falsify is stochastic and requires --seed");
        io::Table table{{"mu", "dim", "samples", "seed", "accepted", "rejected", "min_slack", "hard_region", "pass"},
                        {}};
        bool all_pass = true;
        long rejected = 0;
        for (const double mu : mu_grid(c)) {
            const auto rep = falsification_sweep(mu, c.dim, c.samples, *c.seed);
            all_pass = all_pass && rep.passed();
            rejected += rep.rejected;
            table.rows.push_back({mu, static_cast<long>(rep.dim), rep.samples, static_cast<long>(rep.seed),
                                  rep.accepted, rep.rejected, rep.min_slack, static_cast<long>(rep.hard_region),
                                  static_cast<long>(rep.passed())});
        }
        emit(out, c, table);
        if (!all_pass) return exit_bound_violation;
        return exit_ok;
    }
    const auto method = parse_minimization_method(c.method);
    if (!method) throw UsageError("unknown --method \"" + c.method + "\"");
    MinimizationOptions opt;
    if (*method == MinimizationMethod::random_density_sampling) {
        if (!c.seed) throw UsageError("random-density-sampling is stochastic and requires --seed");
        opt.seed = *c.seed;
    }
    emit(out, c, io::phi_curve_certified_table(phi_curve_certified(mu_grid(c), c.levels, *method, opt)));
    return exit_ok;
}

inline int cmd_thermal(const RunConfig& c, std::ostream& out) {
    if (c.steps < 2) throw UsageError("--steps must be at least 2");
    const auto model = ThermalModel::oscillator(c.hbar.value_or(1.0));
    const PhiMode mode = phi_mode_of(c.phi_mode);
    if (c.barrier_path.empty()) {
        emit(out, c, io::thermal_sweep_table(thermal_sweep(model, c.t_min, c.t_max, c.steps, c.r, mode)));
        return exit_ok;
    }
    ThermalPuritySource source = ThermalPuritySource::exact;
    if (c.purity == "asymptote") {
        source = ThermalPuritySource::high_temperature_limit;
    } else if (c.purity != "exact") {
        throw UsageError("--purity must be exact or asymptote");
    }
    const auto barrier = io::load_barrier(c.barrier_path);
    const auto rows = transparency_vs_temperature(barrier, require_energy(c), c.hbar.value_or(1.0), model,
                                                  log_grid(c.t_min, c.t_max, c.steps), c.r, mode, source);
    emit(out, c, io::tunneling_sweep_table(rows));
    return exit_ok;
}

inline int cmd_tunnel(const RunConfig& c, std::ostream& out) {
    const auto barrier = io::load_barrier(c.barrier_path);
    const auto rows = transparency_vs_purity(barrier, require_energy(c), c.hbar.value_or(1.0), c.r, mu_grid(c),
                                             phi_mode_of(c.phi_mode));
    emit(out, c, io::tunneling_sweep_table(rows));
    return exit_ok;
}

inline int cmd_decohere(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto state = io::load_state(c.state_path);
    const auto* rho = std::get_if<FockDensityMatrix>(&state);
    if (!rho) throw UsageError("decohere needs a Fock density-matrix state file");
    const auto barrier = io::load_barrier(c.barrier_path);
    const auto traj =
        run_trajectory(*rho, c.gamma, c.t_max, c.steps, barrier, require_energy(c), phi_mode_of(c.phi_mode));
    for (const auto& rec : traj.records) {
        if (rec.truncation_warning) {
            err << "warning: state populates the top two Fock levels; moments truncated\n";
            break;
        }
    }
    emit(out, c, io::trajectory_table(traj));
    return exit_ok;
}

inline void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--out", c.out_path, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", c.seed, "Seed for stochastic paths");
}

inline void add_mu_grid(CLI::App* sub, RunConfig& c) {
    sub->add_option("--mu", c.mu, "Purity value(s)")->delimiter(',');
    sub->add_option("--mu-from", c.mu_from, "First purity of a linear grid");
    sub->add_option("--mu-to", c.mu_to, "Last purity of a linear grid");
    sub->add_option("--steps", c.steps, "Number of grid points");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Purity- and correlation-dependent uncertainty bounds, effective hbar and WKB transparency"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "Evaluate all uncertainty bounds for a state file");
    check->add_option("--state", c.state_path, "State file")->required();
    check->add_option("--hbar", c.hbar, "Override the state's hbar");
    check->add_option("--phi-mode", c.phi_mode, "exact | interpolation | asymptote");
    detail::add_common(check, c);

    auto* phi_cmd = app.add_subcommand("phi", "Evaluate Phi(mu)");
    phi_cmd->add_option("--mu", c.mu, "Purity value(s)")->delimiter(',')->required();
    phi_cmd->add_option("--phi-mode", c.phi_mode, "exact | interpolation | asymptote");
    detail::add_common(phi_cmd, c);

    auto* curve = app.add_subcommand("phi-curve", "Tabulate Phi in every mode over a purity grid");
    curve->add_option("--mu-from", c.mu_from)->required();
    curve->add_option("--mu-to", c.mu_to)->required();
    curve->add_option("--steps", c.steps)->required();
    curve->add_option("--modes", c.modes, "Columns to emit")->delimiter(',');
    detail::add_common(curve, c);

    auto* oracle = app.add_subcommand("oracle", "Minimize the variance product at fixed purity");
    detail::add_mu_grid(oracle, c);
    oracle->add_option("--levels", c.levels, "Fock levels available to the minimizer");
    oracle->add_option("--method", c.method,
                       "auto | rank2-analytic | rank3-analytic | grid-refine | projected-gradient | "
                       "random-density-sampling");
    oracle->add_flag("--falsify", c.falsify, "Random dense density matrices against the purity bound");
    oracle->add_option("--dim", c.dim, "Dimension for --falsify");
    oracle->add_option("--samples", c.samples, "Samples per purity for --falsify");
    detail::add_common(oracle, c);

    auto* thermal = app.add_subcommand("thermal", "Thermal oscillator sweep (optionally through a barrier)");
    thermal->add_option("--t-min", c.t_min)->required();
    thermal->add_option("--t-max", c.t_max)->required();
    thermal->add_option("--steps", c.steps)->required();
    thermal->add_option("--r", c.r, "Correlation coefficient");
    thermal->add_option("--hbar", c.hbar);
    thermal->add_option("--phi-mode", c.phi_mode);
    thermal->add_option("--barrier", c.barrier_path, "Barrier file");
    thermal->add_option("--energy", c.energy);
    thermal->add_option("--purity", c.purity, "exact | asymptote (1/(2T))");
    detail::add_common(thermal, c);

    auto* tunnel = app.add_subcommand("tunnel", "Barrier transparency over a purity grid");
    tunnel->add_option("--barrier", c.barrier_path)->required();
    tunnel->add_option("--energy", c.energy)->required();
    detail::add_mu_grid(tunnel, c);
    tunnel->add_option("--r", c.r);
    tunnel->add_option("--hbar", c.hbar);
    tunnel->add_option("--phi-mode", c.phi_mode);
    detail::add_common(tunnel, c);

    auto* decohere = app.add_subcommand("decohere", "Dephasing trajectory with quasi-static transparency");
    decohere->add_option("--state", c.state_path)->required();
    decohere->add_option("--gamma", c.gamma)->required();
    decohere->add_option("--t-max", c.t_max)->required();
    decohere->add_option("--steps", c.steps)->required();
    decohere->add_option("--barrier", c.barrier_path)->required();
    decohere->add_option("--energy", c.energy)->required();
    decohere->add_option("--phi-mode", c.phi_mode);
    detail::add_common(decohere, c);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_input_error;
    }
    c.command = app.get_subcommands().front()->get_name();

    std::ostringstream buffer;
    int code = exit_ok;
    try {
        if (c.command == "check") code = detail::cmd_check(c, buffer, err);
        else if (c.command == "phi") code = detail::cmd_phi(c, buffer);
        else if (c.command == "phi-curve") code = detail::cmd_phi_curve(c, buffer);
        else if (c.command == "oracle") code = detail::cmd_oracle(c, buffer);
        else if (c.command == "thermal") code = detail::cmd_thermal(c, buffer);
        else if (c.command == "tunnel") code = detail::cmd_tunnel(c, buffer);
        else if (c.command == "decohere") code = detail::cmd_decohere(c, buffer, err);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_nonconvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    if (c.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(c.out_path);
        if (!file) {
            err << "error: cannot write \"" << c.out_path << "\"\n";
            return exit_input_error;
        }
        file << buffer.str();
    }
    return code;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace hbareff::cli
