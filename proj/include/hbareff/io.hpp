#pragma once

// State and barrier file parsing, CSV number formatting and table writers.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hbareff/bounds.hpp"
#include "hbareff/decoherence.hpp"
#include "hbareff/errors.hpp"
#include "hbareff/oracle.hpp"
#include "hbareff/state.hpp"
#include "hbareff/thermal.hpp"
#include "hbareff/tunneling.hpp"

namespace hbareff::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

// 9 significant digits; scientific notation below 1e-4 in magnitude.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    if (std::abs(x) < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.8e", x);
    } else {
        std::snprintf(buf, sizeof buf, "%.9g", x);
    }
    return buf;
}

namespace detail {

inline json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line number.
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError(what + ": malformed JSON at line " + std::to_string(line) + ": " + e.what());
    }
}

inline void require_fields(const json& j, const std::string& what, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    std::set<std::string> known(allowed.begin(), allowed.end());
    known.insert(required.begin(), required.end());
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ParseError(what + ": unknown field \"" + key + "\"");
    for (const char* key : required)
        if (!j.contains(key)) throw ParseError(what + ": missing field \"" + key + "\"");
}

inline double number(const json& j, const std::string& field, const std::string& what) {
    if (!j.is_number()) throw ParseError(what + ": field \"" + field + "\" must be a number");
    return j.get<double>();
}

inline double optional_number(const json& j, const char* field, double fallback, const std::string& what) {
    return j.contains(field) ? number(j.at(field), field, what) : fallback;
}

inline std::vector<double> number_array(const json& j, const std::string& field, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": field \"" + field + "\" must be an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number(j[i], field + "[" + std::to_string(i) + "]", what));
    return out;
}

inline std::vector<std::vector<double>> number_matrix(const json& j, const std::string& field, int dim,
                                                      const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError(what + ": field \"" + field + "\" must be a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " array");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string row = field + "[" + std::to_string(i) + "]";
        auto values = number_array(j[i], row, what);
        if (static_cast<int>(values.size()) != dim)
            throw ParseError(what + ": field \"" + row + "\" must have " + std::to_string(dim) + " entries");
        out.push_back(std::move(values));
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

inline QuantumState parse_state(const std::string& text) {
    const std::string what = "state file";
    const json j = detail::parse_text(text, what);
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ParseError(what + ": missing string field \"type\"");
    const std::string type = j.at("type");
    if (type == "gaussian") {
        detail::require_fields(j, what, {"type", "mean", "cov"}, {"hbar"});
        GaussianState g;
        g.hbar = detail::optional_number(j, "hbar", 1.0, what);
        const auto mean = detail::number_array(j.at("mean"), "mean", what);
        if (mean.size() != 2) throw ParseError(what + ": field \"mean\" must be [q, p]");
        g.mean_q = mean[0];
        g.mean_p = mean[1];
        const json& cov = j.at("cov");
        detail::require_fields(cov, what + " (cov)", {"qq", "pp", "qp"}, {});
        g.sigma_qq = detail::number(cov.at("qq"), "cov.qq", what);
        g.sigma_pp = detail::number(cov.at("pp"), "cov.pp", what);
        g.sigma_qp = detail::number(cov.at("qp"), "cov.qp", what);
        return g;
    }
    if (type == "fock") {
        detail::require_fields(j, what, {"type", "dim", "re"}, {"hbar", "mass", "omega", "im"});
        if (!j.at("dim").is_number_integer()) throw ParseError(what + ": field \"dim\" must be an integer");
        const int dim = j.at("dim").get<int>();
        if (dim < 2) throw ParseError(what + ": field \"dim\" must be >= 2");
        const auto re = detail::number_matrix(j.at("re"), "re", dim, what);
        const auto im = j.contains("im") ? detail::number_matrix(j.at("im"), "im", dim, what)
                                         : std::vector<std::vector<double>>(static_cast<std::size_t>(dim),
                                                                            std::vector<double>(dim, 0.0));
        FockDensityMatrix f;
        f.hbar = detail::optional_number(j, "hbar", 1.0, what);
        f.mass = detail::optional_number(j, "mass", 1.0, what);
        f.omega = detail::optional_number(j, "omega", 1.0, what);
        f.rho = ComplexMatrix(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                f.rho(r, c) = Complex(re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                                      im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        return f;
    }
    throw ParseError(what + ": unknown state type \"" + type + "\"");
}

inline BarrierSpec parse_barrier(const std::string& text) {
    const std::string what = "barrier file";
    const json j = detail::parse_text(text, what);
    if (!j.is_object() || !j.contains("shape") || !j.at("shape").is_string())
        throw ParseError(what + ": missing string field \"shape\"");
    const std::string shape = j.at("shape");
    BarrierSpec b;
    try {
        if (shape == "rectangular") {
            detail::require_fields(j, what, {"shape", "v0", "width", "mass"}, {});
            b.shape = RectangularBarrier{detail::number(j.at("v0"), "v0", what),
                                         detail::number(j.at("width"), "width", what)};
        } else if (shape == "parabolic") {
            detail::require_fields(j, what, {"shape", "v0", "curvature", "mass"}, {});
            b.shape = ParabolicBarrier{detail::number(j.at("v0"), "v0", what),
                                       detail::number(j.at("curvature"), "curvature", what)};
        } else if (shape == "sampled") {
            detail::require_fields(j, what, {"shape", "x", "v", "mass"}, {});
            b.shape = SampledBarrier(detail::number_array(j.at("x"), "x", what),
                                     detail::number_array(j.at("v"), "v", what));
        } else {
            throw ParseError(what + ": unknown shape \"" + shape + "\"");
        }
        b.mass = detail::number(j.at("mass"), "mass", what);
        validate_barrier(b);
    } catch (const DomainError& e) {
        throw ParseError(what + ": " + e.what());
    }
    return b;
}

inline QuantumState load_state(const std::string& path) { return parse_state(detail::read_file(path)); }
inline BarrierSpec load_barrier(const std::string& path) { return parse_barrier(detail::read_file(path)); }

inline json state_to_json(const QuantumState& state) {
    if (const auto* g = std::get_if<GaussianState>(&state))
        return {{"type", "gaussian"},
                {"hbar", g->hbar},
                {"mean", {g->mean_q, g->mean_p}},
                {"cov", {{"qq", g->sigma_qq}, {"pp", g->sigma_pp}, {"qp", g->sigma_qp}}}};
    const auto& f = std::get<FockDensityMatrix>(state);
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < f.dim(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (int c = 0; c < f.dim(); ++c) {
            re_row.push_back(f.rho(r, c).real());
            im_row.push_back(f.rho(r, c).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    return {{"type", "fock"}, {"hbar", f.hbar}, {"mass", f.mass}, {"omega", f.omega},
            {"dim", f.dim()}, {"re", re},       {"im", im}};
}

// ---------------------------------------------------------------------------
// Tables, rendered either as CSV or as a JSON array of row objects.

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

inline void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "");
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << format_number(v);
                    } else {
                        out << v;
                    }
                },
                row[i]);
        }
        out << '\n';
    }
}

inline json table_to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            std::visit([&](const auto& v) { obj[table.header[i]] = v; }, row[i]);
        rows.push_back(std::move(obj));
    }
    return rows;
}

inline Table phi_curve_certified_table(const std::vector<PhiCurveRow>& rows) {
    Table t{{"mu", "phi_oracle", "phi_exact", "phi_app", "rel_err_exact", "rel_err_app", "method", "iterations"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.mu, r.phi_oracle, r.phi_exact, r.phi_app, r.rel_err_exact, r.rel_err_app,
                          std::string(to_string(r.method)), r.iterations});
    return t;
}

inline Table thermal_sweep_table(const std::vector<ThermalRecord>& rows) {
    Table t{{"T", "Z", "mu", "mu_asymptote", "phi", "phi_mode", "hbar_eff"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.temperature, r.z, r.mu, r.mu_asymptote, r.phi, std::string(to_string(r.phi_mode)),
                          r.hbar_eff});
    return t;
}

inline Table tunneling_sweep_table(const std::vector<SweepRecord>& rows) {
    Table t{{"param_name", "param_value", "mu", "phi", "hbar_eff", "action", "ln_D", "D", "invariant_product"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.param_name, r.param_value, r.mu, r.phi, r.hbar_eff, r.action, r.ln_d, r.d,
                          r.invariant_product});
    return t;
}

inline Table trajectory_table(const DephasingTrajectory& traj) {
    Table t{{"t", "mu", "r", "phi", "hbar_eff", "ln_D", "D", "inv_mu_ln_D"}, {}};
    for (const auto& rec : traj.records) {
        const auto& s = rec.sweep;
        t.rows.push_back({rec.t, s.mu, s.r, s.phi, s.hbar_eff, s.ln_d, s.d, rec.inv_mu_ln_d()});
    }
    return t;
}

// ---------------------------------------------------------------------------
// JSON reports

inline json to_json(const SecondMoments& m) {
    return {{"mean_q", m.mean_q},     {"mean_p", m.mean_p}, {"sigma_qq", m.sigma_qq},
            {"sigma_pp", m.sigma_pp}, {"sigma_qp", m.sigma_qp}, {"r", m.r},
            {"mu", m.mu},             {"linear_entropy", m.linear_entropy},
            {"truncation_warning", m.truncation_warning}};
}

inline json to_json(const BoundReport& b) {
    return {{"hbar", b.hbar},
            {"product", b.product},
            {"sr_lhs", b.sr_lhs},
            {"heisenberg_bound", b.heisenberg_bound},
            {"sr_bound", b.sr_bound},
            {"purity_bound", b.purity_bound},
            {"slack", {{"heisenberg", b.heisenberg_slack}, {"sr", b.sr_slack}, {"purity", b.purity_slack}}},
            {"pass", {{"heisenberg", b.heisenberg_pass}, {"sr", b.sr_pass}, {"purity", b.purity_pass}}},
            {"purity_check_advisory", b.purity_advisory},
            {"hbar_eff", b.hbar_eff},
            {"phi_value", b.phi_value},
            {"phi_mode", std::string(to_string(b.phi_mode))},
            {"phi_fallback", b.phi_fallback}};
}

inline json to_json(const ValidationReport& report) {
    json v = json::array();
    for (const auto& x : report.violations) v.push_back({{"invariant", x.invariant}, {"magnitude", x.magnitude}});
    return v;
}

}  // namespace hbareff::io
