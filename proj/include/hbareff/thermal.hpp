#pragma once

// Thermal states rho(T) = exp(-H/T) / Z(T), temperature in energy units.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hbareff/bounds.hpp"
#include "hbareff/errors.hpp"

namespace hbareff {

struct ThermalModel {
    enum class Kind { oscillator_closed_form, spectrum_list };

    Kind kind = Kind::oscillator_closed_form;
    std::vector<double> spectrum;
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    static ThermalModel oscillator(double hbar = 1.0, double mass = 1.0, double omega = 1.0) {
        return {Kind::oscillator_closed_form, {}, hbar, mass, omega};
    }

    static ThermalModel from_spectrum(std::vector<double> levels) {
        if (levels.empty()) throw DomainError("spectrum must not be empty");
        if (!std::is_sorted(levels.begin(), levels.end())) throw DomainError("spectrum must be sorted ascending");
        return {Kind::spectrum_list, std::move(levels), 1.0, 1.0, 1.0};
    }

    // hbar w (n + 1/2), n = 0 .. count - 1
    static ThermalModel oscillator_spectrum(int count, double hbar = 1.0, double omega = 1.0) {
        std::vector<double> levels(static_cast<std::size_t>(count));
        for (int n = 0; n < count; ++n) levels[static_cast<std::size_t>(n)] = hbar * omega * (n + 0.5);
        return from_spectrum(std::move(levels));
    }

    double quantum() const { return hbar * omega; }
};

struct PartitionValue {
    double value = 0.0;
    double log_value = 0.0;
    // Spectrum lists only: exp(-E_max / T), an estimate of the neglected tail.
    double truncation_error = 0.0;
};

namespace thermal_detail {

inline void check_temperature(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("temperature must be positive, got " + std::to_string(t));
}

// log Z for the oscillator, Z = 1 / (2 sinh(x)), x = hbar w / (2 T).
inline double oscillator_log_z(double x) {
    if (x > 20.0) return -x - std::log1p(-std::exp(-2.0 * x));
    return -std::log(2.0 * std::sinh(x));
}

inline double spectrum_log_z(const std::vector<double>& levels, double t) {
    const double shift = -levels.front() / t;
    double sum = 0.0;
    for (const double e : levels) sum += std::exp(-e / t - shift);
    return shift + std::log(sum);
}

inline void check_model(const ThermalModel& model) {
    if (model.kind == ThermalModel::Kind::spectrum_list) {
        if (model.spectrum.empty()) throw DomainError("spectrum-list model needs levels");
        if (!std::is_sorted(model.spectrum.begin(), model.spectrum.end()))
            throw DomainError("spectrum must be sorted ascending");
    } else {
        if (!model.spectrum.empty()) throw DomainError("closed-form oscillator takes no spectrum");
        if (!(model.hbar > 0.0) || !(model.omega > 0.0) || !(model.mass > 0.0))
            throw DomainError("hbar, mass and omega must be positive");
    }
}

}  // namespace thermal_detail

inline PartitionValue partition_function_detail(const ThermalModel& model, double t) {
    thermal_detail::check_temperature(t);
    thermal_detail::check_model(model);
    PartitionValue z;
    if (model.kind == ThermalModel::Kind::oscillator_closed_form) {
        z.log_value = thermal_detail::oscillator_log_z(model.quantum() / (2.0 * t));
    } else {
        z.log_value = thermal_detail::spectrum_log_z(model.spectrum, t);
        z.truncation_error = std::exp(-model.spectrum.back() / t);
    }
    z.value = std::exp(z.log_value);
    return z;
}

// Underflows to 0 below roughly T = 1e-3 hbar w; use log_partition_function there.
inline double partition_function(const ThermalModel& model, double t) {
    return partition_function_detail(model, t).value;
}

inline double log_partition_function(const ThermalModel& model, double t) {
    return partition_function_detail(model, t).log_value;
}

// mu(T) = Z(T/2) / Z(T)^2, evaluated in the log domain.
inline double thermal_purity(const ThermalModel& model, double t) {
    return std::exp(log_partition_function(model, t / 2.0) - 2.0 * log_partition_function(model, t));
}

inline double thermal_purity_asymptote(double t) {
    thermal_detail::check_temperature(t);
    return 1.0 / (2.0 * t);
}

// Bose occupation 1 / (exp(hbar w / T) - 1) of the oscillator.
inline double mean_occupation(const ThermalModel& model, double t) {
    thermal_detail::check_temperature(t);
    return 1.0 / std::expm1(model.quantum() / t);
}

struct ThermalBound {
    double temperature = 1.0;
    double z = 1.0;
    double mu = 1.0;
    double r = 0.0;
    double hbar = 1.0;
    PhiValue phi;
    double heisenberg_bound = 0.0;
    double sr_bound = 0.0;
    double purity_bound = 0.0;
    double hbar_eff = 1.0;
    // Oscillator only: ((nbar + 1/2) hbar)^2 and its excess over purity_bound.
    std::optional<double> actual_product;
    std::optional<double> slack;
};

inline ThermalBound thermal_bound_report(const ThermalModel& model, double t, double r,
                                         PhiMode mode = PhiMode::exact) {
    if (!(std::abs(r) < 1.0 - degenerate_correlation_margin))
        throw DegenerateCorrelationError("thermal bound needs |r| < 1");
    ThermalBound b;
    b.temperature = t;
    b.z = partition_function(model, t);
    b.mu = thermal_purity(model, t);
    b.r = r;
    b.hbar = model.hbar;
    b.phi = phi_evaluate(b.mu, mode);
    const double floor = model.hbar * model.hbar / 4.0;
    b.heisenberg_bound = floor;
    b.sr_bound = floor / (1.0 - r * r);
    b.purity_bound = b.sr_bound * b.phi.value * b.phi.value;
    b.hbar_eff = model.hbar * b.phi.value / std::sqrt(1.0 - r * r);
    if (model.kind == ThermalModel::Kind::oscillator_closed_form) {
        const double spread = (mean_occupation(model, t) + 0.5) * model.hbar;
        b.actual_product = spread * spread;
        b.slack = *b.actual_product - b.purity_bound;
    }
    return b;
}

struct ThermalRecord {
    double temperature = 1.0;
    double z = 1.0;
    double mu = 1.0;
    double mu_asymptote = 1.0;
    double phi = 1.0;
    PhiPiece phi_mode = PhiPiece::exact_piece_1;
    double hbar_eff = 1.0;
};

// `steps` logarithmically spaced temperatures from t_min to t_max inclusive.
inline std::vector<double> log_grid(double t_min, double t_max, int steps) {
    if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("need 0 < t_min < t_max");
    if (steps < 2) throw DomainError("need at least 2 steps");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double lo = std::log(t_min);
    const double hi = std::log(t_max);
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (steps - 1));
    grid.front() = t_min;
    grid.back() = t_max;
    return grid;
}

inline ThermalRecord thermal_record(const ThermalModel& model, double t, double r, PhiMode mode = PhiMode::exact) {
    ThermalRecord rec;
    rec.temperature = t;
    rec.z = partition_function(model, t);
    rec.mu = thermal_purity(model, t);
    rec.mu_asymptote = thermal_purity_asymptote(t);
    const PhiValue p = phi_evaluate(rec.mu, mode);
    rec.phi = p.value;
    rec.phi_mode = p.piece;
    rec.hbar_eff = effective_hbar(model.hbar, r, rec.mu, mode);
    return rec;
}

inline std::vector<ThermalRecord> thermal_sweep(const ThermalModel& model, double t_min, double t_max, int steps,
                                                double r, PhiMode mode = PhiMode::exact) {
    std::vector<ThermalRecord> out;
    for (const double t : log_grid(t_min, t_max, steps)) out.push_back(thermal_record(model, t, r, mode));
    return out;
}

}  // namespace hbareff
