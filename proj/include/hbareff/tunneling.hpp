#pragma once

// Semiclassical barrier transparency with an effective Planck constant:
//
//   D = exp(-(2 / hbar_eff) * integral sqrt(2 m (V(x) - E)) dx)
//
// over the classically forbidden region {V > E}; the pre-exponential factor
// is taken as 1.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hbareff/bounds.hpp"
#include "hbareff/errors.hpp"
#include "hbareff/quadrature.hpp"
#include "hbareff/thermal.hpp"

namespace hbareff {

struct RectangularBarrier {
    double v0 = 1.0;
    double width = 1.0;  // V = v0 on [0, width], 0 elsewhere
};

struct ParabolicBarrier {
    double v0 = 1.0;
    double curvature = 1.0;  // V = v0 - curvature x^2 / 2
};

// Monotone piecewise-cubic (Fritsch-Carlson) interpolant of sampled values.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw DomainError("interpolant needs two or more matching samples");
        std::vector<double> h(n - 1);
        std::vector<double> secant(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            h[k] = x_[k + 1] - x_[k];
            if (!(h[k] > 0.0)) throw DomainError("sample abscissae must be strictly increasing");
            secant[k] = (y_[k + 1] - y_[k]) / h[k];
        }
        slope_.assign(n, 0.0);
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (secant[k - 1] * secant[k] <= 0.0) continue;
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            slope_[k] = (w1 + w2) / (w1 / secant[k - 1] + w2 / secant[k]);
        }
        if (n == 2) {
            slope_[0] = slope_[1] = secant[0];
        } else {
            slope_[0] = edge_slope(h[0], h[1], secant[0], secant[1]);
            slope_[n - 1] = edge_slope(h[n - 2], h[n - 3], secant[n - 2], secant[n - 3]);
        }
    }

    double operator()(double x) const {
        const std::size_t k = segment(x);
        const double h = x_[k + 1] - x_[k];
        const double t = (x - x_[k]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * slope_[k] + (-2 * t3 + 3 * t2) * y_[k + 1] +
               (t3 - t2) * h * slope_[k + 1];
    }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }

private:
    static double edge_slope(double h0, double h1, double s0, double s1) {
        double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d * s0 <= 0.0) return 0.0;
        if (s0 * s1 <= 0.0 && std::abs(d) > 3.0 * std::abs(s0)) d = 3.0 * s0;
        return d;
    }

    std::size_t segment(double x) const {
        if (x <= x_.front()) return 0;
        if (x >= x_.back()) return x_.size() - 2;
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        return static_cast<std::size_t>(it - x_.begin()) - 1;
    }

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
};

struct SampledBarrier {
    MonotoneCubic potential;

    SampledBarrier(std::vector<double> x, std::vector<double> v) {
        if (x.size() != v.size() || x.size() < 8) throw DomainError("sampled barrier needs >= 8 (x, v) pairs");
        potential = MonotoneCubic(std::move(x), std::move(v));
    }
};

struct BarrierSpec {
    std::variant<RectangularBarrier, ParabolicBarrier, SampledBarrier> shape;
    double mass = 1.0;
};

inline void validate_barrier(const BarrierSpec& b) {
    if (!(b.mass > 0.0)) throw DomainError("barrier mass must be positive");
    if (const auto* r = std::get_if<RectangularBarrier>(&b.shape)) {
        if (!(r->v0 > 0.0) || !(r->width > 0.0)) throw DomainError("rectangular barrier needs v0 > 0 and width > 0");
    } else if (const auto* p = std::get_if<ParabolicBarrier>(&b.shape)) {
        if (!(p->v0 > 0.0) || !(p->curvature > 0.0))
            throw DomainError("parabolic barrier needs v0 > 0 and curvature > 0");
    }
}

inline double potential(const BarrierSpec& b, double x) {
    if (const auto* r = std::get_if<RectangularBarrier>(&b.shape)) return (x >= 0.0 && x <= r->width) ? r->v0 : 0.0;
    if (const auto* p = std::get_if<ParabolicBarrier>(&b.shape)) return p->v0 - 0.5 * p->curvature * x * x;
    return std::get<SampledBarrier>(b.shape).potential(x);
}

inline double barrier_maximum(const BarrierSpec& b) {
    if (const auto* r = std::get_if<RectangularBarrier>(&b.shape)) return r->v0;
    if (const auto* p = std::get_if<ParabolicBarrier>(&b.shape)) return p->v0;
    const auto& v = std::get<SampledBarrier>(b.shape).potential.y();
    return *std::max_element(v.begin(), v.end());
}

struct ActionResult {
    double action = 0.0;
    // Outermost turning points; empty when the forbidden region is empty.
    std::optional<std::pair<double, double>> turning_points;
    double quadrature_error = 0.0;
};

struct TransparencyResult {
    double d = 1.0;
    double ln_d = 0.0;
    double action_integral = 0.0;
    std::optional<std::pair<double, double>> turning_points;
    double hbar_eff_used = 1.0;
};

namespace tunneling_detail {

inline constexpr double turning_point_tolerance = 1e-12;

template <class F>
double bisect(const F& above, double lo, double hi) {
    // Invariant: above(lo) != above(hi).
    const bool lo_above = above(lo);
    while (hi - lo > turning_point_tolerance * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (above(mid) == lo_above) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline std::vector<std::pair<double, double>> forbidden_regions(const MonotoneCubic& v, double energy) {
    const auto& x = v.x();
    const auto& y = v.y();
    if (y.front() > energy || y.back() > energy)
        throw ResolutionError("sampled barrier exceeds the energy at the grid boundary; turning points not bracketed");
    auto above = [&](double s) { return v(s) > energy; };
    std::vector<std::pair<double, double>> regions;
    double start = 0.0;
    bool inside = false;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const bool a = y[k] > energy;
        const bool b = y[k + 1] > energy;
        if (a == b) continue;
        const double root = bisect(above, x[k], x[k + 1]);
        if (b) {
            start = root;
            inside = true;
        } else if (inside) {
            regions.emplace_back(start, root);
            inside = false;
        }
    }
    return regions;
}

}  // namespace tunneling_detail

// Integral of sqrt(2 m (V - E)) over the forbidden region.
inline ActionResult action_integral(const BarrierSpec& b, double energy,
                                    const QuadratureOptions& opt = QuadratureOptions{}) {
    validate_barrier(b);
    if (!(energy > 0.0)) throw DomainError("energy must be positive");
    ActionResult out;
    if (energy >= barrier_maximum(b)) return out;

    auto integrand = [&](double x) { return std::sqrt(std::max(0.0, 2.0 * b.mass * (potential(b, x) - energy))); };
    auto accumulate = [&](const QuadratureResult& q) {
        if (!q.converged) throw ConvergenceError("action quadrature did not reach tolerance");
        out.action += q.value;
        out.quadrature_error += q.error;
    };

    if (const auto* r = std::get_if<RectangularBarrier>(&b.shape)) {
        out.turning_points = std::make_pair(0.0, r->width);
        accumulate(integrate_adaptive(integrand, 0.0, r->width, opt));
    } else if (const auto* p = std::get_if<ParabolicBarrier>(&b.shape)) {
        const double edge = std::sqrt(2.0 * (p->v0 - energy) / p->curvature);
        out.turning_points = std::make_pair(-edge, edge);
        accumulate(integrate_sqrt_endpoints(integrand, -edge, edge, opt));
    } else {
        const auto regions =
            tunneling_detail::forbidden_regions(std::get<SampledBarrier>(b.shape).potential, energy);
        if (regions.empty()) return out;
        out.turning_points = std::make_pair(regions.front().first, regions.back().second);
        for (const auto& [lo, hi] : regions) accumulate(integrate_sqrt_endpoints(integrand, lo, hi, opt));
    }
    return out;
}

inline TransparencyResult transparency_from_action(const ActionResult& a, double hbar_eff) {
    if (!(hbar_eff > 0.0)) throw DomainError("effective hbar must be positive");
    TransparencyResult t;
    t.action_integral = a.action;
    t.turning_points = a.turning_points;
    t.hbar_eff_used = hbar_eff;
    t.ln_d = -2.0 * a.action / hbar_eff;
    t.d = std::exp(t.ln_d);
    return t;
}

inline TransparencyResult transparency(const BarrierSpec& b, double energy, double hbar_eff) {
    if (!(hbar_eff > 0.0)) throw DomainError("effective hbar must be positive");
    return transparency_from_action(action_integral(b, energy), hbar_eff);
}

struct SweepRecord {
    std::string param_name;  // "T", "mu" or "t"
    double param_value = 0.0;
    double mu = 1.0;
    double r = 0.0;
    double phi = 1.0;
    PhiPiece phi_mode = PhiPiece::exact_piece_1;
    double hbar_eff = 1.0;
    double action = 0.0;
    double ln_d = 0.0;
    double d = 1.0;
    // mu^-1 ln D for purity sweeps, T ln D for temperature sweeps.
    double invariant_product = 0.0;
};

namespace tunneling_detail {

inline SweepRecord make_record(const char* name, double value, const ActionResult& action, double hbar, double r,
                               double mu, PhiMode mode) {
    SweepRecord rec;
    rec.param_name = name;
    rec.param_value = value;
    rec.mu = mu;
    rec.r = r;
    const PhiValue p = phi_evaluate(mu, mode);
    rec.phi = p.value;
    rec.phi_mode = p.piece;
    rec.hbar_eff = effective_hbar(hbar, r, mu, mode);
    const auto t = transparency_from_action(action, rec.hbar_eff);
    rec.action = t.action_integral;
    rec.ln_d = t.ln_d;
    rec.d = t.d;
    return rec;
}

}  // namespace tunneling_detail

inline std::vector<SweepRecord> transparency_vs_purity(const BarrierSpec& b, double energy, double hbar, double r,
                                                       const std::vector<double>& mu_grid,
                                                       PhiMode mode = PhiMode::exact) {
    const auto action = action_integral(b, energy);
    std::vector<SweepRecord> out;
    out.reserve(mu_grid.size());
    for (const double mu : mu_grid) {
        auto rec = tunneling_detail::make_record("mu", mu, action, hbar, r, mu, mode);
        rec.invariant_product = rec.ln_d / mu;
        out.push_back(std::move(rec));
    }
    return out;
}

enum class ThermalPuritySource {
    exact,                    // Z(T/2) / Z(T)^2
    high_temperature_limit,   // 1 / (2T)
};

inline std::vector<SweepRecord> transparency_vs_temperature(
    const BarrierSpec& b, double energy, double hbar, const ThermalModel& model, const std::vector<double>& t_grid,
    double r, PhiMode mode = PhiMode::exact, ThermalPuritySource source = ThermalPuritySource::exact) {
    const auto action = action_integral(b, energy);
    std::vector<SweepRecord> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) {
        const double mu = source == ThermalPuritySource::exact ? thermal_purity(model, t) : thermal_purity_asymptote(t);
        auto rec = tunneling_detail::make_record("T", t, action, hbar, r, mu, mode);
        rec.invariant_product = t * rec.ln_d;
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace hbareff
