#pragma once

// Number-basis dephasing, rho_nm -> rho_nm exp(-gamma dt (n - m)^2), and the
// quasi-static transparency estimate along a dephasing trajectory.

#include <cmath>
#include <string>
#include <vector>

#include "hbareff/bounds.hpp"
#include "hbareff/errors.hpp"
#include "hbareff/moments.hpp"
#include "hbareff/state.hpp"
#include "hbareff/tunneling.hpp"

namespace hbareff {

inline FockDensityMatrix dephase_step(const FockDensityMatrix& rho, double gamma, double dt) {
    if (!(gamma >= 0.0)) throw DomainError("dephasing rate must be nonnegative");
    if (!(dt >= 0.0)) throw DomainError("time step must be nonnegative");
    const auto report = validate_state(rho);
    if (!report.ok()) throw InvalidStateError("invalid density matrix: " + report.summary());
    FockDensityMatrix out = rho;
    const double rate = gamma * dt;
    const int n = rho.dim();
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const double gap = static_cast<double>(j - k);
            out.rho(j, k) *= std::exp(-rate * gap * gap);
        }
    }
    return out;
}

struct TrajectoryRecord {
    double t = 0.0;
    SweepRecord sweep;  // param_name "t"
    bool truncation_warning = false;

    double inv_mu_ln_d() const { return sweep.invariant_product; }
};

struct DephasingTrajectory {
    std::vector<double> times;
    std::vector<FockDensityMatrix> states;
    std::vector<TrajectoryRecord> records;
};

inline TrajectoryRecord analyze_state(const FockDensityMatrix& rho, double t, const ActionResult& action,
                                      PhiMode mode) {
    const auto m = compute_moments(rho);
    TrajectoryRecord rec;
    rec.t = t;
    rec.truncation_warning = m.truncation_warning;
    rec.sweep = tunneling_detail::make_record("t", t, action, rho.hbar, m.r, m.mu, mode);
    rec.sweep.invariant_product = rec.sweep.ln_d / m.mu;
    return rec;
}

// `steps` uniformly spaced times 0 .. t_max inclusive.
inline DephasingTrajectory run_trajectory(const FockDensityMatrix& rho0, double gamma, double t_max, int steps,
                                          const BarrierSpec& barrier, double energy, PhiMode mode = PhiMode::exact) {
    if (steps < 2) throw DomainError("trajectory needs at least 2 time points");
    if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
    if (!(gamma >= 0.0)) throw DomainError("dephasing rate must be nonnegative");
    const auto action = action_integral(barrier, energy);
    const double dt = t_max / (steps - 1);

    DephasingTrajectory traj;
    FockDensityMatrix rho = rho0;
    for (int k = 0; k < steps; ++k) {
        const double t = k == steps - 1 ? t_max : k * dt;
        if (k > 0) rho = dephase_step(rho, gamma, dt);
        traj.times.push_back(t);
        traj.states.push_back(rho);
        traj.records.push_back(analyze_state(rho, t, action, mode));
    }
    return traj;
}

}  // namespace hbareff
