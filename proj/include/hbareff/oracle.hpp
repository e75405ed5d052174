#pragma once

// Numerical certification of Phi(mu).
//
// For a Fock-diagonal mixture p_n the state has zero means, zero covariance and
// sigma_qq = sigma_pp = hbar (nbar + 1/2), so the variance product is
// hbar^2 (sum_n p_n (n + 1/2))^2. Minimizing that product over probability
// vectors with sum p_n^2 = mu gives hbar^2 Phi^2(mu) / 4. The minimizers here
// attack that problem by independent routes; falsification_sweep then checks
// dense random density matrices against the resulting bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hbareff/bounds.hpp"
#include "hbareff/errors.hpp"
#include "hbareff/moments.hpp"
#include "hbareff/state.hpp"

namespace hbareff {

enum class MinimizationMethod {
    automatic,
    rank2_analytic,
    rank3_analytic,
    grid_refine,
    projected_gradient,
    random_density_sampling,
};

inline std::string_view to_string(MinimizationMethod m) {
    switch (m) {
        case MinimizationMethod::automatic: return "auto";
        case MinimizationMethod::rank2_analytic: return "rank2-analytic";
        case MinimizationMethod::rank3_analytic: return "rank3-analytic";
        case MinimizationMethod::grid_refine: return "grid-refine";
        case MinimizationMethod::projected_gradient: return "projected-gradient";
        case MinimizationMethod::random_density_sampling: return "random-density-sampling";
    }
    return "?";
}

inline std::optional<MinimizationMethod> parse_minimization_method(std::string_view text) {
    for (auto m : {MinimizationMethod::automatic, MinimizationMethod::rank2_analytic,
                   MinimizationMethod::rank3_analytic, MinimizationMethod::grid_refine,
                   MinimizationMethod::projected_gradient, MinimizationMethod::random_density_sampling})
        if (to_string(m) == text) return m;
    return std::nullopt;
}

struct MinimizationResult {
    double mu_target = 1.0;
    double achieved_mu = 1.0;
    double min_product = 0.25;
    std::vector<double> optimal_weights;
    MinimizationMethod method = MinimizationMethod::rank2_analytic;
    long iterations = 0;
    double hbar = 1.0;

    // 2 sqrt(min_product) / hbar
    double phi() const { return 2.0 * std::sqrt(min_product) / hbar; }
};

struct MinimizationOptions {
    double hbar = 1.0;
    std::uint64_t seed = 42;       // random-density-sampling only
    long samples = 20000;          // random-density-sampling only
    double grid_resolution = 1e-3;
    double refine_tolerance = 1e-10;
    long max_grid_points = 2'000'000;
};

namespace oracle_detail {

inline constexpr double feasibility_slack = 1e-12;

inline double mean_energy(const std::vector<double>& p) {
    double e = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) e += (static_cast<double>(n) + 0.5) * p[n];
    return e;
}

inline double sum_squares(const std::vector<double>& p) {
    return std::inner_product(p.begin(), p.end(), p.begin(), 0.0);
}

inline MinimizationResult make_result(double mu, std::vector<double> p, MinimizationMethod method, long iterations,
                                      double hbar) {
    MinimizationResult r;
    r.mu_target = mu;
    r.achieved_mu = sum_squares(p);
    const double e = mean_energy(p);
    r.min_product = hbar * hbar * e * e;
    r.optimal_weights = std::move(p);
    r.method = method;
    r.iterations = iterations;
    r.hbar = hbar;
    return r;
}

inline void check_reachable(double mu, int levels) {
    if (levels < 2) throw InvalidDimensionError("need at least 2 levels");
    if (!(mu <= 1.0 + feasibility_slack) || !(mu >= 1.0 / levels - feasibility_slack))
        throw InfeasibleError("purity " + std::to_string(mu) + " is not reachable with " + std::to_string(levels) +
                              " levels (range [1/levels, 1])");
}

// Lowest-energy pair (x, y), x >= y >= 0, with x + y = s and x^2 + y^2 = q.
inline std::optional<std::pair<double, double>> split_pair(double s, double q) {
    if (s < -feasibility_slack) return std::nullopt;
    s = std::max(s, 0.0);
    double disc = 2.0 * q - s * s;
    if (disc < -1e-14) return std::nullopt;
    const double root = std::sqrt(std::max(disc, 0.0));
    const double y = 0.5 * (s - root);
    if (y < -1e-14) return std::nullopt;
    return std::make_pair(0.5 * (s + root), std::max(y, 0.0));
}

// Solves levels 0 and 1 from the free weights on levels 2.. so that both
// constraints hold. `swap` selects the higher-energy branch.
inline std::optional<std::vector<double>> complete(const std::vector<double>& free, double mu, bool swap) {
    double s = 1.0;
    double q = mu;
    for (const double x : free) {
        if (x < 0.0) return std::nullopt;
        s -= x;
        q -= x * x;
    }
    const auto pair = split_pair(s, q);
    if (!pair) return std::nullopt;
    std::vector<double> p{swap ? pair->second : pair->first, swap ? pair->first : pair->second};
    p.insert(p.end(), free.begin(), free.end());
    return p;
}

inline long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Enumerates lattice points k with sum k <= total in `dims` dimensions.
inline void for_each_lattice_point(int dims, int total, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> k(static_cast<std::size_t>(dims), 0);
    std::function<void(int, int)> rec = [&](int d, int remaining) {
        if (d == dims) {
            visit(k);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            k[static_cast<std::size_t>(d)] = v;
            rec(d + 1, remaining - v);
        }
    };
    rec(0, total);
}

inline MinimizationResult grid_refine(double mu, int levels, const MinimizationOptions& opt) {
    const int dims = levels - 2;
    long evaluations = 0;
    std::vector<double> best_free;
    bool best_swap = false;
    double best_energy = std::numeric_limits<double>::infinity();

    auto consider = [&](const std::vector<double>& free, bool swap) {
        ++evaluations;
        const auto p = complete(free, mu, swap);
        if (!p) return false;
        const double e = mean_energy(*p);
        if (e < best_energy) {
            best_energy = e;
            best_free = free;
            best_swap = swap;
            return true;
        }
        return false;
    };

    // Coarsen the grid in high dimension so the exhaustive pass stays bounded.
    double h = opt.grid_resolution;
    if (dims > 0) {
        const double cells = std::pow(static_cast<double>(opt.max_grid_points) * factorial(dims), 1.0 / dims);
        h = std::max(h, 1.0 / std::floor(cells));
    }
    const int total = dims > 0 ? static_cast<int>(std::lround(1.0 / h)) : 0;
    for_each_lattice_point(dims, total, [&](const std::vector<int>& k) {
        std::vector<double> free(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) free[i] = k[i] * h;
        consider(free, false);
        consider(free, true);
    });
    if (!std::isfinite(best_energy))
        throw ConvergenceError("grid search found no feasible point at purity " + std::to_string(mu));

    // Pattern search over +-e_i and +-(e_i - e_j), halving the step on failure.
    std::vector<std::vector<double>> directions;
    for (int i = 0; i < dims; ++i) {
        std::vector<double> d(static_cast<std::size_t>(dims), 0.0);
        d[static_cast<std::size_t>(i)] = 1.0;
        directions.push_back(d);
        for (auto& x : d) x = -x;
        directions.push_back(d);
        for (int j = i + 1; j < dims; ++j) {
            std::vector<double> e(static_cast<std::size_t>(dims), 0.0);
            e[static_cast<std::size_t>(i)] = 1.0;
            e[static_cast<std::size_t>(j)] = -1.0;
            directions.push_back(e);
            for (auto& x : e) x = -x;
            directions.push_back(e);
        }
    }
    for (double step = h; step > opt.refine_tolerance && dims > 0;) {
        bool improved = false;
        for (const auto& d : directions) {
            std::vector<double> trial = best_free;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += step * d[i];
            if (consider(trial, best_swap)) improved = true;
        }
        if (!improved) step *= 0.5;
    }
    auto p = *complete(best_free, mu, best_swap);
    return make_result(mu, std::move(p), MinimizationMethod::grid_refine, evaluations, opt.hbar);
}

// Euclidean projection onto the probability simplex.
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
    std::vector<double> u(y.data(), y.data() + y.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    return (y.array() - theta).cwiseMax(0.0).matrix();
}

// Projection onto {simplex} intersected with {|p - uniform| <= radius}
// (equivalently sum p^2 <= mu) by Dykstra's alternating projections.
inline Eigen::VectorXd project_feasible(const Eigen::VectorXd& y, double radius) {
    const auto n = y.size();
    const Eigen::VectorXd center = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    auto project_ball = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        const Eigen::VectorXd d = v - center;
        const double norm = d.norm();
        return norm <= radius ? v : Eigen::VectorXd(center + d * (radius / norm));
    };
    Eigen::VectorXd x = y;
    Eigen::VectorXd pa = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd qb = Eigen::VectorXd::Zero(n);
    for (int it = 0; it < 20000; ++it) {
        const Eigen::VectorXd a = project_simplex(x + pa);
        pa = x + pa - a;
        const Eigen::VectorXd next = project_ball(a + qb);
        qb = a + qb - next;
        const double change = (next - x).norm();
        x = next;
        if (change < 1e-16) break;
    }
    return x;
}

inline MinimizationResult projected_gradient(double mu, int levels, const MinimizationOptions& opt) {
    const double n_levels = static_cast<double>(levels);
    const double radius = std::sqrt(std::max(mu - 1.0 / n_levels, 0.0));
    Eigen::VectorXd gradient(levels);
    for (int n = 0; n < levels; ++n) gradient[n] = n + 0.5;
    auto energy = [&](const Eigen::VectorXd& p) { return gradient.dot(p); };

    Eigen::VectorXd p = Eigen::VectorXd::Constant(levels, 1.0 / n_levels);
    double step = 1.0;
    long iterations = 0;
    while (step > 1e-13 && iterations < 200000) {
        ++iterations;
        const Eigen::VectorXd candidate = project_feasible(p - step * gradient, radius);
        if (energy(candidate) < energy(p) - 1e-16) {
            p = candidate;
        } else {
            step *= 0.5;
        }
    }

    // Put the iterate exactly on the purity sphere of its own support.
    std::vector<int> support;
    for (int n = 0; n < levels; ++n)
        if (p[n] > 1e-9) support.push_back(n);
    const double k = static_cast<double>(support.size());
    if (support.size() >= 2 && mu >= 1.0 / k) {
        double dist2 = 0.0;
        for (const int n : support) dist2 += (p[n] - 1.0 / k) * (p[n] - 1.0 / k);
        const double scale = dist2 > 0.0 ? std::sqrt((mu - 1.0 / k) / dist2) : 0.0;
        Eigen::VectorXd polished = Eigen::VectorXd::Zero(levels);
        for (const int n : support) polished[n] = 1.0 / k + scale * (p[n] - 1.0 / k);
        if (polished.minCoeff() >= 0.0) p = polished;
    } else if (support.size() == 1) {
        p = Eigen::VectorXd::Zero(levels);
        p[support.front()] = 1.0;
    }
    return make_result(mu, std::vector<double>(p.data(), p.data() + p.size()), MinimizationMethod::projected_gradient,
                       iterations, opt.hbar);
}

}  // namespace oracle_detail

// Escort-family projection p_n^beta / sum p^beta onto sum p^2 = mu, solved
// for beta >= 0 by safeguarded Newton steps. Returns nullopt after 100
// iterations without convergence.
inline std::optional<std::vector<double>> project_to_purity(const std::vector<double>& p, double mu,
                                                            int max_iterations = 100) {
    const std::size_t n = p.size();
    if (n == 0) return std::nullopt;
    if (mu >= 1.0 - 1e-12) {
        std::vector<double> delta(n, 0.0);
        delta[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())] = 1.0;
        return delta;
    }
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(p[i] > 0.0)) return std::nullopt;
        logs[i] = std::log(p[i]);
    }
    const double max_log = *std::max_element(logs.begin(), logs.end());
    std::vector<double> w(n);
    auto evaluate = [&](double beta, double& value, double& slope) {
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::exp(beta * (logs[i] - max_log));
            z += w[i];
        }
        double mean_log = 0.0;
        value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] /= z;
            mean_log += w[i] * logs[i];
            value += w[i] * w[i];
        }
        slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) slope += 2.0 * w[i] * w[i] * (logs[i] - mean_log);
    };

    double value = 0.0;
    double slope = 0.0;
    evaluate(0.0, value, slope);
    if (mu < value - 1e-14) return std::nullopt;
    double lo = 0.0;
    double hi = 1.0;
    int iterations = 0;
    for (evaluate(hi, value, slope); value < mu; evaluate(hi, value, slope)) {
        lo = hi;
        hi *= 2.0;
        if (++iterations > max_iterations) return std::nullopt;
    }
    double beta = 0.5 * (lo + hi);
    for (; iterations <= max_iterations; ++iterations) {
        evaluate(beta, value, slope);
        const double f = value - mu;
        if (std::abs(f) < 1e-14) return w;
        if (f > 0.0) {
            hi = beta;
        } else {
            lo = beta;
        }
        double next = slope > 0.0 ? beta - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        beta = next;
    }
    return std::nullopt;
}

// Method `automatic` picks the analytic family that is optimal for the given
// number of levels and falls back to grid-refine elsewhere.
inline MinimizationMethod resolve_method(double mu, int levels) {
    if (levels == 2 || mu >= phi_piece1_lower) return MinimizationMethod::rank2_analytic;
    if (mu >= phi_piece2_lower || (levels == 3 && mu >= 1.0 / 3.0)) return MinimizationMethod::rank3_analytic;
    return MinimizationMethod::grid_refine;
}

inline MinimizationResult min_product_fock_mixture(double mu, int levels,
                                                   MinimizationMethod method = MinimizationMethod::automatic,
                                                   const MinimizationOptions& opt = {}) {
    oracle_detail::check_reachable(mu, levels);
    mu = std::min(mu, 1.0);
    if (method == MinimizationMethod::automatic) method = resolve_method(mu, levels);
    const auto pad = [levels](std::vector<double> p) {
        p.resize(static_cast<std::size_t>(levels), 0.0);
        return p;
    };

    switch (method) {
        case MinimizationMethod::rank2_analytic: {
            if (mu < 0.5 - oracle_detail::feasibility_slack)
                throw PieceDomainError("rank-2 family covers purity [1/2, 1]");
            const double root = std::sqrt(std::max(2.0 * mu - 1.0, 0.0));
            return oracle_detail::make_result(mu, pad({0.5 * (1.0 + root), 0.5 * (1.0 - root)}), method, 0, opt.hbar);
        }
        case MinimizationMethod::rank3_analytic: {
            // p_n = a - b n with a = 1/3 + b and b = sqrt((mu - 1/3) / 2).
            if (levels < 3) throw PieceDomainError("rank-3 family needs 3 levels");
            if (mu < 1.0 / 3.0 - oracle_detail::feasibility_slack)
                throw PieceDomainError("rank-3 family needs purity >= 1/3");
            const double b = std::sqrt(std::max((mu - 1.0 / 3.0) / 2.0, 0.0));
            const double a = 1.0 / 3.0 + b;
            std::vector<double> p{a, a - b, a - 2.0 * b};
            if (p[2] < -1e-14)
                throw PieceDomainError("rank-3 family has a negative weight above purity 5/9 (got " +
                                       std::to_string(mu) + ")");
            p[2] = std::max(p[2], 0.0);
            return oracle_detail::make_result(mu, pad(std::move(p)), method, 0, opt.hbar);
        }
        case MinimizationMethod::grid_refine:
            return oracle_detail::grid_refine(mu, levels, opt);
        case MinimizationMethod::projected_gradient:
            return oracle_detail::projected_gradient(mu, levels, opt);
        case MinimizationMethod::random_density_sampling: {
            std::mt19937_64 rng(opt.seed);
            std::exponential_distribution<double> exponential(1.0);
            std::vector<double> best;
            double best_energy = std::numeric_limits<double>::infinity();
            std::vector<double> draw(static_cast<std::size_t>(levels));
            for (long s = 0; s < opt.samples; ++s) {
                double total = 0.0;
                for (auto& x : draw) total += (x = exponential(rng));
                for (auto& x : draw) x /= total;
                auto p = project_to_purity(draw, mu);
                if (!p) continue;
                const double e = oracle_detail::mean_energy(*p);
                if (e < best_energy) {
                    best_energy = e;
                    best = std::move(*p);
                }
            }
            if (best.empty()) throw ConvergenceError("no sample reached the target purity");
            return oracle_detail::make_result(mu, std::move(best), method, opt.samples, opt.hbar);
        }
        case MinimizationMethod::automatic:
            break;
    }
    throw DomainError("unhandled minimization method");
}

// Haar-random unitary from the QR decomposition of a complex Ginibre matrix.
template <class Rng>
ComplexMatrix haar_unitary(int dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

struct FalsificationReport {
    double mu = 1.0;
    int dim = 2;
    long samples = 0;
    std::uint64_t seed = 0;
    long accepted = 0;
    long rejected = 0;
    // min over samples of sigma_qq sigma_pp (1 - r^2) - hbar^2 Phi^2(mu) / 4
    double min_slack = std::numeric_limits<double>::infinity();
    std::vector<double> worst_spectrum;
    bool hard_region = false;  // mu in [7/18, 1]

    bool passed(double tol = 1e-8) const { return !hard_region || min_slack >= -tol; }
};

// Random density matrices on the lowest `dim` Fock levels at fixed purity.
// Moments are evaluated after embedding into dim + 2 levels so that q^2 and
// p^2 are exact on the state's support.
inline FalsificationReport falsification_sweep(double mu, int dim, long samples, std::uint64_t seed,
                                               double hbar = 1.0) {
    if (dim < 2 || dim > 8) throw InvalidDimensionError("falsification sweep supports 2 <= dim <= 8");
    if (samples < 1 || samples > 1'000'000) throw DomainError("samples must be in [1, 1e6]");
    oracle_detail::check_reachable(mu, dim);
    mu = std::min(mu, 1.0);

    FalsificationReport report;
    report.mu = mu;
    report.dim = dim;
    report.samples = samples;
    report.seed = seed;
    report.hard_region = mu >= phi_piece2_lower;
    const double target = hbar * hbar * std::pow(phi(mu), 2) / 4.0;

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exponential(1.0);
    std::vector<double> draw(static_cast<std::size_t>(dim));
    for (long s = 0; s < samples; ++s) {
        double total = 0.0;
        for (auto& x : draw) total += (x = exponential(rng));
        for (auto& x : draw) x /= total;
        const ComplexMatrix u = haar_unitary(dim, rng);
        const auto spectrum = project_to_purity(draw, mu);
        if (!spectrum) {
            ++report.rejected;
            continue;
        }
        Eigen::VectorXd diag(dim);
        for (int i = 0; i < dim; ++i) diag[i] = (*spectrum)[static_cast<std::size_t>(i)];
        FockDensityMatrix rho{u * diag.asDiagonal() * u.adjoint(), hbar, 1.0, 1.0};
        rho.rho = 0.5 * (rho.rho + rho.rho.adjoint());
        const auto m = compute_moments(embed(rho, 2));
        const double slack = m.covariance_determinant() - target;
        ++report.accepted;
        if (slack < report.min_slack) {
            report.min_slack = slack;
            report.worst_spectrum = *spectrum;
        }
    }
    return report;
}

struct TwoLevelScan {
    double mu = 1.0;
    double min_determinant = 0.0;
    double polar = 0.0;
    double azimuth = 0.0;
    double phi() const { return 2.0 * std::sqrt(min_determinant); }
};

// Exhaustive scan of all two-level states (levels 0 and 1) of purity mu,
// parameterized by the direction of the Bloch vector of length sqrt(2 mu - 1).
inline TwoLevelScan two_level_scan(double mu, int polar_steps = 400, int azimuth_steps = 800, double hbar = 1.0) {
    if (mu < 0.5 - 1e-12 || mu > 1.0 + 1e-12) throw InfeasibleError("two-level purity must be in [1/2, 1]");
    const double length = std::sqrt(std::max(2.0 * mu - 1.0, 0.0));
    const double pi = std::acos(-1.0);
    TwoLevelScan best;
    best.mu = mu;
    best.min_determinant = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= polar_steps; ++i) {
        const double theta = pi * i / polar_steps;
        for (int j = 0; j < azimuth_steps; ++j) {
            const double varphi = 2.0 * pi * j / azimuth_steps;
            const double x = length * std::sin(theta) * std::cos(varphi);
            const double y = length * std::sin(theta) * std::sin(varphi);
            const double z = length * std::cos(theta);
            FockDensityMatrix rho{ComplexMatrix::Zero(4, 4), hbar, 1.0, 1.0};
            rho.rho(0, 0) = 0.5 * (1.0 + z);
            rho.rho(1, 1) = 0.5 * (1.0 - z);
            rho.rho(0, 1) = Complex(0.5 * x, -0.5 * y);
            rho.rho(1, 0) = Complex(0.5 * x, 0.5 * y);
            const double det = compute_moments(rho).covariance_determinant();
            if (det < best.min_determinant) {
                best.min_determinant = det;
                best.polar = theta;
                best.azimuth = varphi;
            }
        }
    }
    best.min_determinant /= hbar * hbar;
    return best;
}

struct PhiCurveRow {
    double mu = 1.0;
    double phi_oracle = 1.0;
    double phi_exact = 1.0;
    double phi_app = 1.0;
    double rel_err_exact = 0.0;
    double rel_err_app = 0.0;
    MinimizationMethod method = MinimizationMethod::rank2_analytic;
    long iterations = 0;
};

inline std::vector<PhiCurveRow> phi_curve_certified(const std::vector<double>& mu_grid, int levels,
                                                    MinimizationMethod method = MinimizationMethod::automatic,
                                                    const MinimizationOptions& opt = {}) {
    std::vector<PhiCurveRow> rows;
    rows.reserve(mu_grid.size());
    for (const double mu : mu_grid) {
        const auto result = min_product_fock_mixture(mu, levels, method, opt);
        PhiCurveRow row;
        row.mu = mu;
        row.phi_oracle = result.phi();
        row.phi_exact = phi(mu, PhiMode::exact);
        row.phi_app = phi(mu, PhiMode::interpolation);
        row.rel_err_exact = (row.phi_exact - row.phi_oracle) / row.phi_oracle;
        row.rel_err_app = (row.phi_app - row.phi_oracle) / row.phi_oracle;
        row.method = result.method;
        row.iterations = result.iterations;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hbareff
