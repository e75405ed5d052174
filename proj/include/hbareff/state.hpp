#pragma once

// Quantum-state representations shared by every other module: a single-mode
// Gaussian described by its first and second moments, and a density matrix
// truncated to the lowest `dim` Fock levels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "hbareff/errors.hpp"

namespace hbareff {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

namespace tolerance {
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double eigenvalue = 1e-10;
inline constexpr double physicality = 1e-10;
// Population above which the top two Fock levels count as occupied.
inline constexpr double truncation_population = 1e-8;
}  // namespace tolerance

struct GaussianState {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double sigma_qq = 0.5;
    double sigma_pp = 0.5;
    double sigma_qp = 0.0;
    double hbar = 1.0;

    double covariance_determinant() const { return sigma_qq * sigma_pp - sigma_qp * sigma_qp; }
};

struct FockDensityMatrix {
    ComplexMatrix rho;
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    int dim() const { return static_cast<int>(rho.rows()); }

    static FockDensityMatrix diagonal(const std::vector<double>& populations, double hbar = 1.0,
                                      double mass = 1.0, double omega = 1.0) {
        const auto n = static_cast<Eigen::Index>(populations.size());
        FockDensityMatrix out{ComplexMatrix::Zero(n, n), hbar, mass, omega};
        for (Eigen::Index i = 0; i < n; ++i) out.rho(i, i) = populations[static_cast<std::size_t>(i)];
        return out;
    }

    // |psi><psi| for an (unnormalized) amplitude vector.
    static FockDensityMatrix pure(const Eigen::VectorXcd& amplitudes, double hbar = 1.0,
                                  double mass = 1.0, double omega = 1.0) {
        const Eigen::VectorXcd psi = amplitudes.normalized();
        return FockDensityMatrix{psi * psi.adjoint(), hbar, mass, omega};
    }
};

using QuantumState = std::variant<GaussianState, FockDensityMatrix>;

struct Violation {
    std::string invariant;
    double magnitude = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    bool names(const std::string& invariant) const {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const Violation& v) { return v.invariant == invariant; });
    }

    std::string summary() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v.invariant + " (violation " + std::to_string(v.magnitude) + ")";
        }
        return out;
    }
};

namespace detail {

inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
    // Symmetrize first so that round-off asymmetry does not leak into the spectrum.
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double max_hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline void check_positive(ValidationReport& report, const char* name, double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        report.violations.push_back({name, std::isfinite(value) ? -value : INFINITY});
}

}  // namespace detail

inline ValidationReport validate_state(const GaussianState& s) {
    ValidationReport report;
    detail::check_positive(report, "hbar_positive", s.hbar);
    detail::check_positive(report, "sigma_qq_positive", s.sigma_qq);
    detail::check_positive(report, "sigma_pp_positive", s.sigma_pp);
    const double floor = s.hbar * s.hbar / 4.0;
    const double det = s.covariance_determinant();
    if (det - floor < -tolerance::physicality) report.violations.push_back({"physicality", floor - det});
    return report;
}

inline ValidationReport validate_state(const FockDensityMatrix& s) {
    ValidationReport report;
    detail::check_positive(report, "hbar_positive", s.hbar);
    detail::check_positive(report, "mass_positive", s.mass);
    detail::check_positive(report, "omega_positive", s.omega);
    if (s.rho.rows() != s.rho.cols()) {
        report.violations.push_back({"square", std::abs(static_cast<double>(s.rho.rows() - s.rho.cols()))});
        return report;
    }
    if (s.dim() < 2) {
        report.violations.push_back({"dimension", static_cast<double>(2 - s.dim())});
        return report;
    }
    if (!s.rho.allFinite()) {
        report.violations.push_back({"finite", INFINITY});
        return report;
    }
    const double herm = detail::max_hermiticity_defect(s.rho);
    if (herm > tolerance::hermiticity) report.violations.push_back({"hermitian", herm});
    const double trace_defect = std::abs(s.rho.trace() - Complex(1.0, 0.0));
    if (trace_defect > tolerance::trace) report.violations.push_back({"trace", trace_defect});
    const double min_eig = detail::hermitian_eigenvalues(s.rho).minCoeff();
    if (min_eig < -tolerance::eigenvalue) report.violations.push_back({"positive_semidefinite", -min_eig});
    return report;
}

inline ValidationReport validate_state(const QuantumState& state) {
    return std::visit([](const auto& s) { return validate_state(s); }, state);
}

struct QuadratureOperators {
    ComplexMatrix q;
    ComplexMatrix p;
};

// Position and momentum in the truncated number basis:
//   q = sqrt(hbar/(2 m w)) (a + a^dag),  p = i sqrt(hbar m w / 2) (a^dag - a).
// [q, p] = i hbar on every level except the last one.
inline QuadratureOperators fock_quadrature_operators(int dim, double hbar = 1.0, double mass = 1.0,
                                                     double omega = 1.0) {
    if (dim < 2) throw InvalidDimensionError("Fock truncation must be at least 2, got " + std::to_string(dim));
    if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0))
        throw DomainError("hbar, mass and omega must be positive");
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ComplexMatrix a_dag = a.adjoint();
    const double q_scale = std::sqrt(hbar / (2.0 * mass * omega));
    const double p_scale = std::sqrt(hbar * mass * omega / 2.0);
    return {q_scale * (a + a_dag), Complex(0.0, p_scale) * (a_dag - a)};
}

// Copy of `state` with `extra` empty Fock levels appended.
inline FockDensityMatrix embed(const FockDensityMatrix& state, int extra) {
    const int n = state.dim();
    FockDensityMatrix out{ComplexMatrix::Zero(n + extra, n + extra), state.hbar, state.mass, state.omega};
    out.rho.topLeftCorner(n, n) = state.rho;
    return out;
}

}  // namespace hbareff
