#pragma once

#include <cmath>
#include <variant>

#include "hbareff/errors.hpp"
#include "hbareff/state.hpp"

namespace hbareff {

struct SecondMoments {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double sigma_qq = 0.0;
    double sigma_pp = 0.0;
    double sigma_qp = 0.0;
    double r = 0.0;
    double mu = 1.0;
    double linear_entropy = 0.0;
    double hbar = 1.0;
    // Set when a Fock state populates either of its top two levels, where the
    // truncated q^2 and p^2 are wrong.
    bool truncation_warning = false;

    double product() const { return sigma_qq * sigma_pp; }
    double covariance_determinant() const { return sigma_qq * sigma_pp - sigma_qp * sigma_qp; }
};

inline constexpr double degenerate_correlation_margin = 1e-12;

inline double correlation_coefficient(double sigma_qq, double sigma_pp, double sigma_qp) {
    const double r = sigma_qp / std::sqrt(sigma_qq * sigma_pp);
    if (!(std::abs(r) < 1.0 - degenerate_correlation_margin))
        throw DegenerateCorrelationError("correlation coefficient |r| = " + std::to_string(std::abs(r)) +
                                         " is not below 1");
    return r;
}

// Eigenvalue-based purity with clipping of tiny negative eigenvalues.
inline double purity(const FockDensityMatrix& s) {
    const Eigen::VectorXd eig = detail::hermitian_eigenvalues(s.rho);
    double mu = 0.0;
    for (const double lambda : eig) {
        if (lambda < -tolerance::eigenvalue)
            throw InvalidStateError("density matrix has eigenvalue " + std::to_string(lambda));
        const double clipped = std::max(lambda, 0.0);
        mu += clipped * clipped;
    }
    return mu;
}

// Standard single-mode Gaussian identity mu = hbar / (2 sqrt(det sigma)).
inline double purity(const GaussianState& s) {
    const double det = s.covariance_determinant();
    if (!(det > 0.0)) throw InvalidStateError("covariance determinant must be positive");
    return s.hbar / (2.0 * std::sqrt(det));
}

inline double purity(const QuantumState& state) {
    return std::visit([](const auto& s) { return purity(s); }, state);
}

namespace detail {

inline SecondMoments finish_moments(SecondMoments m) {
    m.r = correlation_coefficient(m.sigma_qq, m.sigma_pp, m.sigma_qp);
    m.linear_entropy = 1.0 - m.mu;
    return m;
}

}  // namespace detail

inline SecondMoments compute_moments(const GaussianState& s) {
    const auto report = validate_state(s);
    if (!report.ok()) throw InvalidStateError("invalid Gaussian state: " + report.summary());
    SecondMoments m;
    m.mean_q = s.mean_q;
    m.mean_p = s.mean_p;
    m.sigma_qq = s.sigma_qq;
    m.sigma_pp = s.sigma_pp;
    m.sigma_qp = s.sigma_qp;
    m.hbar = s.hbar;
    m.mu = purity(s);
    return detail::finish_moments(m);
}

inline SecondMoments compute_moments(const FockDensityMatrix& s) {
    const auto report = validate_state(s);
    if (!report.ok()) throw InvalidStateError("invalid density matrix: " + report.summary());

    const auto ops = fock_quadrature_operators(s.dim(), s.hbar, s.mass, s.omega);
    const ComplexMatrix& q = ops.q;
    const ComplexMatrix& p = ops.p;
    auto expect = [&](const ComplexMatrix& op) { return (s.rho * op).trace().real(); };

    SecondMoments m;
    m.hbar = s.hbar;
    m.mean_q = expect(q);
    m.mean_p = expect(p);
    m.sigma_qq = expect(q * q) - m.mean_q * m.mean_q;
    m.sigma_pp = expect(p * p) - m.mean_p * m.mean_p;
    m.sigma_qp = 0.5 * expect(q * p + p * q) - m.mean_q * m.mean_p;
    m.mu = purity(s);

    const int n = s.dim();
    m.truncation_warning = s.rho(n - 1, n - 1).real() >= tolerance::truncation_population ||
                           s.rho(n - 2, n - 2).real() >= tolerance::truncation_population;
    return detail::finish_moments(m);
}

inline SecondMoments compute_moments(const QuantumState& state) {
    return std::visit([](const auto& s) { return compute_moments(s); }, state);
}

}  // namespace hbareff
