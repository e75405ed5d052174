#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hbareff/moments.hpp"
#include "hbareff/oracle.hpp"
#include "test_support.hpp"

using namespace hbareff;

TEST(ComputeMoments, FirstExcitedFockState) {
    const auto m = compute_moments(FockDensityMatrix::diagonal({0, 1, 0, 0}));
    EXPECT_NEAR(m.sigma_qq, 1.5, 1e-14);
    EXPECT_NEAR(m.sigma_pp, 1.5, 1e-14);
    EXPECT_NEAR(m.sigma_qp, 0.0, 1e-14);
    EXPECT_NEAR(m.r, 0.0, 1e-14);
    EXPECT_NEAR(m.mu, 1.0, 1e-14);
    EXPECT_FALSE(m.truncation_warning);
}

TEST(ComputeMoments, GaussianPurityMatchesTruncatedThermalMatrix) {
    const auto g = compute_moments(GaussianState{0, 0, 1.5, 1.5, 0, 1});
    EXPECT_NEAR(g.mu, 1.0 / 3.0, 1e-15);

    // nbar = 1 corresponds to T = 1 / ln 2.
    const auto f = compute_moments(fixtures::thermal_fock(1.0 / std::log(2.0), 60));
    EXPECT_NEAR(f.mu, g.mu, 1e-8);
    EXPECT_NEAR(f.sigma_qq, g.sigma_qq, 1e-8);
    EXPECT_NEAR(f.sigma_pp, g.sigma_pp, 1e-8);
}

TEST(ComputeMoments, CorrelatedPureGaussianAgreesWithSqueezedFockGroundState) {
    const auto g = compute_moments(GaussianState{0, 0, 1.0, 0.5, 0.5, 1});
    EXPECT_NEAR(g.r, 0.5 / std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(g.mu, 1.0, 1e-15);

    // Ground state of H = x^T sigma^{-1} x with sigma^{-1} = [[2, -2], [-2, 4]]
    // is the pure Gaussian with covariance sigma.
    const int dim = 90;
    const auto ops = fock_quadrature_operators(dim);
    const ComplexMatrix h = 2.0 * ops.q * ops.q - 2.0 * (ops.q * ops.p + ops.p * ops.q) + 4.0 * ops.p * ops.p;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()));
    const Eigen::VectorXcd ground = solver.eigenvectors().col(0);
    const auto f = compute_moments(FockDensityMatrix::pure(ground));
    EXPECT_FALSE(f.truncation_warning);
    EXPECT_NEAR(f.sigma_qq, 1.0, 1e-8);
    EXPECT_NEAR(f.sigma_pp, 0.5, 1e-8);
    EXPECT_NEAR(f.sigma_qp, 0.5, 1e-8);
    EXPECT_NEAR(f.r, g.r, 1e-8);
    EXPECT_NEAR(f.mu, 1.0, 1e-10);
}

TEST(ComputeMoments, LinearEntropyIsExactComplement) {
    const auto m = compute_moments(FockDensityMatrix::diagonal({0.3, 0.5, 0.2, 0, 0}));
    EXPECT_EQ(m.linear_entropy, 1.0 - m.mu);
}

TEST(ComputeMoments, TruncationWarningWhenTopLevelsPopulated) {
    EXPECT_TRUE(compute_moments(FockDensityMatrix::diagonal({0.5, 0.5})).truncation_warning);
    EXPECT_TRUE(compute_moments(FockDensityMatrix::diagonal({0.5, 0.3, 0.2, 0})).truncation_warning);
    EXPECT_FALSE(compute_moments(FockDensityMatrix::diagonal({0.5, 0.5, 0, 0})).truncation_warning);
}

TEST(ComputeMoments, RejectsInvalidStates) {
    EXPECT_THROW(compute_moments(GaussianState{0, 0, 0.4, 0.4, 0, 1}), InvalidStateError);
    EXPECT_THROW(compute_moments(FockDensityMatrix::diagonal({0.7, 0.7})), InvalidStateError);
}

TEST(ComputeMoments, DegenerateCorrelation) {
    EXPECT_THROW(correlation_coefficient(1.0, 1.0, 1.0), DegenerateCorrelationError);
    EXPECT_THROW(correlation_coefficient(2.0, 0.5, -1.0), DegenerateCorrelationError);
    EXPECT_NO_THROW(correlation_coefficient(1.0, 1.0, 0.999));
}

TEST(Purity, Examples) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd psi(5);
    for (auto& c : psi) c = Complex(normal(rng), normal(rng));
    EXPECT_NEAR(purity(FockDensityMatrix::pure(psi)), 1.0, 1e-12);
    EXPECT_NEAR(purity(FockDensityMatrix::diagonal({0.5, 0.5})), 0.5, 1e-15);

    // Rank-2 fixed-purity family p = (1 +- sqrt(2 mu - 1)) / 2 at mu = 0.7.
    const double root = std::sqrt(0.4);
    EXPECT_NEAR(purity(FockDensityMatrix::diagonal({0.5 * (1 + root), 0.5 * (1 - root)})), 0.7, 1e-14);
    EXPECT_NEAR(purity(FockDensityMatrix::diagonal({0.816228, 0.183772})), 0.7, 1e-6);
}

TEST(Purity, GaussianDeterminantMustBePositive) {
    EXPECT_THROW(purity(GaussianState{0, 0, 1.0, 1.0, 1.0, 1}), InvalidStateError);
    EXPECT_NEAR(purity(GaussianState{0, 0, 0.5, 0.5, 0, 1}), 1.0, 1e-15);
}

TEST(Purity, ClipsTinyNegativeEigenvaluesAndRejectsLargeOnes) {
    EXPECT_NEAR(purity(FockDensityMatrix::diagonal({1.0, -5e-11})), 1.0, 1e-15);
    EXPECT_THROW(purity(FockDensityMatrix::diagonal({1.1, -0.1})), InvalidStateError);
}

TEST(MomentsProperties, GaussianAndFockThermalStatesAgree) {
    for (const double t : {0.1, 0.3, 0.5, 1.0, 1.5, 2.0}) {
        const double nbar = 1.0 / std::expm1(1.0 / t);
        const auto g = compute_moments(GaussianState{0, 0, nbar + 0.5, nbar + 0.5, 0, 1});
        const auto f = compute_moments(fixtures::thermal_fock(t, 60));
        EXPECT_NEAR(f.mu, g.mu, 1e-8) << "T=" << t;
        EXPECT_NEAR(f.sigma_qq, g.sigma_qq, 1e-8) << "T=" << t;
        EXPECT_NEAR(f.sigma_pp, g.sigma_pp, 1e-8) << "T=" << t;
        EXPECT_NEAR(f.sigma_qp, g.sigma_qp, 1e-8) << "T=" << t;
    }
}

TEST(MomentsProperties, PurityIsUnitarilyInvariant) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + trial % 7;
        const auto rho = fixtures::random_density(dim, dim, rng);
        const ComplexMatrix u = haar_unitary(dim, rng);
        FockDensityMatrix rotated{u * rho.rho * u.adjoint()};
        EXPECT_NEAR(purity(rotated), purity(rho), 1e-10);
    }
}

TEST(MomentsProperties, CorrelatedRelationHoldsForRandomStates) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const int support = 2 + trial % 6;
        const auto m = compute_moments(fixtures::random_density(support, support + 2, rng));
        EXPECT_FALSE(m.truncation_warning);
        const double lhs = m.product() * (1.0 - m.r * m.r);
        EXPECT_NEAR(lhs, m.covariance_determinant(), 1e-12 * std::max(1.0, m.product()));
        EXPECT_GE(m.covariance_determinant(), 0.25 - 1e-10);
    }
}
