#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hbareff/oracle.hpp"
#include "test_support.hpp"

using namespace hbareff;

namespace {

double total(const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

void expect_on_simplex(const MinimizationResult& r) {
    EXPECT_NEAR(total(r.optimal_weights), 1.0, 1e-12);
    for (const double x : r.optimal_weights) EXPECT_GE(x, 0.0);
}

}  // namespace

TEST(MinProduct, RankTwoAtSevenTenths) {
    const auto r = min_product_fock_mixture(0.7, 2, MinimizationMethod::rank2_analytic);
    EXPECT_NEAR(r.min_product, 0.467544467966324, 1e-14);
    ASSERT_EQ(r.optimal_weights.size(), 2u);
    EXPECT_NEAR(r.optimal_weights[0], 0.816227766016838, 1e-14);
    EXPECT_NEAR(r.optimal_weights[1], 0.183772233983162, 1e-14);
    EXPECT_NEAR(r.achieved_mu, 0.7, 1e-14);
    EXPECT_NEAR(r.phi(), phi_piece1(0.7), 1e-14);
    expect_on_simplex(r);
}

TEST(MinProduct, PureStateIsGroundState) {
    for (int levels : {2, 3, 5, 8}) {
        const auto r = min_product_fock_mixture(1.0, levels);
        EXPECT_NEAR(r.min_product, 0.25, 1e-15);
        EXPECT_NEAR(r.optimal_weights[0], 1.0, 1e-15);
    }
}

TEST(MinProduct, RankThreeAtHalf) {
    const auto r = min_product_fock_mixture(0.5, 3, MinimizationMethod::rank3_analytic);
    EXPECT_NEAR(r.min_product, 0.851282525764456, 1e-13);
    EXPECT_NEAR(r.achieved_mu, 0.5, 1e-14);
    expect_on_simplex(r);
    const auto grid = min_product_fock_mixture(0.5, 3, MinimizationMethod::grid_refine);
    EXPECT_NEAR(grid.min_product, r.min_product, 1e-4);
    EXPECT_NEAR(grid.achieved_mu, 0.5, 1e-8);
}

TEST(MinProduct, HbarScalesProduct) {
    MinimizationOptions opt;
    opt.hbar = 2.0;
    const auto r = min_product_fock_mixture(0.7, 2, MinimizationMethod::rank2_analytic, opt);
    EXPECT_NEAR(r.min_product, 4.0 * 0.467544467966324, 1e-13);
    EXPECT_NEAR(r.phi(), phi_piece1(0.7), 1e-14);
}

TEST(MinProduct, Errors) {
    EXPECT_THROW(min_product_fock_mixture(0.3, 3), InfeasibleError);
    EXPECT_THROW(min_product_fock_mixture(0.4, 2), InfeasibleError);
    EXPECT_THROW(min_product_fock_mixture(1.1, 3), InfeasibleError);
    EXPECT_THROW(min_product_fock_mixture(0.5, 1), InvalidDimensionError);
    EXPECT_THROW(min_product_fock_mixture(0.45, 3, MinimizationMethod::rank2_analytic), PieceDomainError);
    EXPECT_THROW(min_product_fock_mixture(0.7, 3, MinimizationMethod::rank3_analytic), PieceDomainError);
    EXPECT_THROW(min_product_fock_mixture(0.5, 2, MinimizationMethod::rank3_analytic), PieceDomainError);
}

TEST(MinProduct, GridAndGradientAgree) {
    for (int levels : {3, 4, 5}) {
        for (double mu : {0.4, 0.45, 0.5, 0.6, 0.8}) {
            if (mu < 1.0 / levels) continue;
            const auto g = min_product_fock_mixture(mu, levels, MinimizationMethod::grid_refine);
            const auto pg = min_product_fock_mixture(mu, levels, MinimizationMethod::projected_gradient);
            EXPECT_NEAR(g.min_product, pg.min_product, 1e-4) << "levels " << levels << " mu " << mu;
            EXPECT_NEAR(g.achieved_mu, mu, 1e-8);
            EXPECT_NEAR(pg.achieved_mu, mu, 1e-8);
            expect_on_simplex(g);
            expect_on_simplex(pg);
        }
    }
}

TEST(MinProduct, AnalyticFamiliesAreOptimalAgainstNumericalSearch) {
    for (double mu : {0.56, 0.65, 0.8, 0.95}) {
        const auto a = min_product_fock_mixture(mu, 4, MinimizationMethod::rank2_analytic);
        const auto pg = min_product_fock_mixture(mu, 4, MinimizationMethod::projected_gradient);
        EXPECT_NEAR(a.min_product, pg.min_product, 1e-8) << mu;
    }
    for (double mu : {0.39, 0.45, 0.5, 0.55}) {
        const auto a = min_product_fock_mixture(mu, 5, MinimizationMethod::rank3_analytic);
        const auto pg = min_product_fock_mixture(mu, 5, MinimizationMethod::projected_gradient);
        EXPECT_NEAR(a.min_product, pg.min_product, 1e-7) << mu;
    }
}

TEST(MinProduct, RandomSamplingNeverBeatsAnalyticMinimum) {
    MinimizationOptions opt;
    opt.samples = 5000;
    opt.seed = 9;
    const auto s = min_product_fock_mixture(0.5, 4, MinimizationMethod::random_density_sampling, opt);
    EXPECT_GE(s.min_product, min_product_fock_mixture(0.5, 4).min_product - 1e-12);
    EXPECT_NEAR(s.achieved_mu, 0.5, 1e-12);
    const auto again = min_product_fock_mixture(0.5, 4, MinimizationMethod::random_density_sampling, opt);
    EXPECT_EQ(s.min_product, again.min_product);
    EXPECT_EQ(s.optimal_weights, again.optimal_weights);
}

TEST(MinProduct, MoreLevelsNeverIncreaseMinimum) {
    for (double mu : {0.42, 0.5, 0.6}) {
        double previous = INFINITY;
        for (int levels = 3; levels <= 6; ++levels) {
            const auto r = min_product_fock_mixture(mu, levels, MinimizationMethod::projected_gradient);
            EXPECT_LE(r.min_product, previous + 1e-10) << "mu " << mu << " levels " << levels;
            previous = r.min_product;
        }
    }
}

TEST(ProjectToPurity, HitsTargetAndPreservesOrder) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = fixtures::random_simplex(6, rng);
        const double start = oracle_detail::sum_squares(p);
        const double target = std::min(0.95, start + 0.3);
        const auto q = project_to_purity(p, target);
        ASSERT_TRUE(q.has_value());
        EXPECT_NEAR(oracle_detail::sum_squares(*q), target, 1e-13);
        EXPECT_NEAR(total(*q), 1.0, 1e-13);
        const auto argmax_p = std::max_element(p.begin(), p.end()) - p.begin();
        const auto argmax_q = std::max_element(q->begin(), q->end()) - q->begin();
        EXPECT_EQ(argmax_p, argmax_q);
    }
    EXPECT_FALSE(project_to_purity({0.5, 0.5}, 0.7).has_value());
    EXPECT_FALSE(project_to_purity({0.9, 0.1}, 0.4).has_value());
}

TEST(HaarUnitary, IsUnitary) {
    std::mt19937_64 rng(8);
    for (int dim = 1; dim <= 8; ++dim) {
        const ComplexMatrix u = haar_unitary(dim, rng);
        EXPECT_LT((u * u.adjoint() - ComplexMatrix::Identity(dim, dim)).norm(), 1e-13);
    }
}

TEST(Falsification, PureStatesRespectCorrelatedRelation) {
    const auto rep = falsification_sweep(1.0, 4, 10000, 1);
    EXPECT_EQ(rep.accepted, 10000);
    EXPECT_GE(rep.min_slack, -1e-8);
    EXPECT_TRUE(rep.passed());
}

TEST(Falsification, HalfPurityDimSixSeed42MatchesGolden) {
    const auto rep = falsification_sweep(0.5, 6, 10000, 42);
    EXPECT_GE(rep.min_slack, -1e-8);
    EXPECT_TRUE(rep.hard_region);
    EXPECT_TRUE(rep.passed());

    std::ifstream in(fixtures::data_path("golden_falsify_mu0.5_dim6_seed42.txt"));
    ASSERT_TRUE(in.good());
    double golden_slack = 0.0;
    long golden_accepted = 0;
    in >> golden_slack >> golden_accepted;
    EXPECT_EQ(rep.accepted, golden_accepted);
    EXPECT_NEAR(rep.min_slack, golden_slack, 1e-9);
}

TEST(Falsification, DeterministicForFixedSeed) {
    const auto a = falsification_sweep(0.7, 5, 500, 123);
    const auto b = falsification_sweep(0.7, 5, 500, 123);
    EXPECT_EQ(a.min_slack, b.min_slack);
    EXPECT_EQ(a.worst_spectrum, b.worst_spectrum);
    EXPECT_EQ(a.accepted, b.accepted);
}

TEST(Falsification, Errors) {
    EXPECT_THROW(falsification_sweep(0.5, 9, 10, 1), InvalidDimensionError);
    EXPECT_THROW(falsification_sweep(0.5, 1, 10, 1), InvalidDimensionError);
    EXPECT_THROW(falsification_sweep(0.5, 4, 0, 1), DomainError);
    EXPECT_THROW(falsification_sweep(0.5, 4, 1'000'001, 1), DomainError);
    EXPECT_THROW(falsification_sweep(0.2, 4, 10, 1), InfeasibleError);
}

TEST(TwoLevelScan, MinimumIsDiagonalMixture) {
    const auto scan = two_level_scan(0.9);
    EXPECT_NEAR(scan.phi(), min_product_fock_mixture(0.9, 2).phi(), 1e-6);
    EXPECT_NEAR(std::sin(scan.polar), 0.0, 1e-12);
}

TEST(PhiCurve, Examples) {
    auto rows = phi_curve_certified({1.0}, 3);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(rows[0].phi_oracle, 1.0, 1e-15);

    rows = phi_curve_certified({5.0 / 9.0}, 3);
    EXPECT_NEAR(rows[0].phi_oracle, 5.0 / 3.0, 1e-6);
    rows = phi_curve_certified({5.0 / 9.0}, 3, MinimizationMethod::rank3_analytic);
    EXPECT_NEAR(rows[0].phi_oracle, 5.0 / 3.0, 1e-6);

    rows = phi_curve_certified({0.45}, 3);
    EXPECT_NEAR(rows[0].phi_oracle, 2.03390821692070, 1e-12);
    EXPECT_NEAR(rows[0].rel_err_exact, 0.0, 1e-12);
    EXPECT_EQ(rows[0].method, MinimizationMethod::rank3_analytic);
}

TEST(PhiCurve, OracleMatchesExactPieces) {
    std::vector<double> upper;
    for (int i = 0; i < 50; ++i) upper.push_back(5.0 / 9.0 + (1.0 - 5.0 / 9.0) * i / 49.0);
    for (const auto& row : phi_curve_certified(upper, 2)) EXPECT_LT(std::abs(row.phi_oracle - row.phi_exact), 1e-6);

    std::vector<double> lower;
    for (int i = 0; i < 20; ++i) lower.push_back(7.0 / 18.0 + (5.0 / 9.0 - 7.0 / 18.0) * i / 19.0);
    for (const auto& row : phi_curve_certified(lower, 3, MinimizationMethod::grid_refine))
        EXPECT_LT(std::abs(row.phi_oracle - row.phi_exact), 1e-4) << row.mu;
}

TEST(MethodNames, RoundTrip) {
    for (auto m : {MinimizationMethod::automatic, MinimizationMethod::rank2_analytic, MinimizationMethod::rank3_analytic,
                   MinimizationMethod::grid_refine, MinimizationMethod::projected_gradient,
                   MinimizationMethod::random_density_sampling})
        EXPECT_EQ(parse_minimization_method(to_string(m)), m);
    EXPECT_FALSE(parse_minimization_method("simplex").has_value());
}
