#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

using namespace hbareff;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    return out;
}

std::string data(const char* name) { return fixtures::data_path(name); }

}  // namespace

TEST(CliCheck, VacuumPasses) {
    const auto o = run({"check", "--state", data("vacuum.json")});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["all_pass"], true);
    EXPECT_NEAR(j["bounds"]["slack"]["purity"].get<double>(), 0.0, 1e-15);
}

TEST(CliCheck, SubHeisenbergNamesPhysicality) {
    const auto o = run({"check", "--state", data("sub_heisenberg.json")});
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.out.find("physicality"), std::string::npos);
}

TEST(CliCheck, MixedFockSlack) {
    const auto o = run({"check", "--state", data("fock_mixed.json")});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_NEAR(j["moments"]["mu"].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(j["bounds"]["slack"]["purity"].get<double>(), 0.148717474235544, 1e-12);
}

TEST(CliCheck, InputErrors) {
    EXPECT_EQ(run({"check", "--state", data("bad_syntax.json")}).code, 1);
    EXPECT_EQ(run({"check", "--state", data("bad_unknown_field.json")}).code, 1);
    EXPECT_EQ(run({"check"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST(CliPhi, Values) {
    const auto o = run({"phi", "--mu", "1,0.5,0.2"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0], "mu,phi,phi_mode,fallback_flag");
    EXPECT_EQ(l[1], "1,1,exact-piece-1,0");
    EXPECT_EQ(l[2], "0.5,1.84529946,exact-piece-2,0");
    EXPECT_EQ(fields(l[3])[2], "interpolation");
    EXPECT_EQ(fields(l[3])[3], "1");
    EXPECT_EQ(run({"phi", "--mu", "0"}).code, 1);
}

TEST(CliPhiCurve, ThreePointGrid) {
    const auto o = run({"phi-curve", "--mu-from", "0.388888888888888888", "--mu-to", "1", "--steps", "3"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0], "mu,phi_exact,phi_app,phi_asymptote,fallback_flag");
    EXPECT_NEAR(std::stod(fields(l[1])[1]), 7.0 / 3.0, 1e-8);
    EXPECT_NEAR(std::stod(fields(l[2])[1]), 1.37639044, 1e-8);
    EXPECT_EQ(fields(l[3])[1], "1");
}

TEST(CliPhiCurve, SinglePointAndErrors) {
    const auto o = run({"phi-curve", "--mu-from", "1", "--mu-to", "1", "--steps", "1"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[1], "1,1,1,0.888888889,0");
    EXPECT_EQ(run({"phi-curve", "--mu-from", "0.5", "--mu-to", "1", "--steps", "0"}).code, 1);
    EXPECT_EQ(run({"phi-curve", "--mu-from", "0", "--mu-to", "1", "--steps", "3"}).code, 1);
    const auto some = run({"phi-curve", "--mu-from", "0.5", "--mu-to", "1", "--steps", "2", "--modes", "asymptote"});
    EXPECT_EQ(lines(some.out)[0], "mu,phi_asymptote,fallback_flag");
}

TEST(CliOracle, RankTwoExample) {
    const auto o = run({"oracle", "--mu", "0.7", "--levels", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    EXPECT_EQ(l[0], "mu,phi_oracle,phi_exact,phi_app,rel_err_exact,rel_err_app,method,iterations");
    EXPECT_EQ(fields(l[1])[1], "1.36754447");
    EXPECT_EQ(fields(l[1])[6], "rank2-analytic");
}

TEST(CliOracle, SeedRequiredForStochasticPaths) {
    EXPECT_EQ(run({"oracle", "--mu", "0.5", "--method", "random-density-sampling"}).code, 1);
    EXPECT_EQ(run({"oracle", "--mu", "0.5", "--falsify"}).code, 1);
    EXPECT_EQ(run({"oracle", "--mu", "0.5", "--method", "simplex"}).code, 1);
}

TEST(CliOracle, FalsifyDeterministic) {
    const std::vector<std::string> args{"oracle", "--falsify", "--mu", "0.5,1", "--dim", "4",
                                        "--samples", "300", "--seed", "42"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(lines(a.out)[0], "mu,dim,samples,seed,accepted,rejected,min_slack,hard_region,pass");
}

TEST(CliTunnel, NonConvergenceExitCode) {
    // 8001-node sawtooth: far more kinks than the quadrature's interval budget.
    const auto o = run({"tunnel", "--barrier", data("rough_sampled.json"), "--energy", "1", "--mu", "1"});
    EXPECT_EQ(o.code, 3) << o.out << o.err;
    EXPECT_TRUE(o.out.empty());
}

TEST(CliTunnel, RectangularUnitPurity) {
    const auto o = run({"tunnel", "--barrier", data("rect.json"), "--energy", "0.5", "--mu", "1"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    EXPECT_EQ(l[0], "param_name,param_value,mu,phi,hbar_eff,action,ln_D,D,invariant_product");
    EXPECT_EQ(fields(l[1])[7], "0.135335283");
}

TEST(CliThermal, TemperatureInvariant) {
    const auto o = run({"thermal", "--t-min", "50", "--t-max", "500", "--steps", "4", "--barrier", data("rect.json"),
                        "--energy", "0.5"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 5u);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 1; i < l.size(); ++i) {
        const double v = std::abs(std::stod(fields(l[i])[8]));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_LT(hi / lo, 1.01);
}

TEST(CliThermal, PlainSweepAndJson) {
    const auto o = run({"thermal", "--t-min", "1", "--t-max", "2", "--steps", "2", "--format", "json"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["command"], "thermal");
    EXPECT_NEAR(j["rows"][0]["mu"].get<double>(), 0.462117157260010, 1e-14);
    EXPECT_EQ(run({"thermal", "--t-min", "1", "--t-max", "2", "--steps", "1"}).code, 1);
    EXPECT_EQ(run({"thermal", "--t-min", "-1", "--t-max", "2", "--steps", "3"}).code, 1);
}

TEST(CliDecohere, Trajectory) {
    const auto o = run({"decohere", "--state", data("superposition.json"), "--gamma", "1", "--t-max", "10", "--steps",
                        "11", "--barrier", data("rect.json"), "--energy", "0.5"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 12u);
    EXPECT_EQ(l[0], "t,mu,r,phi,hbar_eff,ln_D,D,inv_mu_ln_D");
    EXPECT_EQ(fields(l[1])[6], "0.135335283");
    EXPECT_NEAR(std::stod(fields(l[11])[6]), 0.338295696898735, 2e-9);
    EXPECT_EQ(run({"decohere", "--state", data("vacuum.json"), "--gamma", "1", "--t-max", "1", "--steps", "3",
                   "--barrier", data("rect.json"), "--energy", "0.5"})
                  .code,
              1);
}

TEST(CliOutput, WritesFile) {
    const std::string path = ::testing::TempDir() + "/hbareff_cli_out.csv";
    const auto o = run({"phi", "--mu", "0.7", "--out", path});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(o.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "mu,phi,phi_mode,fallback_flag\n0.7,1.36754447,exact-piece-1,0\n");
    std::remove(path.c_str());
}

TEST(CliOutput, HelpExitsZero) {
    const auto o = run({"--help"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("phi-curve"), std::string::npos);
}
