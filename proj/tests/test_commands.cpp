#include <wavefd/commands.hpp>

#include <gtest/gtest.h>

using namespace wavefd;

TEST(Commands, SolveDefaultReportsHalfCourant) {
    ExperimentConfig cfg;
    auto r = cmd_solve(cfg);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.summary["cn"]["lossless"], hex_literal(0.5));
    EXPECT_TRUE(r.summary["cfl_satisfied"].get<bool>());
}

TEST(Commands, ExactSolveReportsRationalCourant) {
    ExperimentConfig cfg;
    cfg.scalar = "exact";
    cfg.i_max = 10;
    cfg.k_max = 20;
    auto r = cmd_solve(cfg);
    EXPECT_EQ(r.summary["cn"]["lossless"], "1/2");
    EXPECT_EQ(r.summary["a"]["lossless"], "1/4");
}

TEST(Commands, ZeroProblemGivesAllZeroField) {
    ExperimentConfig cfg;
    cfg.problem = "zero";
    cfg.i_max = 6;
    cfg.k_max = 12;
    auto r = cmd_solve(cfg);
    ASSERT_EQ(r.tables.size(), 1u);
    const std::string csv = r.tables[0].second.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "i,k,value,decimal");
    EXPECT_EQ(r.tables[0].second.size(), 7u * 13u);
    std::size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        std::size_t end = csv.find('\n', pos);
        std::string line = csv.substr(pos, end - pos);
        EXPECT_NE(line.find(",0x0p+0,0"), std::string::npos) << line;
        pos = end + 1;
    }
}

TEST(Commands, RejectsSingleSpaceStep) {
    ExperimentConfig cfg;
    cfg.i_max = 1;
    try {
        cmd_solve(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("must be greater than one"), std::string::npos);
    }
}

TEST(Commands, ValidationMessages) {
    ExperimentConfig cfg;
    cfg.scalar = "float";
    EXPECT_THROW(validate(cfg), Error);
    cfg = {};
    cfg.c = "-1";
    EXPECT_THROW(validate(cfg), Error);
    cfg = {};
    cfg.xi = 1.5;
    EXPECT_THROW(validate(cfg), Error);
}

TEST(Commands, SolveIsDeterministic) {
    ExperimentConfig cfg;
    cfg.i_max = 20;
    cfg.k_max = 40;
    auto a = cmd_solve(cfg), b = cmd_solve(cfg);
    EXPECT_EQ(json_text(a.summary), json_text(b.summary));
    EXPECT_EQ(a.tables[0].second.str(), b.tables[0].second.str());
}

TEST(Commands, OrderSlopeAndShortChain) {
    ExperimentConfig cfg;
    cfg.chain = {20, 40, 80};
    auto r = cmd_order(cfg);
    EXPECT_EQ(r.exit_code, 0);
    cfg.mode = "truncation";
    EXPECT_EQ(cmd_order(cfg).exit_code, 0);
    cfg.chain = {20, 40};
    try {
        cmd_order(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("need >= 3 grids"), std::string::npos);
    }
}

TEST(Commands, EnergyExactIsConstant) {
    ExperimentConfig cfg;
    cfg.scalar = "exact";
    cfg.i_max = 10;
    cfg.k_max = 20;
    auto r = cmd_energy(cfg);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.summary["constant"].get<bool>());
    EXPECT_EQ(r.summary["max_drift"]["lossless"], "0/1");
}

TEST(Commands, RoundoffDefaultAndZero) {
    ExperimentConfig cfg;
    cfg.i_max = 10;
    cfg.k_max = 20;
    auto r = cmd_roundoff(cfg);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.summary["reconstruction"], "exact-equal");
    EXPECT_EQ(r.summary["global_ratio"], decimal_literal(0.0020512820512820513));

    cfg.problem = "zero";
    auto z = cmd_roundoff(cfg);
    EXPECT_EQ(z.exit_code, 0);
    EXPECT_EQ(z.summary["max_abs_delta"]["lossless"], "0/1");
    EXPECT_EQ(z.summary["max_abs_Delta"]["lossless"], "0/1");
}

TEST(Commands, RoundoffFaultInjection) {
    ExperimentConfig cfg;
    cfg.i_max = 10;
    cfg.k_max = 20;
    cfg.fault = "wrong-a";
    auto r = cmd_roundoff(cfg);
    EXPECT_EQ(r.exit_code, kExitViolation);
    EXPECT_FALSE(r.summary["coefficient_gap_ok"].get<bool>());
    EXPECT_FALSE(r.summary["local_bound_holds"].get<bool>());
}

TEST(Commands, FundamentalSmallRanges) {
    ExperimentConfig cfg;
    cfg.depth = 12;
    cfg.range = 10;
    auto r = cmd_fundamental(cfg);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.summary["Lambda_0_0"], "1/1");
    EXPECT_EQ(r.summary["claims"].size(), 5u);
}

TEST(Commands, BoundHoldsOnChain) {
    ExperimentConfig cfg;
    cfg.chain = {25, 50, 100};
    auto r = cmd_bound(cfg);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.summary["bound_holds"].get<bool>());
}

TEST(Commands, QuickReportAndFault) {
    ExperimentConfig cfg;
    cfg.scale = "quick";
    auto r = cmd_report(cfg);
    EXPECT_EQ(r.exit_code, 0) << r.text;
    EXPECT_EQ(r.summary["claims"].size(), claims_catalog().size());
    bool saw_witnessed = false;
    for (const auto& c : r.summary["claims"]) saw_witnessed |= c["status"] == "witnessed";
    EXPECT_TRUE(saw_witnessed);

    cfg.fault = "wrong-a";
    auto f = cmd_report(cfg);
    EXPECT_EQ(f.exit_code, kExitViolation);
    bool located = false;
    for (const auto& c : f.summary["claims"])
        if (c["status"] == "violated" && !c["location"].is_null()) located = true;
    EXPECT_TRUE(located) << f.text;
}
