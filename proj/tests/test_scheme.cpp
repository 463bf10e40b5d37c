#include <wavefd/roundoff.hpp>
#include <wavefd/scheme.hpp>

#include <gtest/gtest.h>

#include "random.hpp"

using namespace wavefd;

TEST(ApplyAh, PolynomialsOfLowDegree) {
    auto g = build_grid<Rational>(rational(-1, 3), 2, 1, 9, 4);
    const Rational c = rational(3, 2);
    std::vector<Rational> constant(g.points(), rational(7, 5)), linear(g.points()), quad(g.points());
    for (int i = 0; i <= g.i_max; ++i) {
        linear[i] = g.x(i);
        quad[i] = g.x(i) * g.x(i);
    }
    auto a0 = apply_Ah(c, g, std::span<const Rational>(constant));
    auto a1 = apply_Ah(c, g, std::span<const Rational>(linear));
    auto a2 = apply_Ah(c, g, std::span<const Rational>(quad));
    for (int i = 1; i < g.i_max; ++i) {
        EXPECT_EQ(a0[i], 0);
        EXPECT_EQ(a1[i], 0);
        EXPECT_EQ(a2[i], -2 * c * c);
    }
    EXPECT_EQ(a2[0], 0);
    EXPECT_EQ(a2[g.i_max], 0);
}

TEST(Cfl, CourantNumberAndVerdict) {
    auto g = build_grid<double>(0.0, 1.0, 1.0, 100, 200);
    EXPECT_DOUBLE_EQ(courant_number(1.0, g), 0.5);
    auto rep = check_cfl(1.0, g, 0x1p-50);
    EXPECT_TRUE(rep.satisfied);
    EXPECT_DOUBLE_EQ(rep.cn, 0.5);

    auto g1 = build_grid<Rational>(0, 1, 1, 10, 10);
    for (double xi : {0x1p-50, 0.1, 0.5, 0.999}) EXPECT_FALSE(check_cfl(Rational(1), g1, xi).satisfied);

    auto g2 = build_grid<double>(0.0, 1.0, 1.0, 10, 10);
    auto rep2 = check_cfl(2.0, g2, 0.5);
    EXPECT_DOUBLE_EQ(rep2.cn, 2.0);
    EXPECT_FALSE(rep2.satisfied);

    EXPECT_THROW(check_cfl(1.0, g, 0.0), Error);
    EXPECT_THROW(check_cfl(1.0, g, 1.0), Error);
}

TEST(Solve, ZeroProblemStaysZero) {
    WaveProblem p;
    auto g = build_grid<double>(0.0, 1.0, 1.0, 20, 40);
    auto run = solve(p, g);
    for (int k = 0; k <= g.k_max; ++k)
        for (int i = 0; i <= g.i_max; ++i) EXPECT_EQ(run.field(i, k), 0.0);
}

TEST(Solve, RefusesCflViolationUnlessWarned) {
    auto p = default_problem();
    auto g = build_grid<double>(0.0, 1.0, 1.0, 10, 5);
    try {
        solve(p, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::cfl_violation);
    }
    SolveOptions warn;
    warn.cfl_policy = CflPolicy::warn;
    auto run = solve(p, g, warn);
    EXPECT_FALSE(run.cfl.satisfied);
}

TEST(Solve, AbortsOnNonFinite) {
    auto p = default_problem();
    p.c = 64;
    SolveOptions warn;
    warn.cfl_policy = CflPolicy::warn;
    auto g = build_grid<double>(0.0, 1.0, 1.0, 50, 100);
    try {
        solve(p, g, warn);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::non_finite);
        EXPECT_NE(std::string(e.what()).find("(i="), std::string::npos);
    }
}

TEST(Solve, SmallExactCaseMatchesIndependentEvaluation) {
    // Frozen from tests/oracles/oracle.py (Python fractions, independent evaluation).
    auto p = default_problem();
    auto g = build_grid<Rational>(0, 1, rational(1, 2), 4, 4);
    auto run = solve(p, g);
    EXPECT_EQ(run.a, rational(1, 4));
    const std::vector<std::vector<Rational>> expected = {
        {0, rational(3, 16), rational(1, 4), rational(3, 16), 0},
        {0, rational(11, 64), rational(15, 64), rational(11, 64), 0},
        {0, rational(33, 256), rational(3, 16), rational(33, 256), 0},
        {0, rational(35, 512), rational(57, 512), rational(35, 512), 0},
        {0, rational(3, 2048), rational(7, 512), rational(3, 2048), 0},
    };
    for (int k = 0; k <= 4; ++k)
        for (int i = 0; i <= 4; ++i) EXPECT_EQ(run.field(i, k), expected[k][i]) << "i=" << i << " k=" << k;
}

TEST(Solve, BoundaryRowsAreZero) {
    fixtures::Gen gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        WaveProblem p;
        const int n = static_cast<int>(gen.integer(2, 10));
        p.c = gen.unit_interval(5);
        p.u0_samples = gen.zero_ended(n);
        p.u1_samples = gen.zero_ended(n);
        std::vector<std::vector<Rational>> s;
        for (int k = 0; k <= 8; ++k) s.push_back(gen.zero_ended(n));
        p.source_samples = s;
        auto g = build_grid<Rational>(0, 1, rational(1, 2), n, 8);
        SolveOptions o;
        o.cfl_policy = CflPolicy::warn;
        auto run = solve(p, g, o);
        for (int k = 0; k <= 8; ++k) {
            EXPECT_EQ(run.field(0, k), 0);
            EXPECT_EQ(run.field(n, k), 0);
        }
    }
}

namespace {

WaveProblem random_problem(fixtures::Gen& gen, int n, int k_max, const Rational& c) {
    WaveProblem p;
    p.c = c;
    p.u0_samples = gen.zero_ended(n);
    p.u1_samples = gen.zero_ended(n);
    std::vector<std::vector<Rational>> s;
    for (int k = 0; k <= k_max; ++k) s.push_back(gen.zero_ended(n));
    p.source_samples = s;
    return p;
}

WaveProblem combine(const WaveProblem& a, const Rational& alpha, const WaveProblem& b, const Rational& beta) {
    WaveProblem out = a;
    auto mix = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        std::vector<Rational> r(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) r[j] = alpha * x[j] + beta * y[j];
        return r;
    };
    out.u0_samples = mix(*a.u0_samples, *b.u0_samples);
    out.u1_samples = mix(*a.u1_samples, *b.u1_samples);
    std::vector<std::vector<Rational>> s;
    for (std::size_t k = 0; k < a.source_samples->size(); ++k)
        s.push_back(mix((*a.source_samples)[k], (*b.source_samples)[k]));
    out.source_samples = s;
    return out;
}

}  // namespace

TEST(Solve, LinearInTheData) {
    fixtures::Gen gen(31);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = static_cast<int>(gen.integer(2, 8));
        const int k_max = static_cast<int>(gen.integer(2, 10));
        auto g = build_grid<Rational>(0, 1, Rational(k_max, 2 * n), n, k_max);
        const Rational c = 1;
        auto p1 = random_problem(gen, n, k_max, c);
        auto p2 = random_problem(gen, n, k_max, c);
        Rational alpha = gen.rational(3, 7), beta = gen.rational(3, 7);
        auto r1 = solve(p1, g), r2 = solve(p2, g), r = solve(combine(p1, alpha, p2, beta), g);
        for (int k = 0; k <= k_max; ++k)
            for (int i = 0; i <= n; ++i) EXPECT_EQ(r.field(i, k), alpha * r1.field(i, k) + beta * r2.field(i, k));
    }
}

TEST(Solve, ExactRunSatisfiesDiscreteOperatorIdentically) {
    fixtures::Gen gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = static_cast<int>(gen.integer(3, 9));
        const int k_max = 12;
        auto g = build_grid<Rational>(0, 1, rational(3, 5), n, k_max);
        auto p = random_problem(gen, n, k_max, gen.unit_interval(6));
        SolveOptions o;
        o.cfl_policy = CflPolicy::warn;
        auto run = solve(p, g, o);
        for (int k = 2; k <= k_max; ++k) {
            auto res = scheme_residual(run, k);
            for (const auto& v : res) EXPECT_EQ(v, 0);
        }
        // First step: (p^1 - p^0)/dt + dt/2 A_h p^0 = u1.
        auto ah = apply_Ah(run.problem.velocity<Rational>(), g, run.field.level(0));
        for (int i = 1; i < n; ++i)
            EXPECT_EQ((run.field(i, 1) - run.field(i, 0)) / g.dt + g.dt / 2 * ah[i], (*p.u1_samples)[i]);
    }
}

TEST(Solve, Binary64FollowsReferenceSchedule) {
    // Replays the reference program's loops verbatim and demands bit equality.
    const int ni = 17, nk = 40;
    const double v = 0.9;
    auto g = build_grid<double>(0.0, 1.0, 1.3, ni, nk);
    auto p = default_problem(exact(v));
    auto run = solve(p, g);
    const double dx = 1. / ni, dt = 1.3 / nk;
    double a1 = dt / dx * v;
    double a = a1 * a1;
    std::vector<std::vector<double>> ref(ni + 1, std::vector<double>(nk + 1, 0.0));
    for (int i = 1; i < ni; ++i) {
        double x = i * dx;
        ref[i][0] = x * (1. - x);
    }
    for (int i = 1; i < ni; ++i) {
        double dp = ref[i + 1][0] - 2. * ref[i][0] + ref[i - 1][0];
        ref[i][1] = ref[i][0] + 0.5 * a * dp;
    }
    for (int k = 1; k < nk; ++k)
        for (int i = 1; i < ni; ++i) {
            double dp = ref[i + 1][k] - 2. * ref[i][k] + ref[i - 1][k];
            ref[i][k + 1] = 2. * ref[i][k] - ref[i][k - 1] + a * dp;
        }
    EXPECT_EQ(run.a, a);
    for (int k = 0; k <= nk; ++k)
        for (int i = 0; i <= ni; ++i) EXPECT_EQ(run.field(i, k), ref[i][k]) << i << "," << k;
}

TEST(Solve, Binary64AgreesWithExactWithinGlobalBound) {
    auto p = default_problem();
    auto g = build_grid<double>(0.0, 1.0, 1.0, 16, 40);
    auto fr = solve(p, g);
    auto er = solve(p, to_exact(g));
    for (int k = 0; k <= g.k_max; ++k)
        for (int i = 0; i <= g.i_max; ++i)
            EXPECT_LE(abs(exact(fr.field(i, k)) - er.field(i, k)), global_error_bound(k));
}
