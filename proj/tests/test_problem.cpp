#include <wavefd/problem.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "random.hpp"

using namespace wavefd;

TEST(StandingWave, BoundaryAndPeak) {
    auto s = standing_wave(1, 1.0);
    fixtures::Gen gen(1);
    for (int j = 0; j < 100; ++j) {
        double t = gen.real(0, 5);
        EXPECT_EQ(s.value(0.0, t), 0.0);
        EXPECT_NEAR(s.value(1.0, t), 0.0, 1e-15);
    }
    EXPECT_DOUBLE_EQ(s.value(0.5, 0.0), 1.0);
}

TEST(StandingWave, SatisfiesWaveEquation) {
    // Central second differences with h = 1e-4 as the oracle for the PDE residual.
    fixtures::Gen gen(2);
    const double h = 1e-4;
    for (int m : {1, 2}) {
        for (double c : {1.0, 0.7}) {
            auto s = standing_wave(m, c);
            for (int j = 0; j < 100; ++j) {
                double x = gen.real(0, 1), t = gen.real(0, 2);
                double ptt = (s.value(x, t + h) - 2 * s.value(x, t) + s.value(x, t - h)) / (h * h);
                double pxx = (s.value(x + h, t) - 2 * s.value(x, t) + s.value(x - h, t)) / (h * h);
                EXPECT_LE(std::fabs(ptt - c * c * pxx), 1e-5 * (m * m));
                EXPECT_LE(std::fabs(s.value(x, t)), 1.0);
                // Closed-form partials agree with the same finite differences.
                EXPECT_NEAR(s.d_tt(x, t), ptt, 1e-5 * m * m);
                EXPECT_NEAR(s.d_xx(x, t), pxx, 1e-5 * m * m);
            }
        }
    }
}

TEST(StandingWave, RejectsBadParameters) {
    EXPECT_THROW(standing_wave(0, 1.0), Error);
    EXPECT_THROW(standing_wave(1, 0.0), Error);
}

namespace {

/// Taylor polynomial of sin(kx)cos(wt) of the given degree, built from exact partial derivatives.
double taylor_poly(double k, double w, double x, double t, double hx, double ht, int degree) {
    auto dsin = [](int n, double v) {
        switch (n % 4) {
            case 0: return std::sin(v);
            case 1: return std::cos(v);
            case 2: return -std::sin(v);
            default: return -std::cos(v);
        }
    };
    auto dcos = [](int n, double v) {
        switch (n % 4) {
            case 0: return std::cos(v);
            case 1: return -std::sin(v);
            case 2: return -std::cos(v);
            default: return std::sin(v);
        }
    };
    double sum = 0;
    for (int n = 0; n <= degree; ++n)
        for (int j = 0; j <= n; ++j) {
            double partial = std::pow(k, j) * dsin(j, k * x) * std::pow(w, n - j) * dcos(n - j, w * t);
            sum += partial * std::pow(hx, j) * std::pow(ht, n - j) / (std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0));
        }
    return sum;
}

}  // namespace

TEST(StandingWave, TaylorConstantsBoundTheRemainder) {
    // Brute-force oracle: the fixture constants dominate the true remainder at random points.
    fixtures::Gen gen(5);
    for (double c : {1.0, 2.0}) {
        auto s = standing_wave(1, c);
        ASSERT_TRUE(s.taylor.has_value());
        const double k = std::numbers::pi, w = k * c;
        for (int j = 0; j < 2000; ++j) {
            double x = gen.real(0, 1), t = gen.real(0, 1);
            double r = gen.real(1e-3, s.taylor->alpha3), th = gen.real(0, 2 * std::numbers::pi);
            double hx = r * std::cos(th), ht = r * std::sin(th);
            double exact = s.value(x + hx, t + ht);
            EXPECT_LE(std::fabs(exact - taylor_poly(k, w, x, t, hx, ht, 3)), s.taylor->C3 * std::pow(r, 4) * (1 + 1e-9));
            EXPECT_LE(std::fabs(exact - taylor_poly(k, w, x, t, hx, ht, 4)), s.taylor->C4 * std::pow(r, 5) * (1 + 1e-9) + 1e-15);
        }
    }
    // Frozen fixture for m = 1, c = 1: C_n = pi^{n+1} 2^{(n+1)/2} / (n+1)!.
    auto s = standing_wave(1, 1.0);
    EXPECT_NEAR(s.taylor->C3, std::pow(std::numbers::pi, 4) * 4.0 / 24.0, 1e-12);
    EXPECT_NEAR(s.taylor->C4, std::pow(std::numbers::pi, 5) * std::pow(2.0, 2.5) / 120.0, 1e-12);
}

TEST(AntisymExtend, IdentityOnBaseDomain) {
    std::vector<Rational> q = {0, 1, rational(-2, 3), 5, 0};
    for (long j = 0; j <= 4; ++j) EXPECT_EQ(antisym_extend<Rational>(q, j), q[static_cast<std::size_t>(j)]);
}

TEST(AntisymExtend, ReflectionsAndPeriod) {
    fixtures::Gen gen(9);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(gen.integer(2, 9));
        auto q = gen.zero_ended(n);
        std::span<const Rational> qs(q);
        for (long j = -3L * n; j <= 3L * n; ++j) {
            // Explicit fold: reduce j mod 2n, then reflect the upper half with a sign flip.
            long r = j;
            while (r < 0) r += 2 * n;
            while (r >= 2 * n) r -= 2 * n;
            Rational expected = r <= n ? q[static_cast<std::size_t>(r)] : Rational(-q[static_cast<std::size_t>(2 * n - r)]);
            EXPECT_EQ(antisym_extend(qs, j), expected);
            EXPECT_EQ(antisym_extend(qs, j + 2L * n), antisym_extend(qs, j));
            EXPECT_EQ(antisym_extend(qs, -j), -antisym_extend(qs, j));
            EXPECT_EQ(antisym_extend(qs, 2L * n - j), -antisym_extend(qs, j));
        }
    }
}

TEST(AntisymExtend, RejectsNonzeroBoundary) {
    std::vector<Rational> q = {1, 2, 0};
    try {
        antisym_extend<Rational>(q, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::contract);
    }
}

TEST(AntisymExtend, FunctionFormIsOddAboutEnds) {
    auto f = [](double x) { return x * (1 - x) * (2 + x); };
    fixtures::Gen gen(4);
    for (int j = 0; j < 200; ++j) {
        double x = gen.real(0, 1), h = gen.real(0, 1);
        EXPECT_NEAR(antisym_extend(f, 0.0, 1.0, -x), -f(x), 1e-15);
        EXPECT_NEAR(antisym_extend(f, 0.0, 1.0, 0.0 + h), -antisym_extend(f, 0.0, 1.0, 0.0 - h), 1e-15);
        EXPECT_NEAR(antisym_extend(f, 0.0, 1.0, 1.0 + h), -antisym_extend(f, 0.0, 1.0, 1.0 - h), 1e-15);
    }
}

TEST(Dalembert, MatchesStandingWave) {
    fixtures::Gen gen(6);
    for (int m : {1, 3}) {
        for (double c : {1.0, 0.37, 2.5}) {
            const double k = m * std::numbers::pi;
            auto p0 = [k](double x) { return x == 1.0 ? 0.0 : std::sin(k * x); };
            auto d = dalembert_zero_velocity(p0, c);
            auto s = standing_wave(m, c);
            for (int j = 0; j < 1000; ++j) {
                double x = gen.real(0, 1), t = gen.real(0, 3);
                EXPECT_NEAR(d.value(x, t), s.value(x, t), 1e-12);
            }
        }
    }
}

TEST(Dalembert, InitialValueAndBoundary) {
    auto p0 = [](double x) { return x * (1 - x); };
    auto d = dalembert_zero_velocity(p0, 1.3);
    fixtures::Gen gen(8);
    for (int j = 0; j < 100; ++j) {
        double x = gen.real(0, 1), t = gen.real(0, 4);
        EXPECT_DOUBLE_EQ(d.value(x, 0.0), p0(x));
        EXPECT_NEAR(d.value(0.0, t), 0.0, 1e-15);
    }
    EXPECT_THROW(dalembert_zero_velocity(p0, 1.0, 0.0, 1.0, false), Error);
}

TEST(Problem, DefaultProblemSamples) {
    auto p = default_problem();
    auto g = build_grid<Rational>(0, 1, 1, 4, 8);
    auto u0 = p.sample_u0(g);
    EXPECT_EQ(u0[0], 0);
    EXPECT_EQ(u0[1], rational(3, 16));
    EXPECT_EQ(u0[2], rational(1, 4));
    EXPECT_TRUE(p.u1_is_zero());
    EXPECT_TRUE(p.source_is_zero());
}

TEST(Problem, SampledDataMustMatchGrid) {
    WaveProblem p;
    p.u0_samples = std::vector<Rational>{0, 1, 0};
    auto g = build_grid<Rational>(0, 1, 1, 4, 8);
    EXPECT_THROW(p.sample_u0(g), Error);
    p.u0_samples = std::vector<Rational>{1, 1, 1, 1, 0};
    EXPECT_THROW(p.sample_u0(g), Error);
}
