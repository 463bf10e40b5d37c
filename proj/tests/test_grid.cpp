#include <wavefd/grid.hpp>
#include <wavefd/scheme.hpp>

#include <gtest/gtest.h>

#include "random.hpp"

using namespace wavefd;

TEST(Grid, StepsFromBounds) {
    auto g = build_grid<double>(0.0, 1.0, 1.0, 100, 200);
    EXPECT_DOUBLE_EQ(g.dx, 0.01);
    EXPECT_DOUBLE_EQ(g.dt, 0.005);
    EXPECT_EQ(g.points(), 101u);
    EXPECT_EQ(g.levels(), 201u);
}

TEST(Grid, ExactStepsAreExact) {
    auto g = build_grid<Rational>(0, 1, 2, 4, 8);
    EXPECT_EQ(g.dx, rational(1, 4));
    EXPECT_EQ(g.dt, rational(1, 4));
    EXPECT_EQ(g.dx * g.i_max, g.x_max - g.x_min);
    EXPECT_EQ(g.dt * g.k_max, g.t_max);
}

TEST(Grid, RejectsDegenerateSizes) {
    try {
        build_grid<double>(0.0, 1.0, 1.0, 1, 10);
        FAIL() << "expected rejection";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::parameter);
        EXPECT_NE(std::string(e.what()).find("i_max too small"), std::string::npos);
    }
    EXPECT_THROW(build_grid<double>(0.0, 1.0, 1.0, 10, 1), Error);
    EXPECT_THROW(build_grid<double>(1.0, 1.0, 1.0, 10, 10), Error);
    EXPECT_THROW(build_grid<double>(0.0, 1.0, 0.0, 10, 10), Error);
}

TEST(Grid, IndexMaps) {
    auto g = build_grid<double>(0.0, 1.0, 1.0, 100, 200);
    EXPECT_EQ(space_index(g, 0.0), 0);
    EXPECT_EQ(space_index(g, 0.015), 1);
    EXPECT_EQ(space_index(g, 1.0), 100);
    EXPECT_EQ(time_index(g, g.t_max), g.k_max);
    EXPECT_THROW(space_index(g, 1.5), Error);
    EXPECT_THROW(time_index(g, -0.1), Error);
}

TEST(Grid, EndpointIndexMatchesExactFloor) {
    // floor(t_max / dt) = k_max exactly in rationals; the clamp keeps binary64 in step.
    for (int k_max : {3, 7, 10, 49, 100, 333}) {
        for (double t_max : {0.1, 0.3, 1.0, 2.7}) {
            auto gd = build_grid<double>(0.0, 1.0, t_max, 10, k_max);
            auto ge = to_exact(gd);
            EXPECT_EQ(time_index(ge, ge.t_max), k_max);
            EXPECT_EQ(time_index(gd, gd.t_max), k_max);
        }
    }
}

TEST(Grid, IndexMapsAreMonotone) {
    fixtures::Gen gen(11);
    auto g = build_grid<double>(-0.5, 2.0, 3.0, 37, 91);
    for (int trial = 0; trial < 1000; ++trial) {
        double x1 = gen.real(-0.5, 2.0), x2 = gen.real(-0.5, 2.0);
        if (x1 > x2) std::swap(x1, x2);
        EXPECT_LE(space_index(g, x1), space_index(g, x2));
        double t1 = gen.real(0.0, 3.0), t2 = gen.real(0.0, 3.0);
        if (t1 > t2) std::swap(t1, t2);
        EXPECT_LE(time_index(g, t1), time_index(g, t2));
    }
}

TEST(Norms, ZeroAndIndicator) {
    auto g = build_grid<double>(0.0, 1.0, 1.0, 100, 100);
    std::vector<double> zero(g.points(), 0.0);
    EXPECT_EQ(dot_dx<double>(zero, zero, g), 0.0);
    EXPECT_EQ(norm_dx<double>(zero, g), 0.0);
    std::vector<double> e1(g.points(), 0.0);
    e1[1] = 1.0;
    EXPECT_DOUBLE_EQ(dot_dx<double>(e1, e1, g), 0.01);
    EXPECT_DOUBLE_EQ(norm_dx<double>(e1, g), 0.1);
}

TEST(Norms, ShapeMismatch) {
    auto g = build_grid<double>(0.0, 1.0, 1.0, 10, 10);
    std::vector<double> a(11, 1.0), b(10, 1.0);
    try {
        dot_dx<double>(a, b, g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::shape);
    }
}

TEST(Norms, ExactPropertiesOnRandomVectors) {
    fixtures::Gen gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = static_cast<int>(gen.integer(2, 12));
        auto g = build_grid<Rational>(0, gen.unit_interval(9) + 1, 1, n, 4);
        auto q = gen.zero_ended(n);
        auto r = gen.zero_ended(n);
        std::span<const Rational> qs(q), rs(r);
        EXPECT_EQ(dot_dx(qs, rs, g), dot_dx(rs, qs, g));

        // Zero ends: interior sum equals the inclusive sum.
        Rational inclusive = 0;
        for (const auto& v : q) inclusive += v * v * g.dx;
        EXPECT_EQ(norm_dx_squared(qs, g), inclusive);

        // Absolute homogeneity, exact on squares.
        Rational s = gen.rational(3, 5);
        std::vector<Rational> sq(q);
        for (auto& v : sq) v *= s;
        EXPECT_EQ(norm_dx_squared(std::span<const Rational>(sq), g), s * s * norm_dx_squared(qs, g));

        // Triangle inequality: |q+r|^2 <= (|q| + |r|)^2  <=>  <q,r> <= |q||r|  <=>  <q,r>^2 <= |q|^2|r|^2 or <q,r> <= 0.
        Rational qr = dot_dx(qs, rs, g);
        EXPECT_TRUE(qr <= 0 || qr * qr <= norm_dx_squared(qs, g) * norm_dx_squared(rs, g));
    }
}

TEST(Norms, AhSeminorm) {
    auto g = build_grid<Rational>(0, 1, 1, 8, 8);
    fixtures::Gen gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto q = gen.zero_ended(8);
        std::span<const Rational> qs(q);
        Rational v = dot_Ah(qs, qs, g, Rational(2));
        EXPECT_GE(v, 0);
        EXPECT_NO_THROW(seminorm_Ah(qs, g, Rational(2)));
    }
    std::vector<Rational> q(9, Rational(0));
    EXPECT_THROW(dot_Ah(std::span<const Rational>(q), std::span<const Rational>(q), g, Rational(0)), Error);
}
