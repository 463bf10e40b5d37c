#pragma once

#include <wavefd/energy.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace wavefd {

/// e_i^k = ref(x_i, t^k) - p_i^k over the whole grid, in binary64.
template <Scalar S>
DiscreteField<double> convergence_error(const AnalyticSolution& ref, const SchemeRun<S>& run) {
    const auto& g = run.grid;
    DiscreteField<double> e(g.i_max, g.k_max);
    for (int k = 0; k <= g.k_max; ++k) {
        const double t = to_double(g.t(k));
        for (int i = 0; i <= g.i_max; ++i) {
            // Boundary nodes of the reference vanish exactly by the Dirichlet condition.
            const double r = (i == 0 || i == g.i_max) ? 0.0 : ref.value(to_double(g.x(i)), t);
            e(i, k) = r - to_double(run.field(i, k));
        }
    }
    return e;
}

/// Truncation error: the discrete operators applied to samples of the exact solution.
/// Level 0 is zero (samples are the data), level 1 uses the first-step operator minus
/// dp/dt(., 0), levels >= 2 use L_h. Boundary rows are zero.
template <Scalar S>
DiscreteField<S> truncation_error(const AnalyticSolution& ref, const Grid<S>& g, const S& c) {
    DiscreteField<S> bar(g.i_max, g.k_max);
    for (int k = 0; k <= g.k_max; ++k)
        for (int i = 0; i <= g.i_max; ++i) bar(i, k) = ref.eval<S>(g.x(i), g.t(k));

    DiscreteField<S> eps(g.i_max, g.k_max);
    const S dt2 = g.dt * g.dt;

    auto ah0 = apply_Ah(c, g, bar.level(0));
    for (int i = 1; i < g.i_max; ++i) {
        S l1 = (bar(i, 1) - bar(i, 0)) / g.dt + g.dt / 2 * ah0[i];
        eps(i, 1) = l1 - ref.eval_d_t<S>(g.x(i), S(0));
    }
    for (int k = 2; k <= g.k_max; ++k) {
        auto ah = apply_Ah(c, g, bar.level(k - 1));
        for (int i = 1; i < g.i_max; ++i)
            eps(i, k) = (bar(i, k) - S(2) * bar(i, k - 1) + bar(i, k - 2)) / dt2 + ah[i];
    }
    return eps;
}

/// max over k of norm_dx of level k.
template <Scalar S>
double max_level_norm(const DiscreteField<S>& f, const Grid<S>& g) {
    double m = 0;
    for (int k = 0; k <= f.k_max(); ++k) m = std::max(m, norm_dx(f.level(k), g));
    return m;
}

inline double max_level_norm(const DiscreteField<double>& f, const Grid<Rational>& g) {
    Grid<double> gd = build_grid<double>(to_double(g.x_min), to_double(g.x_max), to_double(g.t_max), g.i_max, g.k_max);
    return max_level_norm(f, gd);
}

enum class OrderMode { convergence, truncation };

inline const char* to_string(OrderMode m) { return m == OrderMode::convergence ? "convergence" : "truncation"; }

struct OrderPoint {
    int i_max = 0;
    int k_max = 0;
    double dx = 0;
    double dt = 0;
    double error = 0;
};

struct OrderResult {
    std::vector<OrderPoint> points;
    double slope = 0;
    OrderMode mode = OrderMode::convergence;
};

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorKind::shape, "log_log_slope: need matching samples");
    double mx = 0, my = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        require(x[j] > 0 && y[j] > 0, ErrorKind::numeric_domain, "undefined slope: zero or negative error norm");
        mx += std::log(x[j]);
        my += std::log(y[j]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        double lx = std::log(x[j]) - mx;
        sxy += lx * (std::log(y[j]) - my);
        sxx += lx * lx;
    }
    require(sxx > 0, ErrorKind::numeric_domain, "undefined slope: all grids share one step");
    return sxy / sxx;
}

/// Refinement study on a binary64 chain at fixed Courant number.
///
/// The error of each grid is max_k norm_dx(e^k) (or of eps^k in truncation mode).
inline OrderResult estimate_order(const WaveProblem& problem, std::span<const Grid<double>> grids, double fixed_cn,
                                  OrderMode mode = OrderMode::convergence, const SolveOptions& opts = {}) {
    require(grids.size() >= 3, ErrorKind::precondition,
            "need >= 3 grids in a refinement chain, got " + std::to_string(grids.size()));
    require(problem.reference.has_value(), ErrorKind::precondition, "refinement study needs an analytic reference");
    const AnalyticSolution& ref = *problem.reference;
    const double c = problem.c_binary64();
    OrderResult out;
    out.mode = mode;
    std::vector<double> xs, ys;
    for (const auto& g : grids) {
        double cn = courant_number(c, g);
        require(std::fabs(cn - fixed_cn) <= 1e-12 * fixed_cn, ErrorKind::precondition,
                "grid with i_max=" + std::to_string(g.i_max) + " has Courant number " + decimal_literal(cn) +
                    ", expected " + decimal_literal(fixed_cn));
        double err;
        if (mode == OrderMode::convergence) {
            auto run = solve(problem, g, opts);
            err = max_level_norm(convergence_error(ref, run), g);
        } else {
            err = max_level_norm(truncation_error(ref, g, c), g);
        }
        out.points.push_back({g.i_max, g.k_max, g.dx, g.dt, err});
        xs.push_back(g.dx);
        ys.push_back(err);
    }
    out.slope = log_log_slope(xs, ys);
    return out;
}

/// Refinement chain on [x_min, x_max] with dt = cn dx / c, one grid per entry of i_maxes.
inline std::vector<Grid<double>> refinement_chain(std::span<const int> i_maxes, double cn, double c, double t_max,
                                                  double x_min = 0.0, double x_max = 1.0) {
    std::vector<Grid<double>> grids;
    for (int n : i_maxes) {
        const double dx = (x_max - x_min) / n;
        const double steps = t_max * c / (cn * dx);
        const int k_max = static_cast<int>(std::lround(steps));
        require(std::fabs(steps - k_max) <= 1e-9 * steps, ErrorKind::parameter,
                "t_max is not an integer number of steps for i_max=" + std::to_string(n));
        grids.push_back(build_grid<double>(x_min, x_max, t_max, n, k_max));
    }
    return grids;
}

/// Method-error and round-off constants of the a-priori total-error estimate.
struct ErrorConstants {
    double xi = 0;
    double alpha3 = 0, C3 = 0, alpha4 = 0, C4 = 0;
    double c = 0;
    double t_max = 0, x_min = 0, x_max = 0;

    double C2 = 0;
    double C_prime = 0;
    double C_second = 0;
    double alpha_e = 0;
    double C_e = 0;
    double alpha_Delta = 0;
    double C_Delta = 0;

    double guard() const { return std::min(alpha_e, alpha_Delta); }
};

inline ErrorConstants derive_constants(double xi, double C3, double C4, double alpha3, double alpha4, double c,
                                       double t_max, double x_min, double x_max) {
    require(xi > 0 && xi < 1, ErrorKind::parameter, "xi must lie in (0, 1)");
    require(C3 > 0 && C4 > 0 && alpha3 > 0 && alpha4 > 0, ErrorKind::parameter, "Taylor constants must be positive");
    require(c > 0 && t_max > 0, ErrorKind::parameter, "velocity and t_max must be positive");
    require(x_min < x_max, ErrorKind::parameter, "empty space domain");
    ErrorConstants k{xi, alpha3, C3, alpha4, C4, c, t_max, x_min, x_max};
    const double len = x_max - x_min;
    k.C2 = stability_constants(xi, 0.0).C2;
    k.C_prime = std::max(1.0, C3 + c * c * C4 + 1.0);
    k.C_second = std::max(k.C_prime, 2.0 * (1.0 + c * c) * C4);
    k.alpha_e = std::min({1.0, t_max, alpha3, alpha4});
    k.C_e = 4.0 * k.C2 * t_max * std::sqrt(len) *
            (k.C_prime / std::sqrt(2.0) + 2.0 * k.C2 * (t_max + 1.0) * k.C_second);
    k.alpha_Delta = std::min(1.0, t_max / 2.0);
    k.C_Delta = 234.0 * 0x1p-53 * t_max * t_max * std::sqrt(len + 1.0);
    return k;
}

inline ErrorConstants derive_constants(double xi, const TaylorConstants& taylor, double c, double t_max,
                                       double x_min, double x_max) {
    return derive_constants(xi, taylor.C3, taylor.C4, taylor.alpha3, taylor.alpha4, c, t_max, x_min, x_max);
}

/// C_e (dx^2 + dt^2) + C_Delta / dt^2, valid when sqrt(dx^2 + dt^2) <= min(alpha_e, alpha_Delta).
inline double total_error_bound(const ErrorConstants& k, double dx, double dt) {
    require(dx > 0 && dt > 0, ErrorKind::parameter, "steps must be positive");
    const double guard = k.guard();
    require(std::sqrt(dx * dx + dt * dt) <= guard, ErrorKind::precondition,
            "step norm " + decimal_literal(std::sqrt(dx * dx + dt * dt)) + " exceeds min(alpha_e, alpha_Delta) = " +
                decimal_literal(guard));
    return k.C_e * (dx * dx + dt * dt) + k.C_Delta / (dt * dt);
}

struct OptimalStep {
    double dt_unclamped = 0;
    double dt_star = 0;
    double dx_star = 0;
    double bound_star = 0;
    bool clamped = false;
};

/// Bound along the ray dx = c dt / cn.
inline double bound_along_ray(const ErrorConstants& k, double fixed_cn, double dt) {
    const double r = k.c / fixed_cn;
    return k.C_e * dt * dt * (1.0 + r * r) + k.C_Delta / (dt * dt);
}

/// Minimizes the total-error bound along dx = c dt / cn. The stationary point
/// (C_Delta / (C_e (1 + (c/cn)^2)))^{1/4} is clamped into [dt_min, guard / sqrt(1 + (c/cn)^2)].
inline OptimalStep optimal_dt(const ErrorConstants& k, double fixed_cn, double dt_min) {
    require(fixed_cn > 0 && fixed_cn <= 1.0 - k.xi, ErrorKind::parameter, "fixed Courant number must lie in (0, 1 - xi]");
    require(dt_min > 0, ErrorKind::parameter, "dt_min must be positive");
    const double r2 = 1.0 + (k.c / fixed_cn) * (k.c / fixed_cn);
    const double dt_max = k.guard() / std::sqrt(r2);
    require(dt_min <= dt_max, ErrorKind::precondition, "empty feasible step range after clamping");
    OptimalStep s;
    s.dt_unclamped = std::pow(k.C_Delta / (k.C_e * r2), 0.25);
    s.dt_star = std::clamp(s.dt_unclamped, dt_min, dt_max);
    s.clamped = s.dt_star != s.dt_unclamped;
    s.dx_star = k.c * s.dt_star / fixed_cn;
    s.bound_star = bound_along_ray(k, fixed_cn, s.dt_star);
    return s;
}

/// Default lower clamp: 2^-20 t_max (about a million time steps).
inline OptimalStep optimal_dt(const ErrorConstants& k, double fixed_cn) {
    return optimal_dt(k, fixed_cn, k.t_max * 0x1p-20);
}

}  // namespace wavefd
