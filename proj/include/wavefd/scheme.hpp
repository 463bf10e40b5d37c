#pragma once

#include <wavefd/grid.hpp>
#include <wavefd/problem.hpp>

#include <cmath>
#include <iostream>
#include <string>

namespace wavefd {

/// Courant number with the CFL(xi) verdict: satisfied iff cn <= 1 - xi.
struct CflReport {
    double cn = 0;
    double xi = 0;
    bool satisfied = false;
};

enum class CflPolicy { refuse, warn };

struct SolveOptions {
    double xi = 0x1p-50;
    CflPolicy cfl_policy = CflPolicy::refuse;
};

template <Scalar S>
struct SchemeRun {
    Grid<S> grid;
    WaveProblem problem;
    /// a = (c dt / dx)^2, the constant coefficient of the stiffness matrix.
    S a;
    CflReport cfl;
    DiscreteField<S> field;

    static constexpr ScalarKind scalar_kind = kind_of<S>;
};

/// c dt / dx.
template <Scalar S>
S courant_number(const S& c, const Grid<S>& g) {
    require(c > 0, ErrorKind::parameter, "courant_number: velocity must be positive");
    return S(c * g.dt / g.dx);
}

template <Scalar S>
CflReport check_cfl(const S& c, const Grid<S>& g, double xi) {
    require(xi > 0 && xi < 1, ErrorKind::parameter, "xi must lie in (0, 1), got " + decimal_literal(xi));
    S cn = courant_number(c, g);
    bool ok = cn <= S(1) - from_double<S>(xi);
    return {to_double(cn), xi, ok};
}

/// The coefficient a in the scheme's operation order: a1 = dt/dx*v; a = a1*a1.
template <Scalar S>
S scheme_coefficient(const S& c, const Grid<S>& g) {
    S a1 = g.dt / g.dx * c;
    S a = a1 * a1;
    return a;
}

/// Second-order centered explicit scheme on the full (i_max+1) x (k_max+1) table.
///
/// In binary64 every update follows the reference program: dp is materialized, then
/// p[i][k+1] = 2.*p[i][k] - p[i][k-1] + a*dp. Nonzero u1 and source contributions are
/// added after that expression, so the zero-data schedule is unchanged.
template <Scalar S>
SchemeRun<S> solve(const WaveProblem& problem, const Grid<S>& g, const SolveOptions& opts = {}) {
    const S c = problem.template velocity<S>();
    CflReport cfl = check_cfl(c, g, opts.xi);
    if (!cfl.satisfied) {
        std::string msg = "CFL(" + decimal_literal(opts.xi) + ") violated: Courant number " + decimal_literal(cfl.cn) +
                          " > 1 - xi";
        if (opts.cfl_policy == CflPolicy::refuse) throw Error(ErrorKind::cfl_violation, msg);
        std::cerr << "warning: " << msg << '\n';
    }

    SchemeRun<S> run{g, problem, scheme_coefficient(c, g), cfl, DiscreteField<S>(g.i_max, g.k_max)};
    auto& p = run.field;
    const S& a = run.a;
    const int ni = g.i_max;
    const bool with_u1 = !problem.u1_is_zero();
    const bool with_source = !problem.source_is_zero();

    auto check_finite = [&](int i, int k) {
        if constexpr (std::same_as<S, double>) {
            if (!std::isfinite(p(i, k)))
                throw Error(ErrorKind::non_finite, "non-finite value at (i=" + std::to_string(i) + ", k=" +
                                                       std::to_string(k) + ")");
        }
    };

    const auto u0 = problem.sample_u0(g);
    p(0, 0) = 0;
    for (int i = 1; i < ni; ++i) {
        p(i, 0) = u0[i];
        check_finite(i, 0);
    }
    p(ni, 0) = 0;

    SpatialVector<S> u1;
    if (with_u1) u1 = problem.sample_u1(g);
    p(0, 1) = 0;
    for (int i = 1; i < ni; ++i) {
        S dp = p(i + 1, 0) - S(2.) * p(i, 0) + p(i - 1, 0);
        p(i, 1) = p(i, 0) + S(0.5) * a * dp;
        if (with_u1) p(i, 1) += g.dt * u1[i];
        check_finite(i, 1);
    }
    p(ni, 1) = 0;

    S dt2 = g.dt * g.dt;
    for (int k = 1; k < g.k_max; ++k) {
        p(0, k + 1) = 0;
        for (int i = 1; i < ni; ++i) {
            S dp = p(i + 1, k) - S(2.) * p(i, k) + p(i - 1, k);
            p(i, k + 1) = S(2.) * p(i, k) - p(i, k - 1) + a * dp;
            if (with_source) p(i, k + 1) += dt2 * problem.source_at(g, i, k);
            check_finite(i, k + 1);
        }
        p(ni, k + 1) = 0;
    }
    return run;
}

/// Residual of the discrete operator L_h applied to the run's field at level k in [2, k_max]:
/// (p^k - 2p^{k-1} + p^{k-2})/dt^2 + (A_h p^{k-1}) - s^{k-1}, on interior nodes.
template <Scalar S>
SpatialVector<S> scheme_residual(const SchemeRun<S>& run, int k) {
    const auto& g = run.grid;
    require(k >= 2 && k <= g.k_max, ErrorKind::range, "scheme_residual: k out of range");
    const S c = run.problem.template velocity<S>();
    auto ah = apply_Ah(c, g, run.field.level(k - 1));
    SpatialVector<S> r(g.points(), S(0));
    S dt2 = g.dt * g.dt;
    for (int i = 1; i < g.i_max; ++i) {
        S second = (run.field(i, k) - S(2) * run.field(i, k - 1) + run.field(i, k - 2)) / dt2;
        r[i] = second + ah[i] - run.problem.source_at(g, i, k - 1);
    }
    return r;
}

}  // namespace wavefd
