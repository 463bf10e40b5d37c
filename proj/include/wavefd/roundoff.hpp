#pragma once

#include <wavefd/fundamental.hpp>
#include <wavefd/problem.hpp>
#include <wavefd/scheme.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace wavefd {

/// 78 * 2^-52: per-node bound on the local round-off error.
inline Rational local_error_bound() { return 78 * pow2(-52); }

/// 78 * 2^-53 (k+1)(k+2): per-node bound on the global round-off error at level k.
inline Rational global_error_bound(int k) { return 78 * pow2(-53) * Rational((k + 1) * (k + 2)); }

/// Largest admissible gap between the binary64 and exact scheme coefficient, 2^-49.
inline Rational coefficient_gap_bound() { return pow2(-49); }

struct NodeLocation {
    int i = 0;
    int k = 0;
};

/// A binary64 run and its exact-arithmetic shadow on the same grid.
struct ShadowRun {
    SchemeRun<double> float_run;
    SchemeRun<Rational> exact_run;
    double a_float = 0;
    Rational a_exact;
    /// |a_float - a_exact| <= 2^-49.
    bool coefficient_gap_ok = false;
    Rational coefficient_gap;
    DiscreteField<Rational> delta;
    /// Delta_i^k = float - exact, exactly.
    DiscreteField<Rational> global;

    int i_max() const { return float_run.grid.i_max; }
    int k_max() const { return float_run.grid.k_max; }
};

DiscreteField<Rational> local_errors(const SchemeRun<double>& float_run, const SchemeRun<Rational>& exact_run,
                                     const Rational& a);

struct ShadowOptions {
    SolveOptions solve;
    /// Overrides the binary64 coefficient (fault injection); nullopt keeps a1 = dt/dx*v; a = a1*a1.
    std::optional<double> a_float_override;
};

namespace detail {

/// Binary64 scheme with an externally supplied coefficient; same schedule as solve().
inline SchemeRun<double> solve_with_coefficient(const WaveProblem& problem, const Grid<double>& g, double a,
                                                const SolveOptions& opts) {
    auto run = solve(problem, g, opts);
    run.a = a;
    auto& p = run.field;
    const int ni = g.i_max;
    for (int i = 1; i < ni; ++i) {
        double dp = p(i + 1, 0) - 2. * p(i, 0) + p(i - 1, 0);
        p(i, 1) = p(i, 0) + 0.5 * a * dp;
    }
    for (int k = 1; k < g.k_max; ++k)
        for (int i = 1; i < ni; ++i) {
            double dp = p(i + 1, k) - 2. * p(i, k) + p(i - 1, k);
            p(i, k + 1) = 2. * p(i, k) - p(i, k - 1) + a * dp;
        }
    return run;
}

}  // namespace detail

/// Runs the scheme in binary64 (reference operation order) and in exact rationals, and
/// measures the local and global round-off errors.
inline ShadowRun shadow_solve(const WaveProblem& problem, const Grid<double>& g, const ShadowOptions& opts = {}) {
    require(problem.u1_is_zero(), ErrorKind::unsupported, "shadow execution assumes zero initial velocity");
    require(problem.source_is_zero(), ErrorKind::unsupported, "shadow execution assumes a zero source");
    require(problem.u0_samples.has_value() || problem.u0.has_exact(), ErrorKind::unsupported,
            "shadow execution needs an initial shape with exact rational evaluation");

    const Grid<Rational> ge = to_exact(g);
    ShadowRun s{opts.a_float_override ? detail::solve_with_coefficient(problem, g, *opts.a_float_override, opts.solve)
                                      : solve(problem, g, opts.solve),
                solve(problem, ge, opts.solve),
                0,
                {},
                false,
                {},
                {},
                {}};
    s.a_float = s.float_run.a;
    s.a_exact = s.exact_run.a;
    s.coefficient_gap = abs(exact(s.a_float) - s.a_exact);
    s.coefficient_gap_ok = s.coefficient_gap <= coefficient_gap_bound();
    s.delta = local_errors(s.float_run, s.exact_run, s.a_exact);
    s.global = DiscreteField<Rational>(g.i_max, g.k_max);
    for (int k = 0; k <= g.k_max; ++k)
        for (int i = 0; i <= g.i_max; ++i) s.global(i, k) = exact(s.float_run.field(i, k)) - s.exact_run.field(i, k);
    return s;
}

/// Local round-off errors, with all outer arithmetic exact and the exact coefficient a:
///   delta^0     = p^0 - fl_p^0
///   delta^1     = (fl_p^0 + a/2 D fl_p^0) - fl_p^1 - (delta^0 + a/2 D delta^0)
///   delta^{k+1} = (2 fl_p^k - fl_p^{k-1} + a D fl_p^k) - fl_p^{k+1}
/// where D is the centered second difference. Boundary entries are zero.
inline DiscreteField<Rational> local_errors(const SchemeRun<double>& float_run, const SchemeRun<Rational>& exact_run,
                                            const Rational& a) {
    const auto& g = float_run.grid;
    const int ni = g.i_max;
    DiscreteField<Rational> fl(ni, g.k_max);
    for (int k = 0; k <= g.k_max; ++k)
        for (int i = 0; i <= ni; ++i) fl(i, k) = exact(float_run.field(i, k));

    DiscreteField<Rational> d(ni, g.k_max);
    for (int i = 1; i < ni; ++i) d(i, 0) = exact_run.field(i, 0) - fl(i, 0);

    const Rational half_a = a / 2;
    for (int i = 1; i < ni; ++i) {
        Rational d_fl = fl(i + 1, 0) - 2 * fl(i, 0) + fl(i - 1, 0);
        Rational d_delta = d(i + 1, 0) - 2 * d(i, 0) + d(i - 1, 0);
        d(i, 1) = (fl(i, 0) + half_a * d_fl) - fl(i, 1) - (d(i, 0) + half_a * d_delta);
    }
    for (int k = 1; k < g.k_max; ++k)
        for (int i = 1; i < ni; ++i) {
            Rational d_fl = fl(i + 1, k) - 2 * fl(i, k) + fl(i - 1, k);
            d(i, k + 1) = (2 * fl(i, k) - fl(i, k - 1) + a * d_fl) - fl(i, k + 1);
        }
    return d;
}

inline DiscreteField<Rational> local_errors(const ShadowRun& run) {
    return local_errors(run.float_run, run.exact_run, run.a_exact);
}

/// Global round-off error rebuilt from the local errors by space-time convolution with the
/// fundamental solution, using the antisymmetric extension of each delta row:
///   Delta_i^k = - sum_{l=0}^{k} sum_{j=-l}^{l} delta~_{i-j}^{k-l} lambda_j^{l+1}.
/// The minus sign follows from delta being exact-minus-computed while Delta is
/// computed-minus-exact.
inline DiscreteField<Rational> reconstruct_global_error(const DiscreteField<Rational>& delta,
                                                        const FundamentalTable& table, int i_max) {
    require(delta.i_max() == i_max, ErrorKind::shape, "delta table does not match i_max");
    const int k_max = delta.k_max();
    require(table.depth() >= k_max, ErrorKind::parameter,
            "fundamental table depth " + std::to_string(table.depth()) + " is below k_max = " + std::to_string(k_max));
    DiscreteField<Rational> out(i_max, k_max);
    Rational acc;
    for (int k = 0; k <= k_max; ++k) {
        for (int i = 0; i <= i_max; ++i) {
            acc = 0;
            for (int l = 0; l <= k; ++l) {
                const auto& lam = table.row(l);  // lambda^{l+1} = Lambda^l
                const auto row = delta.level(k - l);
                for (int j = -l; j <= l; ++j) {
                    const Rational& w = lam[static_cast<std::size_t>(j + l)];
                    if (w == 0) continue;
                    const Rational v = antisym_extend<Rational>(row, static_cast<long>(i) - j);
                    if (v == 0) continue;
                    acc += v * w;
                }
            }
            out(i, k) = -acc;
        }
    }
    return out;
}

struct ReconstructionVerdict {
    bool exact_equal = true;
    std::optional<NodeLocation> first_mismatch;
};

inline ReconstructionVerdict compare_fields(const DiscreteField<Rational>& lhs, const DiscreteField<Rational>& rhs) {
    ReconstructionVerdict v;
    require(lhs.i_max() == rhs.i_max() && lhs.k_max() == rhs.k_max(), ErrorKind::shape, "tables differ in shape");
    for (int k = 0; k <= lhs.k_max(); ++k)
        for (int i = 0; i <= lhs.i_max(); ++i)
            if (lhs(i, k) != rhs(i, k)) {
                v.exact_equal = false;
                v.first_mismatch = NodeLocation{i, k};
                return v;
            }
    return v;
}

/// Largest |entry| and where it occurs.
struct MaxAbs {
    Rational value = 0;
    NodeLocation at;
};

inline MaxAbs max_abs(const DiscreteField<Rational>& f) {
    MaxAbs m;
    for (int k = 0; k <= f.k_max(); ++k)
        for (int i = 0; i <= f.i_max(); ++i) {
            Rational v = abs(f(i, k));
            if (v > m.value) m = {v, {i, k}};
        }
    return m;
}

struct LocalBoundReport {
    bool holds = true;
    MaxAbs max_delta;
    /// max |delta| / (78 * 2^-52)
    double max_ratio = 0;
    std::optional<NodeLocation> first_violation;
};

inline LocalBoundReport check_local_bound(const ShadowRun& run) {
    LocalBoundReport r;
    const Rational bound = local_error_bound();
    r.max_delta = max_abs(run.delta);
    r.max_ratio = to_double(r.max_delta.value / bound);
    r.holds = r.max_delta.value <= bound;
    if (!r.holds) r.first_violation = r.max_delta.at;
    return r;
}

struct GlobalBoundReport {
    bool holds = true;
    /// max over nodes of |Delta_i^k| / (78 * 2^-53 (k+1)(k+2))
    double max_ratio = 0;
    NodeLocation max_ratio_at;
    std::optional<NodeLocation> first_violation;
    /// Spatial norm check under dx <= 1, dt <= t_max / 2.
    bool norm_check_applicable = false;
    bool norm_holds = true;
    double max_norm = 0;
    double norm_bound = 0;
};

/// |Delta_i^k| <= 78 * 2^-53 (k+1)(k+2) at every node, plus the spatial-norm form
/// norm_dx(Delta^k) <= sqrt(x_max - x_min + 1) * 78 * 2^-53 * 3 (t_max / dt)^2.
inline GlobalBoundReport check_global_bound(const ShadowRun& run) {
    GlobalBoundReport r;
    Rational best = -1;
    for (int k = 0; k <= run.k_max(); ++k) {
        const Rational bound = global_error_bound(k);
        for (int i = 0; i <= run.i_max(); ++i) {
            const Rational ratio = abs(run.global(i, k)) / bound;
            if (ratio > best) {
                best = ratio;
                r.max_ratio_at = {i, k};
            }
            if (ratio > 1 && r.holds) {
                r.holds = false;
                r.first_violation = NodeLocation{i, k};
            }
        }
    }
    r.max_ratio = to_double(best);

    const auto& g = run.exact_run.grid;
    r.norm_check_applicable = g.dx <= 1 && g.dt <= g.t_max / 2;
    const double len = to_double(g.x_max - g.x_min);
    const double steps = to_double(g.t_max / g.dt);
    r.norm_bound = std::sqrt(len + 1.0) * 78.0 * 0x1p-53 * 3.0 * steps * steps;
    for (int k = 0; k <= run.k_max(); ++k) r.max_norm = std::max(r.max_norm, norm_dx(run.global.level(k), g));
    r.norm_holds = !r.norm_check_applicable || r.max_norm <= r.norm_bound;
    return r;
}

struct RangeReport {
    bool in_range = true;
    std::optional<NodeLocation> first_out_of_range;
    double max_abs_value = 0;
    /// p_float - ref == (p_exact - ref) + Delta at every node, in exact arithmetic.
    bool decomposition_exact = true;
    bool reference_checked = false;
};

/// Every computed value lies in [-2, 2]; with an exact reference, also checks the
/// decomposition computed = reference + method error + round-off error.
inline RangeReport check_range(const ShadowRun& run,
                               const std::function<Rational(const Rational&, const Rational&)>& exact_reference = {}) {
    RangeReport r;
    const auto& pf = run.float_run.field;
    for (int k = 0; k <= run.k_max(); ++k)
        for (int i = 0; i <= run.i_max(); ++i) {
            const double v = pf(i, k);
            r.max_abs_value = std::max(r.max_abs_value, std::fabs(v));
            if (!(v >= -2.0 && v <= 2.0) && r.in_range) {
                r.in_range = false;
                r.first_out_of_range = NodeLocation{i, k};
            }
        }
    const auto& ge = run.exact_run.grid;
    for (int k = 0; k <= run.k_max(); ++k)
        for (int i = 0; i <= run.i_max(); ++i) {
            Rational ref = 0;
            if (exact_reference && i != 0 && i != run.i_max()) ref = exact_reference(ge.x(i), ge.t(k));
            const Rational e_signed = run.exact_run.field(i, k) - ref;
            if (exact(pf(i, k)) - ref != e_signed + run.global(i, k)) r.decomposition_exact = false;
        }
    r.reference_checked = static_cast<bool>(exact_reference);
    return r;
}

}  // namespace wavefd
