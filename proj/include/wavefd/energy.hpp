#pragma once

#include <wavefd/scheme.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace wavefd {

namespace detail {

template <Scalar S>
SpatialVector<S> time_difference(const SchemeRun<S>& run, int k) {
    const auto& g = run.grid;
    SpatialVector<S> v(g.points(), S(0));
    for (int i = 0; i <= g.i_max; ++i) v[i] = (run.field(i, k + 1) - run.field(i, k)) / g.dt;
    return v;
}

template <Scalar S>
void check_half_step(const SchemeRun<S>& run, int k) {
    require(k >= 0 && k < run.grid.k_max, ErrorKind::range,
            "half-step index k=" + std::to_string(k) + " outside [0, k_max-1]");
}

}  // namespace detail

/// E^{k+1/2} = 1/2 |(p^{k+1} - p^k)/dt|^2 + 1/2 <p^k, p^{k+1}>_{A_h}.
template <Scalar S>
S discrete_energy(const SchemeRun<S>& run, int k) {
    detail::check_half_step(run, k);
    const auto& g = run.grid;
    auto v = detail::time_difference(run, k);
    S kinetic = norm_dx_squared(std::span<const S>(v), g);
    S potential = dot_Ah(run.field.level(k), run.field.level(k + 1), g, run.problem.template velocity<S>());
    return S(kinetic / 2 + potential / 2);
}

template <Scalar S>
struct EnergySeries {
    std::vector<S> values;
    double cn = 0;
    double xi = 0;
};

template <Scalar S>
EnergySeries<S> energy_series(const SchemeRun<S>& run) {
    EnergySeries<S> out{{}, run.cfl.cn, run.cfl.xi};
    out.values.reserve(static_cast<std::size_t>(run.grid.k_max));
    for (int k = 0; k < run.grid.k_max; ++k) out.values.push_back(discrete_energy(run, k));
    return out;
}

/// E^{k+1/2} - 1/2 (1 - CN^2) |(p^{k+1} - p^k)/dt|^2; nonnegative under CFL.
template <Scalar S>
S energy_lower_bound_gap(const SchemeRun<S>& run, int k) {
    detail::check_half_step(run, k);
    const auto& g = run.grid;
    S cn = courant_number(run.problem.template velocity<S>(), g);
    auto v = detail::time_difference(run, k);
    S kinetic = norm_dx_squared(std::span<const S>(v), g);
    return S(discrete_energy(run, k) - (S(1) - cn * cn) * kinetic / 2);
}

struct StabilityConstants {
    double C1 = 0;
    double C2 = 0;
};

/// C1 = sqrt(E^{1/2}), C2 = 1 / sqrt(2 xi (2 - xi)).
inline StabilityConstants stability_constants(double xi, double e_half) {
    require(xi > 0 && xi < 1, ErrorKind::parameter, "xi must lie in (0, 1)");
    require(e_half >= 0, ErrorKind::parameter, "initial energy must be nonnegative");
    return {std::sqrt(e_half), 1.0 / std::sqrt(2.0 * xi * (2.0 - xi))};
}

struct EnergyEstimateReport {
    bool holds = true;
    std::optional<int> first_violation;
    /// min over k of (rhs - lhs); negative means a violation.
    double min_slack = 0;
    StabilityConstants constants;
    /// True when every comparison was decided in exact arithmetic.
    bool decided_exactly = false;
};

/// Checks sqrt(E^{k+1/2}) <= C1 + C2 dt sum_{k'=1}^{k} |s^{k'}| at every half step.
/// Violations are findings in the report, never exceptions.
template <Scalar S>
EnergyEstimateReport check_energy_estimate(const SchemeRun<S>& run, double xi) {
    require(run.cfl.satisfied || check_cfl(run.problem.template velocity<S>(), run.grid, xi).satisfied,
            ErrorKind::precondition, "energy estimate requires CFL(xi)");
    const auto& g = run.grid;
    auto series = energy_series(run);
    EnergyEstimateReport rep;
    rep.constants = stability_constants(xi, std::max(0.0, to_double(series.values[0])));
    const bool sourceless = run.problem.source_is_zero();
    rep.decided_exactly = sourceless && std::same_as<S, Rational>;
    rep.min_slack = INFINITY;

    double source_sum = 0;
    for (int k = 0; k < g.k_max; ++k) {
        if (k >= 1 && !sourceless) {
            SpatialVector<S> s(g.points(), S(0));
            for (int i = 1; i < g.i_max; ++i) s[i] = run.problem.source_at(g, i, k);
            source_sum += norm_dx(std::span<const S>(s), g);
        }
        double lhs = std::sqrt(std::max(0.0, to_double(series.values[k])));
        double rhs = rep.constants.C1 + rep.constants.C2 * to_double(g.dt) * source_sum;
        bool ok;
        if (sourceless) {
            // With no source the bound is E^{k+1/2} <= E^{1/2}: compare squares in the run's scalar.
            ok = series.values[k] <= series.values[0];
            if constexpr (std::same_as<S, double>) {
                ok = ok || lhs <= rhs;
            }
        } else {
            ok = lhs <= rhs;
        }
        rep.min_slack = std::min(rep.min_slack, rhs - lhs);
        if (!ok && rep.holds) {
            rep.holds = false;
            rep.first_violation = k;
        }
    }
    return rep;
}

}  // namespace wavefd
