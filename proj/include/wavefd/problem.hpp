#pragma once

#include <wavefd/grid.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace wavefd {

/// A function of x that can be evaluated in binary64 and, optionally, exactly.
struct SpaceFunction {
    std::function<double(double)> binary64;
    std::function<Rational(const Rational&)> exact;
    bool identically_zero = false;

    static SpaceFunction zero() {
        return {[](double) { return 0.0; }, [](const Rational&) { return Rational(0); }, true};
    }

    static SpaceFunction from_binary64(std::function<double(double)> f) { return {std::move(f), {}, false}; }

    /// Polynomial sum_j coeffs[j] x^j, Horner form in both scalar kinds.
    static SpaceFunction polynomial(std::vector<Rational> coeffs) {
        std::vector<double> dc;
        for (const auto& c : coeffs) dc.push_back(to_double(c));
        auto f64 = [dc](double x) {
            double acc = 0.0;
            for (auto it = dc.rbegin(); it != dc.rend(); ++it) acc = acc * x + *it;
            return acc;
        };
        auto fq = [coeffs](const Rational& x) {
            Rational acc = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
        };
        return {f64, fq, false};
    }

    bool has_exact() const { return static_cast<bool>(exact); }

    template <Scalar S>
    S eval(const S& x) const {
        if constexpr (std::same_as<S, double>) {
            return binary64(x);
        } else {
            require(has_exact(), ErrorKind::unsupported, "function has no exact (rational) evaluation");
            return exact(x);
        }
    }
};

/// A function of (x, t), e.g. a source term.
struct SpaceTimeFunction {
    std::function<double(double, double)> binary64;
    std::function<Rational(const Rational&, const Rational&)> exact;
    bool identically_zero = false;

    static SpaceTimeFunction zero() {
        return {[](double, double) { return 0.0; }, [](const Rational&, const Rational&) { return Rational(0); },
                true};
    }

    bool has_exact() const { return static_cast<bool>(exact); }

    template <Scalar S>
    S eval(const S& x, const S& t) const {
        if constexpr (std::same_as<S, double>) {
            return binary64(x, t);
        } else {
            require(has_exact(), ErrorKind::unsupported, "function has no exact (rational) evaluation");
            return exact(x, t);
        }
    }
};

/// Regularity constants of an exact solution: |p(x+dx, t+dt) - Taylor_n| <= C_n r^{n+1} for r <= alpha_n.
struct TaylorConstants {
    double alpha3 = 0;
    double C3 = 0;
    double alpha4 = 0;
    double C4 = 0;
};

/// Closed-form solution of the continuous problem with its first and second partials.
struct AnalyticSolution {
    std::function<double(double, double)> value;
    std::function<double(double, double)> d_x;
    std::function<double(double, double)> d_t;
    std::function<double(double, double)> d_xx;
    std::function<double(double, double)> d_tt;
    std::optional<TaylorConstants> taylor;
    /// Optional exact evaluation (polynomial references).
    std::function<Rational(const Rational&, const Rational&)> exact_value;
    std::function<Rational(const Rational&, const Rational&)> exact_d_t;

    template <Scalar S>
    S eval(const S& x, const S& t) const {
        if constexpr (std::same_as<S, double>) {
            return value(x, t);
        } else {
            require(static_cast<bool>(exact_value), ErrorKind::unsupported, "reference has no exact evaluation");
            return exact_value(x, t);
        }
    }

    template <Scalar S>
    S eval_d_t(const S& x, const S& t) const {
        if constexpr (std::same_as<S, double>) {
            require(static_cast<bool>(d_t), ErrorKind::contract, "reference lacks the time derivative");
            return d_t(x, t);
        } else {
            require(static_cast<bool>(exact_d_t), ErrorKind::contract, "reference lacks an exact time derivative");
            return exact_d_t(x, t);
        }
    }
};

/// Lagrange-remainder bound for a function whose partials of order n+1 are all bounded by
/// bound^{n+1}: |R_n| <= bound^{n+1} (|dx| + |dt|)^{n+1} / (n+1)! <= bound^{n+1} 2^{(n+1)/2} r^{n+1} / (n+1)!.
inline double taylor_remainder_constant(double bound, int degree) {
    double order = degree + 1;
    return std::pow(bound, order) * std::pow(2.0, order / 2.0) / std::tgamma(order + 1.0);
}

/// sin(m pi x) cos(m pi c t) on [0, 1].
inline AnalyticSolution standing_wave(int m, double c) {
    require(m >= 1, ErrorKind::parameter, "standing_wave: mode must be >= 1");
    require(c > 0, ErrorKind::parameter, "standing_wave: velocity must be positive");
    const double k = m * std::numbers::pi;
    const double w = k * c;
    AnalyticSolution s;
    s.value = [k, w](double x, double t) { return std::sin(k * x) * std::cos(w * t); };
    s.d_x = [k, w](double x, double t) { return k * std::cos(k * x) * std::cos(w * t); };
    s.d_t = [k, w](double x, double t) { return -w * std::sin(k * x) * std::sin(w * t); };
    s.d_xx = [k, w](double x, double t) { return -k * k * std::sin(k * x) * std::cos(w * t); };
    s.d_tt = [k, w](double x, double t) { return -w * w * std::sin(k * x) * std::cos(w * t); };
    const double bound = k * std::max(1.0, c);
    s.taylor = TaylorConstants{1.0, taylor_remainder_constant(bound, 3), 1.0, taylor_remainder_constant(bound, 4)};
    return s;
}

/// Antisymmetric extension of a sampled vector with zero end values: odd about every
/// reflection point, period 2 i_max.
template <Scalar S>
S antisym_extend(std::span<const S> q, long j) {
    require(q.size() >= 2, ErrorKind::shape, "antisym_extend: need at least two samples");
    const long n = static_cast<long>(q.size()) - 1;
    require(q.front() == 0 && q.back() == 0, ErrorKind::contract, "antisym_extend: boundary values must be zero");
    const long period = 2 * n;
    long r = ((j % period) + period) % period;
    if (r <= n) return q[static_cast<std::size_t>(r)];
    return -q[static_cast<std::size_t>(period - r)];
}

/// Antisymmetric extension of a function on [x_min, x_max] to the whole real line.
inline double antisym_extend(const std::function<double(double)>& f, double x_min, double x_max, double x) {
    const double len = x_max - x_min;
    const double period = 2.0 * len;
    double r = std::fmod(x - x_min, period);
    if (r < 0) r += period;
    if (r <= len) return f(x_min + r);
    return -f(x_min + (period - r));
}

inline AnalyticSolution dalembert_zero_velocity(const std::function<double(double)>& p0, double c,
                                                double x_min = 0.0, double x_max = 1.0,
                                                bool p1_is_zero = true) {
    require(p1_is_zero, ErrorKind::unsupported, "d'Alembert with nonzero initial velocity is not supported");
    require(c > 0, ErrorKind::parameter, "dalembert_zero_velocity: velocity must be positive");
    require(p0(x_min) == 0 && p0(x_max) == 0, ErrorKind::contract, "dalembert_zero_velocity: p0 must vanish at both ends");
    AnalyticSolution s;
    s.value = [p0, c, x_min, x_max](double x, double t) {
        return 0.5 * (antisym_extend(p0, x_min, x_max, x + c * t) + antisym_extend(p0, x_min, x_max, x - c * t));
    };
    return s;
}

/// Problem data: velocity, Cauchy data and source, as functions or as exact samples.
struct WaveProblem {
    Rational c = 1;
    SpaceFunction u0 = SpaceFunction::zero();
    SpaceFunction u1 = SpaceFunction::zero();
    SpaceTimeFunction source = SpaceTimeFunction::zero();
    /// Sampled overrides (length i_max+1; source indexed [k][i]).
    std::optional<std::vector<Rational>> u0_samples;
    std::optional<std::vector<Rational>> u1_samples;
    std::optional<std::vector<std::vector<Rational>>> source_samples;
    std::optional<AnalyticSolution> reference;

    double c_binary64() const { return to_double(c); }

    template <Scalar S>
    S velocity() const {
        return from_rational<S>(c);
    }

    bool u1_is_zero() const {
        if (u1_samples) {
            for (const auto& v : *u1_samples)
                if (v != 0) return false;
            return true;
        }
        return u1.identically_zero;
    }

    bool source_is_zero() const {
        if (source_samples) {
            for (const auto& row : *source_samples)
                for (const auto& v : row)
                    if (v != 0) return false;
            return true;
        }
        return source.identically_zero;
    }

    template <Scalar S>
    SpatialVector<S> sample_u0(const Grid<S>& g) const {
        return sample_space(u0, u0_samples, g, "u0");
    }

    template <Scalar S>
    SpatialVector<S> sample_u1(const Grid<S>& g) const {
        return sample_space(u1, u1_samples, g, "u1");
    }

    template <Scalar S>
    S source_at(const Grid<S>& g, int i, int k) const {
        if (source_samples) {
            require(static_cast<int>(source_samples->size()) > k, ErrorKind::shape, "source samples too short in time");
            const auto& row = (*source_samples)[static_cast<std::size_t>(k)];
            require(row.size() == g.points(), ErrorKind::shape, "source sample row length does not match grid");
            return from_rational<S>(row[static_cast<std::size_t>(i)]);
        }
        return source.eval<S>(g.x(i), g.t(k));
    }

private:
    template <Scalar S>
    static SpatialVector<S> sample_space(const SpaceFunction& f, const std::optional<std::vector<Rational>>& samples,
                                         const Grid<S>& g, const char* name) {
        SpatialVector<S> v(g.points(), S(0));
        if (samples) {
            require(samples->size() == g.points(), ErrorKind::shape,
                    std::string(name) + " samples do not match the grid length");
            require(samples->front() == 0 && samples->back() == 0, ErrorKind::contract,
                    std::string(name) + " samples must vanish at both boundaries");
            for (int i = 1; i < g.i_max; ++i) v[i] = from_rational<S>((*samples)[static_cast<std::size_t>(i)]);
            return v;
        }
        for (int i = 1; i < g.i_max; ++i) v[i] = f.eval<S>(g.x(i));
        return v;
    }
};

/// u0(x) = x (1 - x), evaluated as x * (1. - x) in binary64.
inline SpaceFunction default_initial_shape() {
    return {[](double x) { return x * (1. - x); }, [](const Rational& x) { return Rational(x * (1 - x)); }, false};
}

/// Default test problem: u0 = x(1-x), u1 = 0, s = 0, velocity c.
inline WaveProblem default_problem(const Rational& c = 1) {
    WaveProblem p;
    p.c = c;
    p.u0 = default_initial_shape();
    return p;
}

/// Standing-wave problem sin(m pi x) with zero initial velocity; binary64 only.
inline WaveProblem standing_wave_problem(int m, double c) {
    WaveProblem p;
    p.c = exact(c);
    const double k = m * std::numbers::pi;
    p.u0 = SpaceFunction::from_binary64([k](double x) { return std::sin(k * x); });
    p.reference = standing_wave(m, c);
    return p;
}

}  // namespace wavefd
