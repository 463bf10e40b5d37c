#pragma once

#include <wavefd/scalar.hpp>

#include <cmath>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

namespace wavefd {

/// Uniform space-time grid over [x_min, x_max] x [0, t_max].
///
/// Steps are computed in the grid's own scalar kind: a binary64 grid rounds
/// dx and dt once, an exact grid keeps i_max * dx == x_max - x_min exactly.
template <Scalar S>
struct Grid {
    S x_min;
    S x_max;
    S t_max;
    int i_max = 0;
    int k_max = 0;
    S dx;
    S dt;

    /// Node abscissa x_min + i * dx, evaluated in the grid's scalar kind.
    S x(int i) const { return x_min + S(i) * dx; }
    S t(int k) const { return S(k) * dt; }
    std::size_t points() const { return static_cast<std::size_t>(i_max) + 1; }
    std::size_t levels() const { return static_cast<std::size_t>(k_max) + 1; }
};

template <Scalar S>
Grid<S> build_grid(const S& x_min, const S& x_max, const S& t_max, int i_max, int k_max) {
    require(i_max >= 2, ErrorKind::parameter, "i_max too small: grid sizes must be greater than one (got " + std::to_string(i_max) + ")");
    require(k_max >= 2, ErrorKind::parameter, "k_max too small: grid sizes must be greater than one (got " + std::to_string(k_max) + ")");
    require(x_min < x_max, ErrorKind::parameter, "empty space domain: x_min must be less than x_max");
    require(t_max > 0, ErrorKind::parameter, "empty time domain: t_max must be positive");
    Grid<S> g{x_min, x_max, t_max, i_max, k_max, S(0), S(0)};
    g.dx = (x_max - x_min) / S(i_max);
    g.dt = t_max / S(k_max);
    if constexpr (std::same_as<S, Rational>) {
        g.dx.canonicalize();
        g.dt.canonicalize();
    }
    return g;
}

/// Exact counterpart of a binary64 grid: same bounds (read exactly), exact steps.
inline Grid<Rational> to_exact(const Grid<double>& g) {
    return build_grid<Rational>(exact(g.x_min), exact(g.x_max), exact(g.t_max), g.i_max, g.k_max);
}

namespace detail {

inline long floor_ratio(double num, double den) { return static_cast<long>(std::floor(num / den)); }

inline long floor_ratio(const Rational& num, const Rational& den) {
    Rational q = num / den;
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

}  // namespace detail

/// floor((x - x_min) / dx), clamped to [0, i_max].
template <Scalar S>
int space_index(const Grid<S>& g, const S& x) {
    require(x >= g.x_min && x <= g.x_max, ErrorKind::range, "space coordinate outside [x_min, x_max]");
    long i = detail::floor_ratio(S(x - g.x_min), g.dx);
    if (i < 0) i = 0;
    if (i > g.i_max) i = g.i_max;
    return static_cast<int>(i);
}

/// floor(t / dt), clamped to [0, k_max].
template <Scalar S>
int time_index(const Grid<S>& g, const S& t) {
    require(t >= 0 && t <= g.t_max, ErrorKind::range, "time coordinate outside [0, t_max]");
    long k = detail::floor_ratio(t, g.dt);
    if (k < 0) k = 0;
    if (k > g.k_max) k = g.k_max;
    return static_cast<int>(k);
}

template <Scalar S>
using SpatialVector = std::vector<S>;

/// Space-time table of (i_max+1) x (k_max+1) values, stored one time level at a time.
template <Scalar S>
class DiscreteField {
public:
    DiscreteField() = default;
    DiscreteField(int i_max, int k_max)
        : i_max_(i_max), k_max_(k_max),
          values_(static_cast<std::size_t>(i_max + 1) * static_cast<std::size_t>(k_max + 1), S(0)) {}

    int i_max() const { return i_max_; }
    int k_max() const { return k_max_; }

    S& operator()(int i, int k) { return values_[index(i, k)]; }
    const S& operator()(int i, int k) const { return values_[index(i, k)]; }

    std::span<S> level(int k) { return {values_.data() + index(0, k), static_cast<std::size_t>(i_max_) + 1}; }
    std::span<const S> level(int k) const {
        return {values_.data() + index(0, k), static_cast<std::size_t>(i_max_) + 1};
    }

    bool operator==(const DiscreteField&) const = default;

private:
    std::size_t index(int i, int k) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(i_max_ + 1) + static_cast<std::size_t>(i);
    }

    int i_max_ = 0;
    int k_max_ = 0;
    std::vector<S> values_;
};

namespace detail {

template <Scalar S>
void check_length(std::span<const S> q, const Grid<S>& g, const char* what) {
    require(q.size() == g.points(), ErrorKind::shape,
            std::string(what) + ": vector length " + std::to_string(q.size()) + " does not match grid (" +
                std::to_string(g.points()) + " points)");
}

}  // namespace detail

/// Discrete dot product over interior nodes, sum_{i=1}^{i_max-1} q_i r_i dx, summed left to right.
template <Scalar S>
S dot_dx(std::span<const std::type_identity_t<S>> q, std::span<const std::type_identity_t<S>> r, const Grid<S>& g) {
    detail::check_length(q, g, "dot_dx");
    detail::check_length(r, g, "dot_dx");
    S sum = 0;
    for (int i = 1; i < g.i_max; ++i) sum += q[i] * r[i] * g.dx;
    return sum;
}

template <Scalar S>
S norm_dx_squared(std::span<const std::type_identity_t<S>> q, const Grid<S>& g) {
    return dot_dx(q, q, g);
}

/// Norm induced by dot_dx. Exact inputs are rounded to binary64 before the square root.
template <Scalar S>
double norm_dx(std::span<const std::type_identity_t<S>> q, const Grid<S>& g) {
    return std::sqrt(to_double(norm_dx_squared(q, g)));
}

template <Scalar S>
SpatialVector<S> apply_Ah(const S& c, const Grid<S>& g, std::span<const std::type_identity_t<S>> q);

template <Scalar S>
S dot_Ah(std::span<const std::type_identity_t<S>> q, std::span<const std::type_identity_t<S>> r, const Grid<S>& g, const S& c) {
    require(c > 0, ErrorKind::parameter, "dot_Ah: velocity must be positive");
    auto aq = apply_Ah(c, g, q);
    return dot_dx(std::span<const S>(aq), r, g);
}

/// Seminorm induced by A_h. Binary64 radicands down to -tolerance are treated as zero.
template <Scalar S>
double seminorm_Ah(std::span<const std::type_identity_t<S>> q, const Grid<S>& g, const S& c, double tolerance = 0.0) {
    S v = dot_Ah(q, q, g, c);
    double d = to_double(v);
    if (v < 0) {
        require(d >= -tolerance, ErrorKind::numeric_domain, "seminorm_Ah: negative radicand " + decimal_literal(d));
        return 0.0;
    }
    return std::sqrt(d);
}

/// (A_h(c) q)_i = -c^2 (q_{i+1} - 2 q_i + q_{i-1}) / dx^2 on interior nodes, zero on the boundary.
template <Scalar S>
SpatialVector<S> apply_Ah(const S& c, const Grid<S>& g, std::span<const std::type_identity_t<S>> q) {
    detail::check_length(q, g, "apply_Ah");
    SpatialVector<S> out(g.points(), S(0));
    S c2 = c * c;
    S dx2 = g.dx * g.dx;
    for (int i = 1; i < g.i_max; ++i) {
        S dq = q[i + 1] - S(2) * q[i] + q[i - 1];
        out[i] = -c2 * dq / dx2;
    }
    return out;
}

}  // namespace wavefd
