#pragma once

#include <wavefd/scalar.hpp>

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace wavefd {

/// Triangular table of the discrete fundamental solution, in exact rationals.
///
/// Stores the time-shifted sequence Lambda (Lambda^{-1} = 0, Lambda^0 = unit spike at i = 0)
/// for 0 <= k <= K and |i| <= k. The fundamental solution of the scheme is
/// lambda_i^k = Lambda_i^{k-1}.
class FundamentalTable {
public:
    FundamentalTable() = default;
    FundamentalTable(Rational a, int depth) : a_(std::move(a)), depth_(depth) {}

    const Rational& a() const { return a_; }
    int depth() const { return depth_; }

    /// Lambda_i^k; zero outside the light cone, zero at k = -1.
    Rational shifted(long i, int k) const {
        require(k >= -1 && k <= depth_, ErrorKind::range, "fundamental table: level " + std::to_string(k) + " not stored");
        if (k < 0 || std::labs(i) > k) return 0;
        return rows_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i + k)];
    }

    /// lambda_i^k = Lambda_i^{k-1}, for 0 <= k <= K+1.
    Rational lambda(long i, int k) const { return shifted(i, k - 1); }

    /// Row k of Lambda as a span over i = -k..k.
    const std::vector<Rational>& row(int k) const { return rows_.at(static_cast<std::size_t>(k)); }

    friend FundamentalTable build_table(const Rational& a, int depth);

private:
    Rational a_;
    int depth_ = -1;
    std::vector<std::vector<Rational>> rows_;
};

/// Lambda^{k+1}_i = a (Lambda^k_{i-1} + Lambda^k_{i+1}) + 2 (1 - a) Lambda^k_i - Lambda^{k-1}_i.
inline FundamentalTable build_table(const Rational& a, int depth) {
    require(a > 0 && a < 1, ErrorKind::parameter, "fundamental table: a must lie in (0, 1)");
    require(depth >= 0, ErrorKind::parameter, "fundamental table: depth must be nonnegative");
    FundamentalTable t(a, depth);
    t.rows_.reserve(static_cast<std::size_t>(depth) + 1);
    t.rows_.push_back({Rational(1)});
    const Rational two_one_minus_a = 2 * (1 - a);
    for (int k = 0; k < depth; ++k) {
        const auto& cur = t.rows_[static_cast<std::size_t>(k)];
        std::vector<Rational> next(static_cast<std::size_t>(2 * (k + 1) + 1));
        auto at = [&](const std::vector<Rational>& row, int level, long i) -> Rational {
            if (level < 0 || std::labs(i) > level) return 0;
            return row[static_cast<std::size_t>(i + level)];
        };
        const std::vector<Rational> empty;
        const auto& prev = k >= 1 ? t.rows_[static_cast<std::size_t>(k - 1)] : empty;
        for (long i = -(k + 1); i <= k + 1; ++i) {
            Rational v = a * (at(cur, k, i - 1) + at(cur, k, i + 1)) + two_one_minus_a * at(cur, k, i) -
                         at(prev, k - 1, i);
            next[static_cast<std::size_t>(i + k + 1)] = v;
        }
        t.rows_.push_back(std::move(next));
    }
    return t;
}

/// Lambda_i^k = sum_{n=|i|}^{k} C(2n, n+i) C(n+k+1, 2n+1) (-1)^{n+i} a^n.
inline Rational lambda_closed_form(const Rational& a, long i, long k) {
    require(k >= 0 && std::labs(i) <= k, ErrorKind::range, "closed form is stated only for |i| <= k");
    Rational sum = 0;
    Rational an = power(a, static_cast<unsigned long>(std::labs(i)));
    for (long n = std::labs(i); n <= k; ++n) {
        Integer coeff = binomial(2 * n, n + i) * binomial(n + k + 1, 2 * n + 1);
        if ((n + i) % 2 != 0) coeff = -coeff;
        sum += Rational(coeff) * an;
        an *= a;
    }
    return sum;
}

/// sigma^k = sum_i lambda_i^k, for 0 <= k <= K+1.
inline Rational row_sum(const FundamentalTable& t, int k) {
    require(k >= 0 && k <= t.depth() + 1, ErrorKind::range, "row_sum: level out of range");
    if (k == 0) return 0;
    Rational s = 0;
    for (const auto& v : t.row(k - 1)) s += v;
    return s;
}

/// P_n^{(alpha, beta)}(x) = sum_p C(n+alpha, p) C(n+beta, n-p) ((x+1)/2)^p ((x-1)/2)^{n-p}.
inline Rational jacobi_poly(int n, int alpha, int beta, const Rational& x) {
    require(n >= 0, ErrorKind::parameter, "jacobi_poly: degree must be nonnegative");
    require(alpha > -1 && beta > -1, ErrorKind::parameter, "jacobi_poly: alpha and beta must exceed -1");
    const Rational plus = (x + 1) / 2;
    const Rational minus = (x - 1) / 2;
    Rational sum = 0;
    for (int p = 0; p <= n; ++p) {
        Integer c = binomial(n + alpha, p) * binomial(n + beta, n - p);
        if (c == 0) continue;
        sum += Rational(c) * power(plus, static_cast<unsigned long>(p)) *
               power(minus, static_cast<unsigned long>(n - p));
    }
    return sum;
}

/// a^{|i|} sum_{n=0}^{k-|i|} P_n^{(2|i|, 0)}(1 - 2a).
inline Rational lambda_via_jacobi(const Rational& a, long i, long k) {
    require(k >= 0 && std::labs(i) <= k, ErrorKind::range, "Jacobi form is stated only for |i| <= k");
    const long ai = std::labs(i);
    const Rational x = 1 - 2 * a;
    Rational sum = 0;
    for (long n = 0; n <= k - ai; ++n) sum += jacobi_poly(static_cast<int>(n), static_cast<int>(2 * ai), 0, x);
    return power(a, static_cast<unsigned long>(ai)) * sum;
}

inline Rational lambda_via_jacobi(const FundamentalTable& t, long i, long k) { return lambda_via_jacobi(t.a(), i, k); }

/// Summand F(i, n, k; p) = C(k+i, p+i) C(k-i, p-i) C(k-p, n-p).
inline Integer binomial_summand(long i, long n, long k, long p) {
    return binomial(k + i, p + i) * binomial(k - i, p - i) * binomial(k - p, n - p);
}

/// f(i, n, k) = sum_p F(i, n, k; p), summed over the support p in [i, n].
inline Integer binomial_sum(long i, long n, long k) {
    Integer s = 0;
    for (long p = std::max(0L, i); p <= n; ++p) s += binomial_summand(i, n, k, p);
    return s;
}

/// Closed form g(i, n, k) = C(2n, n+i) C(k+n, 2n).
inline Integer binomial_closed(long i, long n, long k) { return binomial(2 * n, n + i) * binomial(k + n, 2 * n); }

namespace detail {
inline void check_ordered(long i, long n, long k) {
    require(0 <= i && i <= n && n <= k, ErrorKind::precondition,
            "identity requires 0 <= i <= n <= k, got (" + std::to_string(i) + ", " + std::to_string(n) + ", " +
                std::to_string(k) + ")");
}
}  // namespace detail

/// Checks f(i,n,k) = g(i,n,k) and the double-sum form
/// sum_{p=i}^{n} sum_{q=n}^{k} C(q+i, p+i) C(q-i, p-i) C(q-p, n-p) = C(2n, n+i) C(n+k+1, 2n+1).
inline bool check_binomial_identity(long i, long n, long k) {
    detail::check_ordered(i, n, k);
    if (binomial_sum(i, n, k) != binomial_closed(i, n, k)) return false;
    Integer lhs = 0;
    for (long p = i; p <= n; ++p)
        for (long q = n; q <= k; ++q) lhs += binomial(q + i, p + i) * binomial(q - i, p - i) * binomial(q - p, n - p);
    return lhs == binomial(2 * n, n + i) * binomial(n + k + 1, 2 * n + 1);
}

/// First-order recurrences of f in i, n and k, evaluated on brute-force sums:
///   (n+1+i) f(i+1,n,k) = (n-i) f
///   (n+1+i)(n+1-i) f(i,n+1,k) = (k+1+n)(k-n) f
///   (k+1-n) f(i,n,k+1) = (k+1+n) f
inline bool check_zeilberger_recurrences(long i, long n, long k) {
    detail::check_ordered(i, n, k);
    const Integer f = binomial_sum(i, n, k);
    const bool in_i = (n + 1 + i) * binomial_sum(i + 1, n, k) == (n - i) * f;
    const bool in_n = (n + 1 + i) * (n + 1 - i) * binomial_sum(i, n + 1, k) == (k + 1 + n) * (k - n) * f;
    const bool in_k = (k + 1 - n) * binomial_sum(i, n, k + 1) == (k + 1 + n) * f;
    return in_i && in_n && in_k;
}

enum class ShiftVariable { i, n, k };

inline const char* to_string(ShiftVariable l) {
    switch (l) {
        case ShiftVariable::i: return "i";
        case ShiftVariable::n: return "n";
        case ShiftVariable::k: return "k";
    }
    return "?";
}

/// Outcome of a per-summand certificate check; skip_reason is set when the tuple is invalid.
struct CertificateCheck {
    bool holds = false;
    std::optional<std::string> skip_reason;
    bool skipped() const { return skip_reason.has_value(); }
};

namespace detail {

inline Rational ratio(long num, long den) {
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

/// Rational certificate R_l at summation index p, or nullopt for a vanishing denominator.
inline std::optional<Rational> certificate(ShiftVariable l, long i, long n, long k, long p) {
    switch (l) {
        case ShiftVariable::i:
            if (k - i == 0) return std::nullopt;
            return ratio((1 + 2 * i) * (p - i), k - i);
        case ShiftVariable::n:
            if (n + 1 - p == 0) return std::nullopt;
            return ratio((k - n) * (p + i) * (p - i), n + 1 - p);
        case ShiftVariable::k:
            if (k + 1 - p == 0) return std::nullopt;
            return ratio((p + i) * (p - i), k + 1 - p);
    }
    return std::nullopt;
}

}  // namespace detail

/// Telescoping identity for one summand:
///   b_{l,0} + b_{l,1} (L F / F) = R_l(p+1) (F(p+1) / F(p)) - R_l(p)
/// with the published coefficients b and certificates R.
inline CertificateCheck check_certificate(ShiftVariable l, long i, long n, long k, long p) {
    CertificateCheck out;
    if (!(0 <= i && i <= n && n <= k)) {
        out.skip_reason = "indices violate 0 <= i <= n <= k";
        return out;
    }
    const Integer F = binomial_summand(i, n, k, p);
    if (F == 0) {
        out.skip_reason = "p outside the summand support";
        return out;
    }
    auto r_here = detail::certificate(l, i, n, k, p);
    auto r_next = detail::certificate(l, i, n, k, p + 1);
    if (!r_here || !r_next) {
        out.skip_reason = std::string("certificate R_") + to_string(l) + " has a vanishing denominator";
        return out;
    }

    Integer b0, b1, shifted;
    switch (l) {
        case ShiftVariable::i:
            b0 = n - i;
            b1 = -(n + 1 + i);
            shifted = binomial_summand(i + 1, n, k, p);
            break;
        case ShiftVariable::n:
            b0 = Integer(k + 1 + n) * (k - n);
            b1 = -(Integer(n + 1 + i) * (n + 1 - i));
            shifted = binomial_summand(i, n + 1, k, p);
            break;
        case ShiftVariable::k:
            b0 = k + 1 + n;
            b1 = -(k + 1 - n);
            shifted = binomial_summand(i, n, k + 1, p);
            break;
    }
    const Rational Fq(F);
    Rational lhs = Rational(b0) + Rational(b1) * Rational(shifted) / Fq;
    Rational rhs = *r_next * Rational(binomial_summand(i, n, k, p + 1)) / Fq - *r_here;
    out.holds = lhs == rhs;
    return out;
}

}  // namespace wavefd
