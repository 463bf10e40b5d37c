#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace wavefd {

/// Arbitrary-precision rational used as the "exact" scalar kind.
using Rational = mpq_class;
/// Arbitrary-precision integer for binomial sums.
using Integer = mpz_class;

enum class ScalarKind { binary64, exact };

inline const char* to_string(ScalarKind k) {
    return k == ScalarKind::binary64 ? "binary64" : "exact";
}

template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Rational>;

template <Scalar S>
inline constexpr ScalarKind kind_of = std::same_as<S, double> ? ScalarKind::binary64 : ScalarKind::exact;

enum class ErrorKind {
    parameter,
    range,
    shape,
    numeric_domain,
    contract,
    unsupported,
    cfl_violation,
    non_finite,
    precondition,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::range: return "range";
        case ErrorKind::shape: return "shape";
        case ErrorKind::numeric_domain: return "numeric-domain";
        case ErrorKind::contract: return "contract";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::cfl_violation: return "cfl-violation";
        case ErrorKind::non_finite: return "non-finite";
        case ErrorKind::precondition: return "precondition";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

/// Exact value of a binary64 number (every finite double is a dyadic rational).
inline Rational exact(double v) {
    if (!std::isfinite(v)) throw Error(ErrorKind::non_finite, "cannot convert non-finite value to a rational");
    Rational r(v);
    r.canonicalize();
    return r;
}

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q", an integer, or a decimal literal ("0.125") into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational r(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
        if (r.get_den() == 0) throw Error(ErrorKind::parameter, "zero denominator in '" + text + "'");
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(Integer(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    Integer den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    Rational r(Integer(digits), den);
    r.canonicalize();
    return r;
}

/// Rounds to the nearest binary64 value (ties to even), unlike mpq_get_d which truncates.
inline double to_double(const Rational& r) {
    double t = r.get_d();
    if (!std::isfinite(t)) return t;
    if (exact(t) == r) return t;
    double up = std::nextafter(t, r > exact(t) ? INFINITY : -INFINITY);
    Rational dt = abs(r - exact(t));
    Rational du = abs(r - exact(up));
    if (dt < du) return t;
    if (du < dt) return up;
    long long bits;
    static_assert(sizeof(bits) == sizeof(t));
    std::memcpy(&bits, &t, sizeof(t));
    return (bits & 1) ? up : t;
}

inline double to_double(double v) { return v; }

template <Scalar S>
S from_double(double v) {
    if constexpr (std::same_as<S, double>) {
        return v;
    } else {
        return exact(v);
    }
}

template <Scalar S>
S from_rational(const Rational& r) {
    if constexpr (std::same_as<S, double>) {
        return to_double(r);
    } else {
        return r;
    }
}

inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return abs(v); }

inline std::string hex_literal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

inline std::string decimal_literal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Lossless text form: hexadecimal significand for binary64, "num/den" for rationals.
inline std::string lossless(double v) { return hex_literal(v); }

inline std::string lossless(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string decimal(double v) { return decimal_literal(v); }
inline std::string decimal(const Rational& r) { return decimal_literal(to_double(r)); }

/// 2^e as an exact rational.
inline Rational pow2(long e) {
    Rational r = 1;
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

inline Rational power(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

/// Binomial coefficient with the combinatorial convention: zero when k < 0, k > n or n < 0.
inline Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace wavefd
