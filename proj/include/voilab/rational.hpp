/**
 * @file rational.hpp
 * @brief Exact rational scalar used throughout voilab.
 *
 * Every quantity in the library (rewards, probabilities, values) is a
 * `Rational`. Arithmetic is exact and results are kept in canonical form
 * (positive denominator, reduced).
 */
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "voilab/error.hpp"

namespace voilab {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form. `den` must be nonzero.
inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

inline bool is_canonical(const Rational& r) {
    if (sgn(r.get_den()) <= 0) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return g == 1;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace detail

/// Parses "p/q", "p", or a finite decimal such as "-0.75". Throws ParseError.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    const auto fail = [&]() -> Rational {
        throw ParseError("not a rational literal: '" + std::string(text) + "'");
    };
    if (s.empty()) return fail();

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
        Integer d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        out = Rational(Integer(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail();
        if (!whole.empty() && !detail::all_digits(whole)) return fail();
        if (!frac.empty() && !detail::all_digits(frac)) return fail();
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        std::string digits = std::string(whole) + std::string(frac);
        out = Rational(Integer(digits.empty() ? "0" : digits, 10), scale);
    } else {
        if (!detail::all_digits(s)) return fail();
        out = Rational(Integer(std::string(s), 10));
    }
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Decimal rendering with `digits` significant digits, round-half-even,
/// formatted like printf's %g (trailing zeros trimmed, exponent form for
/// very small or very large magnitudes). Exact: no floating point involved.
inline std::string to_decimal(const Rational& r, int digits = 12) {
    if (digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
    if (sgn(r) == 0) return "0";
    Rational mag = abs(r);

    // exponent e with 10^e <= mag < 10^(e+1)
    long e = static_cast<long>(mpz_sizeinbase(mag.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(mag.get_den_mpz_t(), 10));
    const auto pow10 = [](long k) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
        return k < 0 ? Rational(Integer(1), p) : Rational(p);
    };
    while (mag >= pow10(e + 1)) ++e;
    while (mag < pow10(e)) --e;

    Integer limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const auto round_half_even = [](const Rational& x) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        Rational rem = x - Rational(q);
        Rational half(1, 2);
        if (rem > half || (rem == half && mpz_odd_p(q.get_mpz_t()))) q += 1;
        return q;
    };
    Integer mant = round_half_even(mag * pow10(digits - 1 - e));
    if (mant >= limit) {
        mant /= 10;
        ++e;
    }

    std::string ds = mant.get_str();
    std::string out = sgn(r) < 0 ? "-" : "";
    if (e < -4 || e >= digits) {
        std::string m = ds.substr(0, 1);
        std::string rest = ds.substr(1);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        if (!rest.empty()) m += "." + rest;
        std::string ex = std::to_string(e < 0 ? -e : e);
        if (ex.size() < 2) ex.insert(0, "0");
        out += m + "e" + (e < 0 ? "-" : "+") + ex;
        return out;
    }
    std::string fixed;
    if (e >= 0) {
        auto int_len = static_cast<std::size_t>(e + 1);
        fixed = ds.substr(0, int_len);
        std::string rest = ds.substr(int_len);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        if (!rest.empty()) fixed += "." + rest;
    } else {
        std::string rest = std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        fixed = "0." + rest;
    }
    return out + fixed;
}

inline Rational sum(std::span<const Rational> xs) {
    Rational s = 0;
    for (const auto& x : xs) s += x;
    return s;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline int sign(const Rational& r) { return sgn(r); }

} // namespace voilab
