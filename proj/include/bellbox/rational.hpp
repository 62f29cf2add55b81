#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace bellbox {

// Exact arithmetic only: no floating point anywhere in certification paths.
// mpq_class keeps values in lowest terms with a positive denominator as long
// as every value is canonicalized on construction, which the helpers below
// guarantee.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(const Int& num, const Int& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// "p" for integers, "p/q" otherwise; q > 0 and gcd(p,q)=1 by construction.
inline std::string to_string(const Rational& r) { return r.get_str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

inline bool canonical_digit_run(std::string_view s) {
    // No leading zeros except the literal "0".
    return all_digits(s) && (s.size() == 1 || s.front() != '0');
}

}  // namespace detail

// Accepts "p" and "p/q". Strict mode admits only the canonical serialized
// form (reduced, q > 0, no leading zeros, sign only on the numerator);
// otherwise any integer pair is accepted and normalized.
inline Rational parse_rational(std::string_view text, bool strict = false) {
    const std::string original(text);
    auto fail = [&]() -> Rational {
        throw ParseError("not a rational: '" + original + "'");
    };

    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }

    bool num_neg = false, den_neg = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        num_neg = num.front() == '-';
        if (strict && num.front() == '+') fail();
        num.remove_prefix(1);
    }
    if (!den.empty() && (den.front() == '-' || den.front() == '+')) {
        den_neg = den.front() == '-';
        if (strict) fail();
        den.remove_prefix(1);
    }
    if (!detail::all_digits(num) || !detail::all_digits(den)) fail();
    if (strict && (!detail::canonical_digit_run(num) || !detail::canonical_digit_run(den))) fail();
    if (strict && num == "0" && num_neg) fail();

    Int n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator: '" + original + "'");
    if (num_neg) n = -n;
    if (den_neg) d = -d;

    Rational r(n, d);
    r.canonicalize();
    if (strict && r.get_str() != original)
        throw ParseError("not in lowest terms: '" + original + "'");
    return r;
}

}  // namespace bellbox
