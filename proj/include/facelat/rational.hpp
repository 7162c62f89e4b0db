#pragma once

#include <gmpxx.h>

#include <regex>
#include <string>

#include "facelat/errors.hpp"

namespace facelat {

/// Arbitrary precision rational (GMP). Never bind arithmetic results to `auto`.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" with optional sign. Decimal and exponent forms are rejected.
inline Rational parse_rational(const std::string& text) {
    static const std::regex pattern(R"(^\s*[-+]?\d+(\s*/\s*\d+)?\s*$)");
    if (!std::regex_match(text, pattern)) {
        throw ParseError("not an exact rational: '" + text + "'");
    }
    std::string compact;
    for (char c : text) {
        if (c != ' ' && c != '\t' && c != '+') compact.push_back(c);
    }
    Rational q;
    if (q.set_str(compact, 10) != 0) throw ParseError("not an exact rational: '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace facelat
