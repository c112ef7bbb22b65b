#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "valinf/errors.hpp"

namespace valinf {

// Arbitrary-precision integers and rationals. cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the contract
// every lattice computation here relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const BigInt& n) { return n.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Strict "p", "-p" or "p/q" with q > 0 after normalization. No floats.
inline Rational parse_rational(std::string_view text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    std::string s(text);
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw ParseError("bad rational literal '" + s + "'");
    }
    try {
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw ParseError("bad rational literal '" + s + "'");
    }
}

inline BigInt parse_integer(std::string_view text) {
    Rational r = parse_rational(text);
    if (!is_integer(r))
        throw ParseError("expected an integer, got '" + std::string(text) + "'");
    return numerator(r);
}

// "p" when the denominator is 1, "p/q" otherwise. Never emits floats.
inline std::string to_string(const Rational& r) {
    if (is_integer(r))
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

using Vec = std::vector<Rational>;

inline std::string to_string(const Vec& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ' ';
        out += to_string(v[i]);
    }
    return out;
}

} // namespace valinf
