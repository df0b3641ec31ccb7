#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace vdc {

// Exact arithmetic everywhere a formula is exact: arbitrary-precision
// integers and always-reduced rationals (denominator > 0, gcd = 1).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) { return Rat(Int(num), Int(den)); }

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Serialized form is "num/den" (reduced), or just "num" for integers.
inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

// Accepts "p/q", "p", and an optional leading minus on the numerator.
inline Rat parse_rat(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("not a rational: '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den <= 0) throw bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

}  // namespace vdc
