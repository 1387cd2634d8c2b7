#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace curvemod {

// All divisor coefficients and multiplicities are exact. Intermediate
// multiplicity formulas live in Rat and are asserted integral, never rounded.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Mathematical floor division (toward -inf). Divisor coefficients are
// routinely negative, so truncating division would be wrong here.
inline Int floor_div(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
    Int q = a / b;
    Int r = a % b;
    if (r != 0 && r < 0) --q;
    return q;
}

// Representative of a mod b in [0, b).
inline Int mod_floor(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
    Int r = a % b;
    if (r < 0) r += b;
    return r;
}

inline Int pow_int(const Int& base, int exp) {
    if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
    Int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline bool is_integral(const Rat& q) {
    return boost::multiprecision::denominator(q) == 1;
}

inline Int to_int(const Rat& q) {
    if (!is_integral(q)) throw std::invalid_argument("to_int: value is not an integer");
    return boost::multiprecision::numerator(q);
}

inline long to_long(const Int& v) { return v.convert_to<long>(); }

inline std::string str(const Int& v) { return v.str(); }

inline std::string str(const Rat& q) {
    if (is_integral(q)) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

}  // namespace curvemod
