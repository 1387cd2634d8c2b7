#pragma once

#include <vector>

#include "curvemod/errors.hpp"
#include "curvemod/numeric.hpp"

namespace curvemod {

// Deterministic trial division; every prime this library meets is tiny
// (group orders, sweep bounds, class-number discriminants up to ~10^4).
inline bool is_prime(const Int& x) {
    if (x < 2) return false;
    if (x < 4) return true;
    if (x % 2 == 0) return false;
    for (Int d = 3; d * d <= x; d += 2)
        if (x % d == 0) return false;
    return true;
}

inline std::vector<Int> primes_in_range(const Int& lo, const Int& hi) {
    std::vector<Int> out;
    for (Int v = lo; v <= hi; ++v)
        if (is_prime(v)) out.push_back(v);
    return out;
}

// Legendre symbol (d/ell) via Euler's criterion, ell an odd prime.
inline int legendre(const Int& d, const Int& ell) {
    if (ell < 3 || ell % 2 == 0) throw Failure(FailureCode::BadClass, "legendre: modulus must be an odd prime");
    Int a = mod_floor(d, ell);
    if (a == 0) return 0;
    Int e = boost::multiprecision::powm(a, (ell - 1) / 2, ell);
    return e == 1 ? 1 : -1;
}

// Class number of Q(sqrt(-ell)) for a prime ell = 3 mod 4, by exhaustive
// enumeration of reduced primitive binary quadratic forms of discriminant
// -ell. The discriminant is squarefree, so every form is primitive.
inline Int class_number_imag(const Int& ell) {
    if (!is_prime(ell)) throw Failure(FailureCode::WrongResidue, "class number: level must be prime");
    if (mod_floor(ell, 4) != 3)
        throw Failure(FailureCode::WrongResidue, "class number: need ell = 3 mod 4 for discriminant -ell");
    // Reduced: -a < b <= a <= c, with b >= 0 whenever a == c.
    Int count = 0;
    for (Int a = 1; 3 * a * a <= ell; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b + ell;  // b^2 - D with D = -ell
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;  // unreduced duplicate
            ++count;
        }
    }
    return count;
}

}  // namespace curvemod
