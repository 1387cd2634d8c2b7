#pragma once

#include <sstream>
#include <vector>

#include "curvemod/genus.hpp"
#include "curvemod/model.hpp"

namespace curvemod {

struct ValidationIssue {
    FailureCode code;
    std::string message;
    int orbit = -1;  // index into cover.orbits, or -1

    std::string text() const {
        std::ostringstream os;
        os << failure_name(code);
        if (orbit >= 0) os << " (orbit " << orbit << ")";
        os << ": " << message;
        return os.str();
    }
};

// Hard cap on the filtration length; the j-loop and trace are materialized.
inline const Int kMaxFiltration = 1000000;

inline void validate_group(const GroupData& g, std::vector<ValidationIssue>& issues) {
    if (!is_prime(g.p)) {
        issues.push_back({FailureCode::InvalidGroup, "p = " + str(g.p) + " is not prime"});
        return;
    }
    if (g.n < 0) issues.push_back({FailureCode::InvalidGroup, "n must be >= 0"});
    if (g.c < 1) issues.push_back({FailureCode::InvalidGroup, "c must be >= 1"});
    if (g.c >= 1 && boost::multiprecision::gcd(g.c, g.p) != 1)
        issues.push_back({FailureCode::InvalidGroup, "gcd(c, p) must be 1"});
    if (g.chi_index < 0 || (g.c >= 1 && g.chi_index >= g.c)) {
        issues.push_back({FailureCode::InvalidGroup, "chi index must lie in [0, c)"});
        return;
    }
    if (g.c >= 1 && mod_floor(g.p - 1, g.chi_order()) != 0)
        issues.push_back({FailureCode::InvalidGroup,
                          "order of chi (" + str(g.chi_order()) + ") does not divide p-1"});
}

inline void validate_orbit(const BranchOrbit& orbit, const GroupData& g, int index,
                           std::vector<ValidationIssue>& issues) {
    Int prev = 0;
    for (const auto& j : orbit.jumps) {
        if (j <= prev) {
            issues.push_back({FailureCode::InvalidOrbit,
                              "jumps must be strictly increasing positive integers", index});
            break;
        }
        prev = j;
    }
    if (orbit.wild_length() > g.n)
        issues.push_back({FailureCode::InvalidOrbit,
                          "more jumps than the Sylow p-order allows (n_x > n)", index});
    if (orbit.tame_order < 1 || mod_floor(g.c, orbit.tame_order) != 0)
        issues.push_back({FailureCode::InvalidOrbit,
                          "tame order " + str(orbit.tame_order) + " does not divide c", index});
    if (orbit.phi < 0 || orbit.phi >= orbit.tame_order)
        issues.push_back({FailureCode::InvalidOrbit,
                          "fundamental character exponent must lie in [0, tame_order)", index});
}

// Full input validation for one engine mode. Returns every detected issue;
// an empty list means the input may be fed to the engine.
inline std::vector<ValidationIssue> validate_input(const GroupData& g, const CoverData& cover,
                                                   const Mode& mode) {
    std::vector<ValidationIssue> issues;
    validate_group(g, issues);
    if (!issues.empty()) return issues;
    for (std::size_t i = 0; i < cover.orbits.size(); ++i)
        validate_orbit(cover.orbits[i], g, static_cast<int>(i), issues);
    if (cover.genus_z < 0)
        issues.push_back({FailureCode::InvalidOrbit, "base genus must be >= 0"});
    if (!issues.empty()) return issues;

    int n_I = cover.max_wild_length();
    if (pow_int(g.p, n_I) > kMaxFiltration) {
        issues.push_back({FailureCode::TooLarge,
                          "p^{n_I} exceeds the filtration cap " + str(kMaxFiltration)});
        return issues;
    }

    Int gx;
    try {
        gx = genus_X(cover, g);
        genus_Y(cover, g);
    } catch (const Failure& f) {
        issues.push_back({f.code(), f.what()});
        return issues;
    }

    if (mode.kind == Mode::Kind::PolyDifferential) {
        if (mode.m < 2)
            issues.push_back({FailureCode::OutOfRange, "poly-differential mode needs m >= 2"});
        for (std::size_t i = 0; i < cover.orbits.size(); ++i)
            if (cover.orbits[i].tame_order > 1 && !cover.orbits[i].ord_ky)
                issues.push_back({FailureCode::MissingCanonicalData,
                                  "ord(K_Y) required at tame branch orbits in poly-differential mode",
                                  static_cast<int>(i)});
        if (issues.empty()) {
            Int bound = 2 * gx - 2;
            Int deg = mode.m * bound;  // deg(m K_X)
            if (deg <= bound)
                issues.push_back({FailureCode::DegreeTooSmall,
                                  "deg(E) = " + str(deg) + " must exceed 2g(X)-2 = " + str(bound) +
                                      " (g(X) >= 2 required)"});
        }
    } else if (mode.kind == Mode::Kind::RiemannRoch) {
        Int bound = 2 * gx - 2;
        Int deg = divisor_degree(cover, g);
        if (deg <= bound)
            issues.push_back({FailureCode::DegreeTooSmall,
                              "deg(E) = " + str(deg) + " must exceed 2g(X)-2 = " + str(bound)});
    }
    // Differentials mode has no degree condition.
    return issues;
}

inline void require_valid(const GroupData& g, const CoverData& cover, const Mode& mode) {
    auto issues = validate_input(g, cover, mode);
    if (!issues.empty()) throw Failure(issues.front().code, issues.front().text());
}

}  // namespace curvemod
