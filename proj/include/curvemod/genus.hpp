#pragma once

#include "curvemod/model.hpp"

namespace curvemod {

// Sum over i >= 0 of (#I_{x,i} - 1) for the p-part filtration at x,
// reconstructed from the jumps: with i_0 = 0,
//   (p^{n_x} - 1) + sum_l (i_l - i_{l-1}) (p^{n_x - l + 1} - 1).
// Equals (p-1) * sum_l p^{n_x - l} (i_l + 1); zero when x is tame.
inline Int wild_different_sum(const BranchOrbit& orbit, const GroupData& g) {
    int nx = orbit.wild_length();
    if (nx == 0) return 0;
    Int total = pow_int(g.p, nx) - 1;
    Int prev = 0;
    for (int l = 1; l <= nx; ++l) {
        total += (orbit.jumps[l - 1] - prev) * (pow_int(g.p, nx - l + 1) - 1);
        prev = orbit.jumps[l - 1];
    }
    return total;
}

// Full different exponent d_x of x over z. Higher ramification (i >= 1) of
// the full inertia equals that of its p-part, so the tame contribution is
// p^{n_x} c_y - 1 and the wild contribution is the i >= 1 part above.
inline Int orbit_different_exponent(const BranchOrbit& orbit, const GroupData& g) {
    int nx = orbit.wild_length();
    Int tame = pow_int(g.p, nx) * orbit.tame_order - 1;
    Int wild = wild_different_sum(orbit, g) - (pow_int(g.p, nx) - 1);
    return tame + wild;
}

// Number of X-points in the orbit: #G / #G_x with #G_x = p^{n_x} c_y.
inline Int x_orbit_size(const BranchOrbit& orbit, const GroupData& g) {
    return g.order() / (pow_int(g.p, orbit.wild_length()) * orbit.tame_order);
}

// Number of Y-points above the orbit's base point: #(G/I) / c_y.
inline Int y_orbit_size(const BranchOrbit& orbit, const GroupData& g, int n_I) {
    return pow_int(g.p, g.n - n_I) * g.c / orbit.tame_order;
}

// Genus of X from Riemann-Hurwitz for X -> Z. Non-integral or negative
// results mean the ramification data cannot come from a curve; be loud.
inline Int genus_X(const CoverData& cover, const GroupData& g) {
    Int rhs = g.order() * (2 * cover.genus_z - 2);
    for (const auto& orbit : cover.orbits)
        rhs += x_orbit_size(orbit, g) * orbit_different_exponent(orbit, g);
    if (mod_floor(rhs, Int(2)) != 0)
        throw Failure(FailureCode::InconsistentRamification,
                      "2g(X)-2 = " + str(rhs) + " is odd");
    Int gx = rhs / 2 + 1;
    if (gx < 0)
        throw Failure(FailureCode::InconsistentRamification,
                      "genus of X is negative (" + str(gx) + ")");
    return gx;
}

// Genus of Y = X/I from Riemann-Hurwitz for pi: X -> Y, whose different at
// a wild point is wild_different_sum.
inline Int genus_Y(const CoverData& cover, const GroupData& g) {
    Int gx = genus_X(cover, g);
    int n_I = cover.max_wild_length();
    Int lhs = 2 * gx - 2;
    for (const auto& orbit : cover.orbits)
        lhs -= x_orbit_size(orbit, g) * wild_different_sum(orbit, g);
    Int deg = pow_int(g.p, n_I);
    if (mod_floor(lhs, 2 * deg) != 0)
        throw Failure(FailureCode::InconsistentRamification,
                      "2g(Y)-2 = " + str(lhs) + "/" + str(deg) + " is not an even integer");
    Int gy = lhs / (2 * deg) + 1;
    if (gy < 0)
        throw Failure(FailureCode::InconsistentRamification,
                      "genus of Y is negative (" + str(gy) + ")");
    return gy;
}

// deg(E) for a raw-coefficient divisor; absent coefficients count as zero.
inline Int divisor_degree(const CoverData& cover, const GroupData& g) {
    Int deg = 0;
    for (const auto& orbit : cover.orbits)
        deg += x_orbit_size(orbit, g) * orbit.e.value_or(0);
    return deg;
}

}  // namespace curvemod
