#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "curvemod/arith.hpp"
#include "curvemod/errors.hpp"
#include "curvemod/numeric.hpp"

namespace curvemod {

// The p-hypo-elementary group P x| C: P cyclic of order p^n acted on by
// the cyclic p'-group C of order c through the character chi. The group is
// recorded as plain data; chi is stored as the index a with S_chi = S_a.
//
// n = 0 is accepted: the formulas degenerate to the tame case (single
// filtration layer, every summand simple = projective), which is needed to
// run prime-to-p restrictions through the same machinery.
struct GroupData {
    Int p;          // prime
    int n = 0;      // Sylow p-order is p^n
    Int c = 1;      // order of C, coprime to p
    Int chi_index = 0;

    Int sylow_order() const { return pow_int(p, n); }
    Int order() const { return sylow_order() * c; }

    // Additive order of chi_index in Z/c = order of the character chi.
    Int chi_order() const {
        if (chi_index == 0) return 1;
        return c / boost::multiprecision::gcd(c, chi_index);
    }
};

// The unique index a' in [0,c) with S_{chi^i . a} = S_{chi^i} (x) S_a.
inline Int chi_act(const GroupData& g, const Int& i, const Int& a) {
    return mod_floor(a + i * g.chi_index, g.c);
}

// One G-orbit of closed points, stored through a representative point x
// above the orbit's base point z. All formulas are orbit-level, so one
// representative suffices.
//   e          coefficient of the invariant divisor E at x (Riemann-Roch mode)
//   jumps      lower ramification jumps i_1 < ... < i_{n_x} of the p-part
//   tame_order c_y, the order of the tame inertia at y below x; divides c
//   phi        exponent of the fundamental character of y, in [0, c_y)
//   ord_ky     ord_{y}(K_Y), needed only in poly-differential mode
struct BranchOrbit {
    std::optional<Int> e;
    std::vector<Int> jumps;
    Int tame_order = 1;
    Int phi = 0;
    std::optional<Int> ord_ky;

    int wild_length() const { return static_cast<int>(jumps.size()); }  // n_x
    bool is_tame_branch() const { return tame_order > 1; }
};

struct CoverData {
    Int genus_z = 0;
    std::vector<BranchOrbit> orbits;

    // n_I: the p-valuation of the largest inertia p-part across the cover.
    int max_wild_length() const {
        int m = 0;
        for (const auto& o : orbits) m = std::max(m, o.wild_length());
        return m;
    }
};

// mu_{a,i}(y) = 1 iff a = i*phi(y) mod c_y, i.e. theta_y^i is the character
// of S_a restricted to the inertia at y.
inline int mu_indicator(const Int& a, const Int& i, const BranchOrbit& orbit) {
    return mod_floor(a - i * orbit.phi, orbit.tame_order) == 0 ? 1 : 0;
}

// U_{a,b}: the indecomposable with socle S_a and k-dimension b.
struct IndecomposableLabel {
    Int a;
    Int b;

    bool operator==(const IndecomposableLabel& o) const { return a == o.a && b == o.b; }
    bool operator<(const IndecomposableLabel& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

// Multiset of indecomposable summands. Zero multiplicities are never stored,
// so equality is multiset equality.
class Decomposition {
public:
    using Map = std::map<IndecomposableLabel, Int>;

    void add(const IndecomposableLabel& label, const Int& mult) {
        if (mult == 0) return;
        auto it = entries_.find(label);
        if (it == entries_.end()) {
            entries_.emplace(label, mult);
        } else {
            it->second += mult;
            if (it->second == 0) entries_.erase(it);
        }
    }

    Int multiplicity(const IndecomposableLabel& label) const {
        auto it = entries_.find(label);
        return it == entries_.end() ? Int(0) : it->second;
    }

    const Map& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    bool operator==(const Decomposition& other) const { return entries_ == other.entries_; }

    // Summands with b < p^n (everything except the projectives U_{a,p^n}).
    Decomposition nonprojective_part(const GroupData& g) const {
        Decomposition out;
        Int pn = g.sylow_order();
        for (const auto& [label, mult] : entries_)
            if (label.b != pn) out.add(label, mult);
        return out;
    }

private:
    Map entries_;
};

inline Int total_dimension(const Decomposition& dec) {
    Int sum = 0;
    for (const auto& [label, mult] : dec.entries()) sum += mult * label.b;
    return sum;
}

// dim of the G-coinvariants: U_{a,b} has one-dimensional coinvariants
// exactly when its top S_{chi^{-b+1}.a} is trivial, i.e. a = chi^{b-1}.0.
inline Int coinvariant_dimension(const Decomposition& dec, const GroupData& g) {
    Int sum = 0;
    for (const auto& [label, mult] : dec.entries())
        if (label.a == chi_act(g, label.b - 1, Int(0))) sum += mult;
    return sum;
}

struct Mode {
    enum class Kind { RiemannRoch, PolyDifferential, Differentials };
    Kind kind;
    Int m = 0;  // tensor power, poly-differential mode only

    static Mode riemann_roch() { return {Kind::RiemannRoch, 0}; }
    static Mode poly_diff(const Int& m) { return {Kind::PolyDifferential, m}; }
    static Mode omega() { return {Kind::Differentials, 0}; }
};

}  // namespace curvemod
