#pragma once

#include <optional>
#include <vector>

#include "curvemod/validate.hpp"

namespace curvemod {

// Filtration index 0 <= j < p^{n_I}. Per orbit, j determines the block
// index t with p^{n_I - n_x} t <= j < p^{n_I - n_x}(t+1), and the p-adic
// digits of t pair off with the orbit's jumps.
struct JIndex {
    Int j;
    int n_I;
    Int p;

    Int t_for(int n_x) const { return j / pow_int(p, n_I - n_x); }

    // digits[l-1] = a_{l,t}: least significant digit first.
    std::vector<Int> digits_for(int n_x) const {
        std::vector<Int> digits(static_cast<std::size_t>(n_x));
        Int t = t_for(n_x);
        for (int l = 0; l < n_x; ++l) {
            digits[static_cast<std::size_t>(l)] = t % p;
            t /= p;
        }
        return digits;
    }
};

namespace detail {
// sum_l a_{l,t} p^{n_x - l} i_l, the digit-weighted jump sum.
inline Int weighted_jump_sum(const BranchOrbit& orbit, const JIndex& j, const GroupData& g) {
    int nx = orbit.wild_length();
    auto digits = j.digits_for(nx);
    Int sum = 0;
    for (int l = 1; l <= nx; ++l)
        sum += digits[static_cast<std::size_t>(l - 1)] * pow_int(g.p, nx - l) *
               orbit.jumps[static_cast<std::size_t>(l - 1)];
    return sum;
}
}  // namespace detail

// Coefficient of E_j at (a point above) the orbit, from a raw coefficient e.
// An absent coefficient counts as zero, matching divisor_degree.
inline Int ej_coefficient(const BranchOrbit& orbit, const JIndex& j, const GroupData& g) {
    Int w = detail::weighted_jump_sum(orbit, j, g);
    return floor_div(orbit.e.value_or(0) - w, pow_int(g.p, orbit.wild_length()));
}

// Coefficient of D_j (poly-differential mode); zero off the wild locus.
inline Int dj_coefficient(const BranchOrbit& orbit, const JIndex& j, const Int& m,
                          const GroupData& g) {
    int nx = orbit.wild_length();
    if (nx == 0) return 0;
    Int w = detail::weighted_jump_sum(orbit, j, g);
    return floor_div(m * wild_different_sum(orbit, g) - w, pow_int(g.p, nx));
}

// Coefficient of D_j^Omega (differentials mode); zero off the wild locus.
inline Int omega_d_coefficient(const BranchOrbit& orbit, const JIndex& j, const GroupData& g) {
    int nx = orbit.wild_length();
    if (nx == 0) return 0;
    auto digits = j.digits_for(nx);
    Int num = 0;
    for (int l = 1; l <= nx; ++l)
        num += pow_int(g.p, nx - l) *
               (g.p - 1 + (g.p - 1 - digits[static_cast<std::size_t>(l - 1)]) *
                              orbit.jumps[static_cast<std::size_t>(l - 1)]);
    return floor_div(num, pow_int(g.p, nx));
}

// Representative of e mod c_y in [0, c_y).
inline Int ell_coefficient(const Int& e_yj, const Int& c_y) { return mod_floor(e_yj, c_y); }

// Direct n_j of the main counting formula: 1 - g(Z) + sum (e - ell)/c_y.
inline Int n_j_value(const CoverData& cover, const std::vector<Int>& e_per_orbit,
                     const GroupData& /*g*/) {
    Int sum = 1 - cover.genus_z;
    for (std::size_t i = 0; i < cover.orbits.size(); ++i) {
        const Int& cy = cover.orbits[i].tame_order;
        Int num = e_per_orbit[i] - ell_coefficient(e_per_orbit[i], cy);
        // num is divisible by c_y by construction of ell
        sum += num / cy;
    }
    return sum;
}

// Riemann-Hurwitz route: (deg E_j + 1 - g(Y)) / #(G/I) plus the tame
// correction over branch orbits. Must agree with n_j_value exactly.
inline Int n_j_alt_value(const CoverData& cover, const Int& deg_Ej,
                         const std::vector<Int>& ell_per_orbit, const GroupData& g, int n_I,
                         const Int& genus_y) {
    Rat sum = Rat(deg_Ej + 1 - genus_y, pow_int(g.p, g.n - n_I) * g.c);
    for (std::size_t i = 0; i < cover.orbits.size(); ++i) {
        const Int& cy = cover.orbits[i].tame_order;
        if (cy <= 1) continue;
        sum += Rat(1, cy) * (Rat(cy - 1, 2) - Rat(ell_per_orbit[i]));
    }
    if (!is_integral(sum))
        throw Failure(FailureCode::NonIntegralTerm, "alternate n_j = " + str(sum));
    return to_int(sum);
}

// n(a,j): projective-cover multiplicity in the j-th filtration layer.
inline Int n_aj_value(const CoverData& cover, const GroupData& /*g*/, const Int& a,
                      const std::vector<Int>& ell_per_orbit, const Int& nj) {
    Rat sum = Rat(nj);
    for (std::size_t i = 0; i < cover.orbits.size(); ++i) {
        const auto& orbit = cover.orbits[i];
        const Int& cy = orbit.tame_order;
        if (cy <= 1) continue;
        for (Int d = 1; d <= ell_per_orbit[i]; ++d) sum += mu_indicator(a, -d, orbit);
        for (Int d = 1; d <= cy - 1; ++d)
            if (mu_indicator(a, d, orbit)) sum -= Rat(d, cy);
    }
    if (!is_integral(sum))
        throw Failure(FailureCode::NonIntegralMultiplicity,
                      "n(" + str(a) + ",j) = " + str(sum) + " is not an integer");
    Int v = to_int(sum);
    if (v < 0)
        throw Failure(FailureCode::NegativeMultiplicity, "n(" + str(a) + ",j) = " + str(v));
    return v;
}

struct EngineOptions {
    // Re-derive each layer difference through the shortcut formula and
    // compare with the direct differences.
    bool check_difference_form = true;
};

// Full audit record of one engine run. Orbit-level rows are stored per
// block index t (the value at j depends only on t), with accessors doing
// the j -> t translation.
struct EngineTrace {
    Mode mode{Mode::Kind::RiemannRoch, 0};
    int n_I = 0;
    Int p_nI = 1;
    Int layer = 1;            // p^{n - n_I}, dimension of each PIM of G/I
    Int gbar_order = 1;       // #(G/I)
    Int genus_x = 0, genus_y = 0, genus_z = 0;
    Int deg_e = 0;            // deg(E); 0 in differentials mode
    Int expected_dimension = 0;
    bool direct_route = false;  // orbit-sum n_j evaluable (and checked)

    std::vector<int> orbit_wild;                          // n_x per orbit
    std::vector<std::vector<std::optional<Int>>> e_by_t;  // [orbit][t]
    std::vector<std::vector<Int>> d_by_t;                 // [orbit][t]; poly/omega
    std::vector<std::vector<Int>> ell_by_t;               // [orbit][t]
    std::vector<Int> n_j;
    std::vector<Int> n_j_alt;  // empty in differentials mode
    std::vector<Int> deg_Ej;   // empty in differentials mode
    std::vector<std::vector<Int>> n_aj;  // [a][j]

    Int t_of(std::size_t orbit, const Int& j, const Int& p) const {
        return j / pow_int(p, n_I - orbit_wild[orbit]);
    }
    std::optional<Int> e_at(std::size_t orbit, const Int& j, const Int& p) const {
        return e_by_t[orbit][to_long(t_of(orbit, j, p))];
    }
    Int ell_at(std::size_t orbit, const Int& j, const Int& p) const {
        return ell_by_t[orbit][to_long(t_of(orbit, j, p))];
    }
};

struct EngineResult {
    Decomposition decomposition;
    EngineTrace trace;
};

namespace detail {

// Per-orbit cache for the mu-sums of the counting formula: everything is
// a function of a mod c_y, and the d <= L counts are prefix sums.
struct OrbitMuCache {
    Int c_y;
    std::vector<std::vector<Int>> neg_prefix;  // [a mod c_y][L], L in [0, c_y)
    std::vector<Rat> frac_sum;                 // [a mod c_y]

    OrbitMuCache(const BranchOrbit& orbit) : c_y(orbit.tame_order) {
        long cy = to_long(c_y);
        neg_prefix.assign(cy, std::vector<Int>(cy, 0));
        frac_sum.assign(cy, Rat(0));
        for (long am = 0; am < cy; ++am) {
            for (long d = 1; d < cy; ++d) {
                neg_prefix[am][d] = neg_prefix[am][d - 1] + mu_indicator(Int(am), Int(-d), orbit);
                if (mu_indicator(Int(am), Int(d), orbit)) frac_sum[am] += Rat(d, c_y);
            }
        }
    }

    // #{1 <= d <= L : mu_{a,-d} = 1}
    Int count_neg(const Int& a, const Int& L) const {
        long am = to_long(mod_floor(a, c_y));
        return neg_prefix[am][to_long(L)];
    }
    // signed window sum over d in (lo, hi]
    Int window_neg(const Int& a, const Int& lo, const Int& hi) const {
        long am = to_long(mod_floor(a, c_y));
        return neg_prefix[am][to_long(hi)] - neg_prefix[am][to_long(lo)];
    }
    const Rat& fraction(const Int& a) const { return frac_sum[to_long(mod_floor(a, c_y))]; }
};

class Pipeline {
public:
    Pipeline(const GroupData& g, const CoverData& cover, Mode mode, EngineOptions options)
        : g_(g), cover_(cover), mode_(mode), options_(options) {
        n_I_ = cover.max_wild_length();
        p_nI_ = pow_int(g.p, n_I_);
        layer_ = pow_int(g.p, g.n - n_I_);
        if (g.c * p_nI_ > Int(20000000))
            throw Failure(FailureCode::TooLarge, "multiplicity table would exceed the memory cap");
        genus_x_ = genus_X(cover, g);
        genus_y_ = genus_Y(cover, g);
    }

    EngineResult run() {
        fill_orbit_tables();
        fill_layer_counts();
        fill_multiplicity_table();
        return assemble();
    }

private:
    const GroupData& g_;
    const CoverData& cover_;
    Mode mode_;
    EngineOptions options_;
    int n_I_;
    Int p_nI_, layer_;
    Int genus_x_, genus_y_;
    EngineTrace trace_;
    std::vector<OrbitMuCache> mu_;
    long jn_ = 0;  // p^{n_I} as a loop bound
    long cn_ = 0;  // c as a loop bound

    bool omega() const { return mode_.kind == Mode::Kind::Differentials; }

    std::vector<Int> ell_row(const Int& j) const {
        std::vector<Int> row(cover_.orbits.size());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = trace_.ell_at(i, j, g_.p);
        return row;
    }

    void fill_orbit_tables() {
        trace_.mode = mode_;
        trace_.n_I = n_I_;
        trace_.p_nI = p_nI_;
        trace_.layer = layer_;
        trace_.gbar_order = layer_ * g_.c;
        trace_.genus_x = genus_x_;
        trace_.genus_y = genus_y_;
        trace_.genus_z = cover_.genus_z;
        jn_ = to_long(p_nI_);
        cn_ = to_long(g_.c);

        std::size_t norb = cover_.orbits.size();
        trace_.orbit_wild.resize(norb);
        trace_.e_by_t.resize(norb);
        trace_.d_by_t.resize(norb);
        trace_.ell_by_t.resize(norb);

        // In poly-differential mode the direct orbit-sum route needs the
        // supplied ord(K_Y) data to be a complete canonical divisor.
        bool direct = true;
        if (mode_.kind == Mode::Kind::PolyDifferential) {
            Int kdeg = 0;
            for (const auto& orbit : cover_.orbits) {
                if (!orbit.ord_ky) {
                    direct = false;
                    break;
                }
                kdeg += y_orbit_size(orbit, g_, n_I_) * *orbit.ord_ky;
            }
            if (direct && kdeg != 2 * genus_y_ - 2) direct = false;
        } else if (omega()) {
            direct = false;
        }
        trace_.direct_route = direct;

        for (std::size_t i = 0; i < norb; ++i) {
            const auto& orbit = cover_.orbits[i];
            int nx = orbit.wild_length();
            trace_.orbit_wild[i] = nx;
            long tcount = to_long(pow_int(g_.p, nx));
            trace_.e_by_t[i].resize(tcount);
            if (mode_.kind != Mode::Kind::RiemannRoch) trace_.d_by_t[i].resize(tcount);
            trace_.ell_by_t[i].resize(tcount);
            Int stride = pow_int(g_.p, n_I_ - nx);
            for (long t = 0; t < tcount; ++t) {
                JIndex j{Int(t) * stride, n_I_, g_.p};
                switch (mode_.kind) {
                    case Mode::Kind::RiemannRoch: {
                        Int e = ej_coefficient(orbit, j, g_);
                        trace_.e_by_t[i][t] = e;
                        trace_.ell_by_t[i][t] = ell_coefficient(e, orbit.tame_order);
                        break;
                    }
                    case Mode::Kind::PolyDifferential: {
                        Int d = dj_coefficient(orbit, j, mode_.m, g_);
                        trace_.d_by_t[i][t] = d;
                        if (orbit.ord_ky) {
                            Int e = mode_.m * *orbit.ord_ky + d;
                            trace_.e_by_t[i][t] = e;
                            trace_.ell_by_t[i][t] = ell_coefficient(e, orbit.tame_order);
                        } else {
                            // Validation guarantees c_y = 1 here, so ell = 0.
                            trace_.ell_by_t[i][t] = 0;
                        }
                        break;
                    }
                    case Mode::Kind::Differentials: {
                        Int d = omega_d_coefficient(orbit, j, g_);
                        trace_.d_by_t[i][t] = d;
                        trace_.ell_by_t[i][t] =
                            ell_coefficient(-d, orbit.tame_order);
                        break;
                    }
                }
            }
            mu_.emplace_back(orbit);
        }
    }

    void fill_layer_counts() {
        trace_.n_j.resize(jn_);
        if (!omega()) {
            trace_.deg_Ej.resize(jn_);
            trace_.n_j_alt.resize(jn_);
        }

        if (mode_.kind == Mode::Kind::RiemannRoch) {
            trace_.deg_e = divisor_degree(cover_, g_);
            trace_.expected_dimension = trace_.deg_e + 1 - genus_x_;
        } else if (mode_.kind == Mode::Kind::PolyDifferential) {
            trace_.deg_e = mode_.m * (2 * genus_x_ - 2);
            trace_.expected_dimension = trace_.deg_e + 1 - genus_x_;
        } else {
            trace_.expected_dimension = genus_x_;
        }

        for (long j = 0; j < jn_; ++j) {
            if (omega()) {
                // n_j = g(Z) - 1 + sum (d + ell)/c_y; each term integral by
                // the choice of ell.
                Int sum = cover_.genus_z - 1;
                for (std::size_t i = 0; i < cover_.orbits.size(); ++i) {
                    long t = to_long(trace_.t_of(i, Int(j), g_.p));
                    Int num = trace_.d_by_t[i][t] + trace_.ell_by_t[i][t];
                    sum += num / cover_.orbits[i].tame_order;
                }
                trace_.n_j[j] = sum;
                continue;
            }

            // deg(E_j): orbit-wise in Riemann-Roch mode, through
            // m(2g(Y)-2) + deg(D_j) in poly-differential mode.
            Int deg = 0;
            if (mode_.kind == Mode::Kind::RiemannRoch) {
                for (std::size_t i = 0; i < cover_.orbits.size(); ++i) {
                    long t = to_long(trace_.t_of(i, Int(j), g_.p));
                    deg += y_orbit_size(cover_.orbits[i], g_, n_I_) * *trace_.e_by_t[i][t];
                }
            } else {
                deg = mode_.m * (2 * genus_y_ - 2);
                for (std::size_t i = 0; i < cover_.orbits.size(); ++i) {
                    long t = to_long(trace_.t_of(i, Int(j), g_.p));
                    deg += y_orbit_size(cover_.orbits[i], g_, n_I_) * trace_.d_by_t[i][t];
                }
            }
            trace_.deg_Ej[j] = deg;

            Int alt = n_j_alt_value(cover_, deg, ell_row(Int(j)), g_, n_I_, genus_y_);
            trace_.n_j_alt[j] = alt;

            if (trace_.direct_route) {
                std::vector<Int> erow(cover_.orbits.size());
                for (std::size_t i = 0; i < erow.size(); ++i)
                    erow[i] = *trace_.e_at(i, Int(j), g_.p);
                Int direct = n_j_value(cover_, erow, g_);
                if (direct != alt)
                    throw Failure(FailureCode::InconsistentRamification,
                                  "n_j routes disagree at j = " + std::to_string(j) + ": " +
                                      str(direct) + " vs " + str(alt));
                trace_.n_j[j] = direct;
            } else {
                trace_.n_j[j] = alt;
            }
        }
    }

    void fill_multiplicity_table() {
        trace_.n_aj.assign(cn_, std::vector<Int>(jn_));
        int sign = omega() ? -1 : 1;
        Int delta_last = omega() ? 1 : 0;
        for (long a = 0; a < cn_; ++a) {
            for (long j = 0; j < jn_; ++j) {
                Rat sum = Rat(trace_.n_j[j]);
                if (omega() && j == jn_ - 1 && a == 0) sum += delta_last;
                for (std::size_t i = 0; i < cover_.orbits.size(); ++i) {
                    if (cover_.orbits[i].tame_order <= 1) continue;
                    long t = to_long(trace_.t_of(i, Int(j), g_.p));
                    Int ell = trace_.ell_by_t[i][t];
                    sum += sign * mu_[i].count_neg(Int(a), ell);
                    sum -= sign * mu_[i].fraction(Int(a));
                }
                if (!is_integral(sum))
                    throw Failure(FailureCode::NonIntegralMultiplicity,
                                  "n(" + std::to_string(a) + "," + std::to_string(j) + ") = " +
                                      str(sum));
                Int v = to_int(sum);
                if (v < 0)
                    throw Failure(FailureCode::NegativeMultiplicity,
                                  "n(" + std::to_string(a) + "," + std::to_string(j) + ") = " +
                                      str(v));
                trace_.n_aj[a][j] = v;
            }
        }
    }

    // Difference shortcut for one layer step; must reproduce the direct
    // difference of the counting formula.
    Int difference_form(long a, long j) const {
        Int diff = trace_.n_j[j] - trace_.n_j[j + 1];
        if (omega() && j == jn_ - 2 && a == 0) diff -= 1;
        for (std::size_t i = 0; i < cover_.orbits.size(); ++i) {
            if (cover_.orbits[i].tame_order <= 1) continue;
            Int l0 = trace_.ell_at(i, Int(j), g_.p);
            Int l1 = trace_.ell_at(i, Int(j + 1), g_.p);
            Int lo = l0 < l1 ? l0 : l1;
            Int hi = l0 < l1 ? l1 : l0;
            int eps;
            if (omega())
                eps = (l0 <= l1) ? 1 : -1;
            else
                eps = (l0 >= l1) ? 1 : -1;
            diff += eps * mu_[i].window_neg(Int(a), lo, hi);
        }
        return diff;
    }

    EngineResult assemble() {
        Decomposition dec;
        Int pn = g_.sylow_order();

        for (long a = 0; a < cn_; ++a) {
            for (long j = 0; j + 1 < jn_; ++j) {
                Int mult = trace_.n_aj[a][j] - trace_.n_aj[a][j + 1];
                if (options_.check_difference_form) {
                    Int shortcut = difference_form(a, j);
                    if (shortcut != mult)
                        throw Failure(FailureCode::InconsistentRamification,
                                      "difference shortcut mismatch at (a,j) = (" +
                                          std::to_string(a) + "," + std::to_string(j) + ")");
                }
                if (mult < 0)
                    throw Failure(FailureCode::NegativeMultiplicity,
                                  "layer difference negative at (a,j) = (" + std::to_string(a) +
                                      "," + std::to_string(j) + ")");
                dec.add({Int(a), Int(j + 1) * layer_}, mult);
            }
            Int top = trace_.n_aj[a][jn_ - 1];
            if (omega()) {
                int mu_chi = (Int(a) == g_.chi_index) ? 1 : 0;
                if (n_I_ < g_.n) {
                    dec.add({Int(a), (p_nI_ - 1) * layer_ + 1}, mu_chi);
                    top -= mu_chi;
                }
                if (top < 0)
                    throw Failure(FailureCode::NegativeMultiplicity,
                                  "top layer multiplicity negative at a = " + std::to_string(a));
            }
            dec.add({Int(a), pn}, top);
        }

        Int total = total_dimension(dec);
        if (total != trace_.expected_dimension)
            throw Failure(FailureCode::DimensionMismatch,
                          "dimension " + str(total) + " != expected " +
                              str(trace_.expected_dimension));
        return {std::move(dec), std::move(trace_)};
    }
};

}  // namespace detail

inline EngineResult decompose_riemann_roch(const GroupData& g, const CoverData& cover,
                                           const EngineOptions& options = {}) {
    require_valid(g, cover, Mode::riemann_roch());
    return detail::Pipeline(g, cover, Mode::riemann_roch(), options).run();
}

inline EngineResult decompose_polydifferential(const GroupData& g, const CoverData& cover,
                                               const Int& m, const EngineOptions& options = {}) {
    require_valid(g, cover, Mode::poly_diff(m));
    return detail::Pipeline(g, cover, Mode::poly_diff(m), options).run();
}

inline EngineResult decompose_differentials(const GroupData& g, const CoverData& cover,
                                            const EngineOptions& options = {}) {
    require_valid(g, cover, Mode::omega());
    return detail::Pipeline(g, cover, Mode::omega(), options).run();
}

}  // namespace curvemod
