#pragma once

#include <random>
#include <sstream>

#include "curvemod/hyperelliptic.hpp"
#include "curvemod/modular.hpp"

namespace curvemod {

// Randomized engine inputs built on ramification skeletons that come from
// genuine covers (so the counting formulas' guarantees hold): the hyperelliptic
// family, the modular local covers, etale covers, and Artin-Schreier /
// Katz-Gabber wild covers of the line. The invariant divisor is randomized
// freely; only the degree bound is enforced.
struct SyntheticCase {
    std::string tag;
    GroupData group;
    CoverData cover;
    Mode mode;
};

namespace synth_detail {

inline Int rand_int(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return Int(dist(rng));
}

// Random coefficients on every orbit, then a filler free orbit so that
// deg(E) > 2g(X) - 2.
inline void randomize_divisor(std::mt19937_64& rng, const GroupData& g, CoverData& cover) {
    for (auto& orbit : cover.orbits) orbit.e = rand_int(rng, -60, 60);
    Int gx = genus_X(cover, g);
    Int deg = divisor_degree(cover, g);
    Int deficit = 2 * gx - 2 - deg;
    if (deficit >= 0 || rand_int(rng, 0, 1) == 0) {
        BranchOrbit filler;
        filler.e = floor_div(deficit, g.order()) + 1 + rand_int(rng, 0, 5);
        cover.orbits.push_back(filler);
    }
}

inline GroupData random_etale_group(std::mt19937_64& rng) {
    static const long primes[] = {2, 3, 5, 7, 11};
    GroupData g;
    g.p = primes[to_long(rand_int(rng, 0, 4))];
    g.n = static_cast<int>(to_long(rand_int(rng, 0, 2)));
    if (pow_int(g.p, g.n) > 125) g.n = 1;
    for (;;) {
        Int c = rand_int(rng, 1, 12);
        if (boost::multiprecision::gcd(c, g.p) != 1) continue;
        g.c = c;
        break;
    }
    // chi with character order dividing p-1
    std::vector<Int> candidates;
    for (Int chi = 0; chi < g.c; ++chi) {
        Int order = chi == 0 ? Int(1) : g.c / boost::multiprecision::gcd(g.c, chi);
        if (mod_floor(g.p - 1, order) == 0) candidates.push_back(chi);
    }
    g.chi_index = candidates[to_long(rand_int(rng, 0, static_cast<long>(candidates.size()) - 1))];
    return g;
}

}  // namespace synth_detail

inline std::vector<SyntheticCase> synthetic_cases(unsigned seed, int count) {
    using namespace synth_detail;
    std::mt19937_64 rng(seed);
    std::vector<SyntheticCase> out;
    static const long hyper_primes[] = {7, 11, 13, 17, 19, 23, 29, 31};
    static const long levels[] = {7, 11, 13, 19};

    int produced = 0;
    for (int k = 0; produced < count; ++k) {
        int family = k % 6;
        std::ostringstream tag;
        SyntheticCase sc;
        switch (family) {
            case 0: {  // hyperelliptic skeleton, raw divisor
                Int p = hyper_primes[to_long(rand_int(rng, 0, 7))];
                auto inst = build_hyperelliptic(p);
                sc.group = inst.group;
                sc.cover = inst.cover;
                randomize_divisor(rng, sc.group, sc.cover);
                sc.mode = Mode::riemann_roch();
                tag << "hyperelliptic-skeleton p=" << p;
                break;
            }
            case 1: {  // modular local skeleton, raw divisor
                Int ell = levels[to_long(rand_int(rng, 0, 3))];
                auto subs = valid_local_subgroups(ell);
                auto sub = subs[to_long(rand_int(rng, 0, static_cast<long>(subs.size()) - 1))];
                auto lc = build_local_cover(ell, sub);
                sc.group = lc.group;
                sc.cover = lc.cover;
                randomize_divisor(rng, sc.group, sc.cover);
                sc.mode = Mode::riemann_roch();
                tag << "modular-skeleton ell=" << ell << " " << local_subgroup_name(sub);
                break;
            }
            case 2: {  // etale cover of a higher-genus base
                sc.group = random_etale_group(rng);
                sc.cover.genus_z = rand_int(rng, 2, 4);
                long extras = to_long(rand_int(rng, 0, 2));
                for (long i = 0; i < extras; ++i) sc.cover.orbits.push_back(BranchOrbit{});
                if (rand_int(rng, 0, 3) == 0) {
                    sc.mode = Mode::omega();
                } else {
                    randomize_divisor(rng, sc.group, sc.cover);
                    sc.mode = Mode::riemann_roch();
                }
                tag << "etale p=" << sc.group.p << " n=" << sc.group.n << " c=" << sc.group.c;
                break;
            }
            case 3: {  // Artin-Schreier: several wild points, jumps coprime to p
                static const long ps[] = {2, 3, 5, 7};
                sc.group = GroupData{ps[to_long(rand_int(rng, 0, 3))], 1, 1, 0};
                sc.cover.genus_z = rand_int(rng, 0, 2);
                long points = to_long(rand_int(rng, 1, 3));
                for (long i = 0; i < points; ++i) {
                    BranchOrbit orbit;
                    for (;;) {
                        Int jump = rand_int(rng, 1, 9);
                        if (mod_floor(jump, sc.group.p) != 0) {
                            orbit.jumps = {jump};
                            break;
                        }
                    }
                    sc.cover.orbits.push_back(orbit);
                }
                if (rand_int(rng, 0, 3) == 0 && genus_X(sc.cover, sc.group) >= 2) {
                    sc.mode = Mode::omega();
                } else {
                    randomize_divisor(rng, sc.group, sc.cover);
                    sc.mode = Mode::riemann_roch();
                }
                tag << "artin-schreier p=" << sc.group.p;
                break;
            }
            case 4: {  // Katz-Gabber chain: cyclic p^2, one wild point
                static const long ps[] = {2, 3};
                Int p = ps[to_long(rand_int(rng, 0, 1))];
                sc.group = GroupData{p, 2, 1, 0};
                sc.cover.genus_z = 0;
                BranchOrbit orbit;
                Int u1 = 0;
                for (;;) {
                    u1 = rand_int(rng, 1, 5);
                    if (mod_floor(u1, p) != 0) break;
                }
                Int u2;
                if (rand_int(rng, 0, 1) == 0) {
                    u2 = p * u1;
                } else {
                    for (;;) {
                        u2 = p * u1 + rand_int(rng, 1, 6);
                        if (mod_floor(u2, p) != 0) break;
                    }
                }
                // lower numbering: i1 = u1, i2 = i1 + p (u2 - u1)
                orbit.jumps = {u1, u1 + p * (u2 - u1)};
                sc.cover.orbits.push_back(orbit);
                randomize_divisor(rng, sc.group, sc.cover);
                sc.mode = Mode::riemann_roch();
                tag << "katz-gabber p=" << p;
                break;
            }
            case 5: {  // poly-differentials of the worked covers, any m >= 2
                Int m = rand_int(rng, 2, 40);
                if (rand_int(rng, 0, 1) == 0) {
                    Int p = hyper_primes[to_long(rand_int(rng, 0, 7))];
                    auto inst = build_hyperelliptic(p);
                    sc.group = inst.group;
                    sc.cover = inst.cover;
                    tag << "hyperelliptic poly-diff p=" << p << " m=" << m;
                } else {
                    Int ell = levels[to_long(rand_int(rng, 0, 3))];
                    auto subs = valid_local_subgroups(ell);
                    auto sub = subs[to_long(rand_int(rng, 0, static_cast<long>(subs.size()) - 1))];
                    auto lc = build_local_cover(ell, sub);
                    sc.group = lc.group;
                    sc.cover = lc.cover;
                    tag << "modular poly-diff ell=" << ell << " " << local_subgroup_name(sub)
                        << " m=" << m;
                }
                sc.mode = Mode::poly_diff(m);
                break;
            }
        }
        sc.tag = tag.str();
        if (!validate_input(sc.group, sc.cover, sc.mode).empty()) continue;  // rare rejects
        out.push_back(std::move(sc));
        ++produced;
    }
    return out;
}

struct PropertyCheck {
    bool pass = true;
    std::string detail;
};

// Runs the case and re-verifies the engine's guarantees from the outside:
// integral non-negative n(a,j) non-increasing in j, two-route n_j equality,
// and the dimension identity.
inline PropertyCheck check_engine_properties(const SyntheticCase& sc) {
    PropertyCheck pc;
    auto fail = [&pc, &sc](const std::string& msg) {
        pc.pass = false;
        pc.detail = sc.tag + ": " + msg;
    };
    try {
        EngineResult result = [&] {
            switch (sc.mode.kind) {
                case Mode::Kind::RiemannRoch: return decompose_riemann_roch(sc.group, sc.cover);
                case Mode::Kind::PolyDifferential:
                    return decompose_polydifferential(sc.group, sc.cover, sc.mode.m);
                case Mode::Kind::Differentials:
                    return decompose_differentials(sc.group, sc.cover);
            }
            throw Failure(FailureCode::OutOfRange, "bad mode");
        }();
        const EngineTrace& tr = result.trace;
        for (const auto& row : tr.n_aj) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (row[j] < 0) return fail("negative n(a,j)"), pc;
                if (j + 1 < row.size() && row[j] < row[j + 1])
                    return fail("n(a,j) increases in j"), pc;
            }
        }
        if (!tr.n_j_alt.empty() && tr.n_j != tr.n_j_alt) return fail("n_j routes differ"), pc;
        if (total_dimension(result.decomposition) != tr.expected_dimension)
            return fail("dimension identity"), pc;
    } catch (const Failure& f) {
        fail(f.what());
    }
    return pc;
}

}  // namespace curvemod
