#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "curvemod/engine.hpp"

namespace curvemod {

// Case data for G = PSL(2, F_ell) in characteristic 3, level ell >= 7:
// the residues of ell mod 3 and 4, the factorization ell - eps = 2 * 3^n * n',
// and the residues of the weight parameter m that gate the summands.
struct CaseParams {
    Int ell;
    Int m;
    int eps;        // ell = eps mod 3
    int eps_prime;  // ell = eps' mod 4
    int n;          // 3-adic valuation of (ell - eps)/2
    Int n_prime;    // prime-to-3 odd part
    int i_m;        // m mod 3
    int delta0, delta1, delta_m;
    Int m_ell;  // representative of m-1 mod ell in [0, ell)

    bool equal_case() const { return eps == eps_prime; }
    Int sylow() const { return pow_int(Int(3), n); }
};

inline CaseParams case_params(const Int& ell, const Int& m) {
    if (!is_prime(ell) || ell < 7)
        throw Failure(FailureCode::BadLevel, "level must be a prime >= 7, got " + str(ell));
    CaseParams cp;
    cp.ell = ell;
    cp.m = m;
    cp.eps = mod_floor(ell, Int(3)) == 1 ? 1 : -1;
    cp.eps_prime = mod_floor(ell, Int(4)) == 1 ? 1 : -1;
    Int rest = (ell - cp.eps) / 2;
    cp.n = 0;
    while (rest % 3 == 0) {
        rest /= 3;
        ++cp.n;
    }
    cp.n_prime = rest;
    cp.i_m = static_cast<int>(to_long(mod_floor(m, Int(3))));
    cp.delta0 = cp.i_m == 0 ? 1 : 0;
    cp.delta1 = cp.i_m == 1 ? 1 : 0;
    cp.delta_m = mod_floor(m, Int(2)) == 1 ? 1 : 0;
    cp.m_ell = mod_floor(m - 1, ell);
    if (cp.equal_case() && mod_floor(cp.n_prime, Int(2)) != 0)
        throw Failure(FailureCode::BadLevel, "internal: n' must be even when eps = eps'");
    return cp;
}

// ---------------------------------------------------------------------------
// Simple Brauer characters and their projective covers

enum class SimpleTag { Psi0, Psi0Prime, Psi01, Psi10, DeltaTilde, Gamma, Eta };

struct BrauerSimple {
    SimpleTag tag;
    int index;  // t for DeltaTilde, a in {1,2} for Gamma, u for Eta, else 0
    std::string name;
    Int degree;
    Int dimP;  // dimension of the projective cover
    bool max_defect;
};

// The simple Brauer characters in listing order, with degrees and
// projective-cover dimensions.
//
// Projective-cover dimensions for the two-simple maximal-defect blocks come
// from Brauer-tree lines with exceptional multiplicity mu = (3^n - 1)/2:
// exceptional vertex in the middle for the principal block at eps = +1 and
// for the half-degree block, at the leaf next to the (ell-1)-dimensional
// simple for the principal block at eps = -1. Single-simple blocks have
// dimP = 3^n (ell + eps); defect-zero simples are their own covers. All of
// these are pinned by the 3^n-divisibility and total-dimension audits.
inline std::vector<BrauerSimple> brauer_simples(const CaseParams& cp) {
    std::vector<BrauerSimple> out;
    const Int& ell = cp.ell;
    Int syl = cp.sylow();
    Int mu = (syl - 1) / 2;

    BrauerSimple psi0{SimpleTag::Psi0, 0, "psi_0", 1, 0, true};
    BrauerSimple psi0p{SimpleTag::Psi0Prime, 0, "psi_0'", 0, 0, true};
    if (cp.eps == 1) {
        psi0p.degree = ell;
        psi0.dimP = (mu + 1) + mu * ell;
        psi0p.dimP = (mu + 1) * ell + mu;
    } else {
        psi0p.degree = ell - 1;
        psi0.dimP = ell + 1;
        psi0p.dimP = (mu + 1) * (ell - 1) + 1;
    }
    out.push_back(psi0);
    out.push_back(psi0p);

    if (cp.equal_case()) {
        Int half = (ell + cp.eps) / 2;
        out.push_back({SimpleTag::Psi01, 0, "psi_01", half, syl * half, true});
        out.push_back({SimpleTag::Psi10, 0, "psi_10", half, syl * half, true});
    }

    Int t_max = cp.equal_case() ? Int(cp.n_prime / 2 - 1) : Int((cp.n_prime - 1) / 2);
    for (Int t = 1; t <= t_max; ++t) {
        std::string name = "dtilde_" + str(t);
        out.push_back({SimpleTag::DeltaTilde, static_cast<int>(to_long(t)), name, ell + cp.eps,
                       syl * (ell + cp.eps), true});
    }

    if (!cp.equal_case()) {
        Int deg = (ell + cp.eps_prime) / 2;
        out.push_back({SimpleTag::Gamma, 1, "gamma_1", deg, deg, false});
        out.push_back({SimpleTag::Gamma, 2, "gamma_2", deg, deg, false});
    }

    Int u_max = cp.equal_case() ? Int((ell + cp.eps - 2) / 4) : Int((ell + cp.eps) / 4 - 1);
    for (Int u = 1; u <= u_max; ++u) {
        std::string name = "eta_" + str(u);
        out.push_back({SimpleTag::Eta, static_cast<int>(to_long(u)), name, ell - cp.eps,
                       ell - cp.eps, false});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Non-projective part

enum class NPType { UniT0, UniT1, UniT0t, UniTt, UniT01, UniT10, BiT0T0, BiT0T0t, BiT0tT0 };

struct NonProjectiveLabel {
    NPType type;
    int t_index = 0;  // for UniTt
    Int b;            // composition-factor count (biserial: count of the
                      // (ell-1)-dimensional factor)
    Int dimension;
    std::string name;
};

namespace detail {

inline Int alternating_dim(const Int& b, const Int& socle_dim, const Int& other_dim) {
    Int ceil_half = (b + 1) / 2;
    Int floor_half = b / 2;
    return ceil_half * socle_dim + floor_half * other_dim;
}

inline NonProjectiveLabel make_np(const CaseParams& cp, NPType type, const Int& b, int t = 0) {
    const Int& ell = cp.ell;
    NonProjectiveLabel lab;
    lab.type = type;
    lab.t_index = t;
    lab.b = b;
    std::ostringstream name;
    switch (type) {
        case NPType::UniT0:
            lab.dimension = alternating_dim(b, 1, ell);
            name << "U(T0;" << b << ")";
            break;
        case NPType::UniT1:
            lab.dimension = alternating_dim(b, ell, 1);
            name << "U(T1;" << b << ")";
            break;
        case NPType::UniT0t:
            // The exceptional vertex sits at the leaf next to T~0, so the
            // socle-T~0 uniserials of length <= (3^n - 1)/2 wind around it:
            // every composition factor is T~0.
            lab.dimension = b * (ell - 1);
            name << "U(T~0;" << b << ")";
            break;
        case NPType::UniTt:
            lab.dimension = b * (ell + cp.eps);
            name << "U(T~" << t << ";" << b << ")";
            break;
        case NPType::UniT01:
            lab.dimension = b * (ell + cp.eps) / 2;
            name << "U(T01;" << b << ")";
            break;
        case NPType::UniT10:
            lab.dimension = b * (ell + cp.eps) / 2;
            name << "U(T10;" << b << ")";
            break;
        // Biserial string modules wind around the exceptional T~0 leaf and
        // meet the T0 edge only at their ends: besides the b factors
        // isomorphic to T~0 there are two T0 factors when both socle and
        // top contain T0, otherwise one. Pinned by the dimension audits.
        case NPType::BiT0T0:
            lab.dimension = b * (ell - 1) + 2;
            name << "U(T0,T0;" << b << ")";
            break;
        case NPType::BiT0T0t:
            lab.dimension = b * (ell - 1) + 1;
            name << "U(T0,T~0;" << b << ")";
            break;
        case NPType::BiT0tT0:
            lab.dimension = b * (ell - 1) + 1;
            name << "U(T~0,T0;" << b << ")";
            break;
    }
    lab.name = name.str();
    return lab;
}

}  // namespace detail

// The non-projective indecomposable summands with their multiplicities
// (at most one per block; all multiplicities are one, gated by the residues
// of m mod 6).
inline std::vector<NonProjectiveLabel> nonprojective_part(const Int& ell, const Int& m) {
    if (m < 2) throw Failure(FailureCode::OutOfRange, "need m >= 2");
    CaseParams cp = case_params(ell, m);
    Int s = pow_int(Int(3), cp.n - 1);  // 3^{n-1}
    std::vector<NonProjectiveLabel> out;
    auto add = [&out](int gate, NonProjectiveLabel lab) {
        if (gate) out.push_back(std::move(lab));
    };
    int g00 = cp.delta0 * (1 - cp.delta_m);
    int g01 = cp.delta0 * cp.delta_m;
    int g11 = cp.delta1 * cp.delta_m;
    int g10 = cp.delta1 * (1 - cp.delta_m);

    if (cp.eps == -1 && cp.eps_prime == 1) {
        add(g00, detail::make_np(cp, NPType::BiT0T0, s + 1));
        add(g01, detail::make_np(cp, NPType::UniT0t, s));
        add(g11, detail::make_np(cp, NPType::BiT0T0t, (s + 1) / 2));
        add(g10, detail::make_np(cp, NPType::BiT0tT0, (s + 1) / 2));
        for (Int t = 1; t <= (cp.n_prime - 1) / 2; ++t) {
            int ti = static_cast<int>(to_long(t));
            add(cp.delta0, detail::make_np(cp, NPType::UniTt, 2 * s, ti));
            add(cp.delta1, detail::make_np(cp, NPType::UniTt, s, ti));
        }
    } else if (cp.eps == 1 && cp.eps_prime == -1) {
        add(g00, detail::make_np(cp, NPType::UniT0, s));
        add(g01, detail::make_np(cp, NPType::UniT1, s));
        add(g11, detail::make_np(cp, NPType::UniT0, 2 * s));
        add(g10, detail::make_np(cp, NPType::UniT1, 2 * s));
        for (Int t = 1; t <= (cp.n_prime - 1) / 2; ++t) {
            int ti = static_cast<int>(to_long(t));
            add(cp.delta0, detail::make_np(cp, NPType::UniTt, s, ti));
            add(cp.delta1, detail::make_np(cp, NPType::UniTt, 2 * s, ti));
        }
    } else if (cp.eps == 1 && cp.eps_prime == 1) {
        add(g00, detail::make_np(cp, NPType::UniT0, s));
        add(g00, detail::make_np(cp, NPType::UniT01, s));
        add(g01, detail::make_np(cp, NPType::UniT1, s));
        add(g01, detail::make_np(cp, NPType::UniT10, s));
        add(g11, detail::make_np(cp, NPType::UniT0, 2 * s));
        add(g11, detail::make_np(cp, NPType::UniT01, 2 * s));
        add(g10, detail::make_np(cp, NPType::UniT1, 2 * s));
        add(g10, detail::make_np(cp, NPType::UniT10, 2 * s));
        for (Int t = 1; t <= cp.n_prime / 2 - 1; ++t) {
            int ti = static_cast<int>(to_long(t));
            add(cp.delta0, detail::make_np(cp, NPType::UniTt, s, ti));
            add(cp.delta1, detail::make_np(cp, NPType::UniTt, 2 * s, ti));
        }
    } else {  // eps == -1, eps' == -1
        add(g00, detail::make_np(cp, NPType::BiT0T0, s + 1));
        add(g00, detail::make_np(cp, NPType::UniT01, 2 * s));
        add(g01, detail::make_np(cp, NPType::UniT0t, s));
        add(g01, detail::make_np(cp, NPType::UniT10, 2 * s));
        add(g11, detail::make_np(cp, NPType::BiT0T0t, (s + 1) / 2));
        add(g11, detail::make_np(cp, NPType::UniT01, s));
        add(g10, detail::make_np(cp, NPType::BiT0tT0, (s + 1) / 2));
        add(g10, detail::make_np(cp, NPType::UniT10, s));
        for (Int t = 1; t <= cp.n_prime / 2 - 1; ++t) {
            int ti = static_cast<int>(to_long(t));
            add(cp.delta0, detail::make_np(cp, NPType::UniTt, 2 * s, ti));
            add(cp.delta1, detail::make_np(cp, NPType::UniTt, s, ti));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brauer character of the full space at 3-regular classes

enum class ClassRep { Identity, R1, R2, S, VPrimePrime, W };

// Exact value q + r * sqrt(eps' * ell).
struct QuadraticValue {
    Rat rational;
    Rat radical;

    bool operator==(const QuadraticValue&) const = default;
};

inline Int legendre_partial_sum(const Int& ell, const Int& upto) {
    Int s = 0;
    for (Int d = 1; d <= upto; ++d) s += legendre(d, ell);
    return s;
}

inline QuadraticValue brauer_value(const Int& ell, const Int& m, ClassRep rep) {
    CaseParams cp = case_params(ell, m);
    switch (rep) {
        case ClassRep::Identity:
            return {Rat((2 * m - 1) * (ell * ell - 1) * (ell - 6), 24), Rat(0)};
        case ClassRep::S:
            return {Rat((1 - 2 * cp.delta_m) * (ell - cp.eps_prime), 4), Rat(0)};
        case ClassRep::VPrimePrime:
        case ClassRep::W:
            return {Rat(0), Rat(0)};
        case ClassRep::R1:
        case ClassRep::R2: {
            int b = rep == ClassRep::R1 ? 1 : 2;
            int sign = b % 2 == 0 ? 1 : -1;  // (-1)^b
            Int S = legendre_partial_sum(ell, cp.m_ell);
            QuadraticValue v;
            v.rational = Rat(-(ell - 1), 4) + Rat(cp.m_ell, 2);
            if (cp.eps_prime == 1) {
                v.radical = Rat(sign) * Rat(S, 2);
            } else {
                Int h = class_number_imag(ell);
                v.radical = Rat(-sign) * Rat(h - S, 2);
            }
            return v;
        }
    }
    throw Failure(FailureCode::BadClass, "unknown conjugacy class");
}

// ---------------------------------------------------------------------------
// Projective part

// Multiplicities of the projective covers in the largest projective
// summand, aligned with brauer_simples(cp). Every value is asserted to be
// a non-negative integer. s01 fixes the square-root convention that
// distinguishes psi_01 from psi_10; it matters only when eps = eps'.
inline std::vector<Int> projective_part(const Int& ell, const Int& m, int s01 = 1) {
    if (s01 != 1 && s01 != -1) throw Failure(FailureCode::OutOfRange, "s01 must be +1 or -1");
    if (m < 2) throw Failure(FailureCode::OutOfRange, "need m >= 2");
    CaseParams cp = case_params(ell, m);
    auto simples = brauer_simples(cp);

    const Int& el = cp.ell;
    Int d0 = cp.delta0, d1 = cp.delta1, dm = cp.delta_m;
    int eps = cp.eps;
    Int S = legendre_partial_sum(el, cp.m_ell);
    Int mq = (cp.m - 1 - cp.m_ell) / el;  // exact by choice of m_ell
    Int weight = ((3 - eps) / 2) * d0 + ((3 + eps) / 2) * d1;
    Rat band = Rat((2 * cp.m - 1) * (el - 6 + eps) - 4 * weight, 12);
    int sgn4 = mod_floor((el - cp.eps_prime) / 4, Int(2)) == 0 ? 1 : -1;

    Rat psi0 = Rat(cp.m - 2 - 2 * (2 * d0 + d1) + 3 * dm * (2 * d0 - 1), 6) - mq;

    std::vector<Int> out;
    out.reserve(simples.size());
    for (const auto& simple : simples) {
        Rat v;
        switch (simple.tag) {
            case SimpleTag::Psi0:
                v = psi0;
                break;
            case SimpleTag::Psi0Prime:
                if (!cp.equal_case())
                    v = band - Rat(eps, 2) - eps * mq - Rat(1 + eps, 2) * psi0;
                else
                    v = band - eps * dm - eps * mq - Rat(1 + eps, 2) * psi0;
                break;
            case SimpleTag::DeltaTilde: {
                if (!cp.equal_case()) {
                    v = band - Rat(eps, 2) - eps * mq;
                } else {
                    int st = simple.index % 2 == 0 ? 1 : -1;  // (-1)^t
                    v = band - Rat(6 * eps * (1 - (1 - 2 * dm) * st), 12) - eps * mq;
                }
                break;
            }
            case SimpleTag::Gamma: {
                Int h = eps == 1 ? class_number_imag(el) : 0;
                int sa = simple.index == 1 ? 1 : -1;  // (-1)^{a-1}
                v = Rat((2 * cp.m - 1) * (el - 6 - eps) + 6 * eps * (1 - (1 - 2 * dm) * sgn4),
                        24) +
                    Rat(eps * mq, 2) + Rat(sa, 2) * (Rat((1 + eps) * h, 2) - S);
                break;
            }
            case SimpleTag::Psi01:
            case SimpleTag::Psi10: {
                int i = simple.tag == SimpleTag::Psi01 ? 0 : 1;
                int si = i == 0 ? 1 : -1;  // (-1)^i
                Int h = eps == -1 ? class_number_imag(el) : 0;
                Rat first = Rat((2 * cp.m - 1) * (el - 6 + eps) - 4 * weight, 24);
                Rat inner = Rat(sgn4) - Rat(si * ((1 + eps) * d0 + (1 - eps) * d1));
                Rat second = Rat(-6 * eps, 24) * (Rat(1) - Rat(1 - 2 * dm) * inner);
                v = first + second - Rat(eps * mq, 2) +
                    Rat(si * s01, 2) * (Rat((1 - eps) * h, 2) - S);
                break;
            }
            case SimpleTag::Eta: {
                if (!cp.equal_case()) {
                    int su = simple.index % 2 == 0 ? 1 : -1;  // (-1)^u
                    v = Rat((2 * cp.m - 1) * (el - 6 - eps) + 6 * eps * (1 - (1 - 2 * dm) * su),
                            12) +
                        eps * mq;
                } else {
                    v = Rat((2 * cp.m - 1) * (el - 6 - eps) + 6 * eps, 12) + eps * mq;
                }
                break;
            }
        }
        if (!is_integral(v))
            throw Failure(FailureCode::NonIntegralMultiplicity,
                          "projective multiplicity of " + simple.name + " = " + str(v));
        Int vi = to_int(v);
        if (vi < 0)
            throw Failure(FailureCode::NegativeMultiplicity,
                          "projective multiplicity of " + simple.name + " = " + str(vi));
        out.push_back(vi);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Assembled decomposition and audit

struct ModularDecomposition {
    CaseParams params;
    int s01 = 1;
    std::vector<NonProjectiveLabel> nonprojective;
    std::vector<BrauerSimple> simples;
    std::vector<Int> projective;  // aligned with simples
};

inline ModularDecomposition modular_decomposition(const Int& ell, const Int& m, int s01 = 1) {
    ModularDecomposition dec;
    dec.params = case_params(ell, m);
    dec.s01 = s01;
    dec.nonprojective = nonprojective_part(ell, m);
    dec.simples = brauer_simples(dec.params);
    dec.projective = projective_part(ell, m, s01);
    return dec;
}

inline Int total_dimension(const ModularDecomposition& dec) {
    Int total = 0;
    for (const auto& np : dec.nonprojective) total += np.dimension;
    for (std::size_t i = 0; i < dec.simples.size(); ++i)
        total += dec.projective[i] * dec.simples[i].dimP;
    return total;
}

struct AuditReport {
    bool pass = true;
    Int total = 0;
    Int expected = 0;
    std::vector<std::string> lines;
};

// Total-dimension and block-divisibility audit of the assembled
// decomposition against the Brauer character at the identity.
inline AuditReport dimension_audit(const Int& ell, const Int& m, int s01 = 1) {
    AuditReport report;
    ModularDecomposition dec = modular_decomposition(ell, m, s01);
    Int syl = dec.params.sylow();

    for (const auto& np : dec.nonprojective) {
        report.total += np.dimension;
        report.lines.push_back(np.name + "\tdim " + str(np.dimension) + "\tx 1");
    }
    for (std::size_t i = 0; i < dec.simples.size(); ++i) {
        const auto& simple = dec.simples[i];
        if (simple.max_defect && mod_floor(simple.dimP, syl) != 0) {
            report.pass = false;
            report.lines.push_back("FAIL dimP(" + simple.name + ") = " + str(simple.dimP) +
                                   " not divisible by " + str(syl));
        }
        if (dec.projective[i] == 0) continue;
        report.total += dec.projective[i] * simple.dimP;
        report.lines.push_back("P(" + simple.name + ")\tdim " + str(simple.dimP) + "\tx " +
                               str(dec.projective[i]));
    }

    QuadraticValue id = brauer_value(ell, m, ClassRep::Identity);
    report.expected = to_int(id.rational);
    if (report.total != report.expected) {
        report.pass = false;
        report.lines.push_back("FAIL total " + str(report.total) + " != " +
                               str(report.expected));
    }
    return report;
}

// Throwing form of the audit, with the full ledger in the message.
inline AuditReport require_audit(const Int& ell, const Int& m, int s01 = 1) {
    AuditReport report = dimension_audit(ell, m, s01);
    if (!report.pass) {
        std::string ledger;
        for (const auto& line : report.lines) ledger += "\n  " + line;
        throw Failure(FailureCode::AuditFailure,
                      "total " + str(report.total) + " vs expected " + str(report.expected) +
                          ledger);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Local restrictions: the 3-hypo-elementary covers fed to the engine

enum class LocalSubgroup { V, Delta1, Delta2 };

inline const char* local_subgroup_name(LocalSubgroup s) {
    switch (s) {
        case LocalSubgroup::V: return "V";
        case LocalSubgroup::Delta1: return "Delta1";
        case LocalSubgroup::Delta2: return "Delta2";
    }
    return "?";
}

struct LocalCover {
    GroupData group;
    CoverData cover;
    Int genus_x;
};

// Ramification data of X -> X/Gamma for the three 3-hypo-elementary
// subgroups: the 3^{n-1} n' wild points carry jumps [1]; the tame branch
// locus and the canonical-divisor orders at it depend on the case.
inline LocalCover build_local_cover(const Int& ell, LocalSubgroup sub) {
    CaseParams cp = case_params(ell, 2);
    if (sub == LocalSubgroup::Delta2 && !cp.equal_case())
        throw Failure(FailureCode::BadSubgroupForCase,
                      "Delta2 is only defined when ell = eps' mod 4 matches eps");

    LocalCover lc;
    std::vector<BranchOrbit>& orbits = lc.cover.orbits;

    auto wild_free = [](Int count) {
        BranchOrbit o;
        o.jumps = {1};
        return std::vector<BranchOrbit>(static_cast<std::size_t>(to_long(count)), o);
    };
    auto tame = [](const Int& ord) {
        BranchOrbit o;
        o.tame_order = 2;
        o.phi = 1;
        o.ord_ky = ord;
        return o;
    };
    auto wild_branch = [](const Int& ord) {
        BranchOrbit o;
        o.jumps = {1};
        o.tame_order = 2;
        o.phi = 1;
        o.ord_ky = ord;
        return o;
    };

    Int tame_total = (ell - cp.eps_prime) / 2;  // #Z_br for the Delta covers
    if (sub == LocalSubgroup::V) {
        lc.group = GroupData{3, cp.n, cp.n_prime, 0};
        auto w = wild_free(1);
        orbits.insert(orbits.end(), w.begin(), w.end());
        if (cp.equal_case()) {
            orbits.push_back(tame(7));
            orbits.push_back(tame(7));
        }
    } else {
        lc.group = GroupData{3, cp.n, 2, 1};
        Int wild_branch_count = 0;  // i_0
        if (!cp.equal_case()) {
            wild_branch_count = 1;  // Delta = Delta1
        } else {
            wild_branch_count = sub == LocalSubgroup::Delta1 ? 2 : 0;
        }
        for (Int i = 0; i < wild_branch_count; ++i) orbits.push_back(wild_branch(1));
        for (Int i = wild_branch_count; i < tame_total; ++i) orbits.push_back(tame(7));
        Int free_orbits = (cp.n_prime - wild_branch_count) / 2;
        auto w = wild_free(free_orbits);
        orbits.insert(orbits.end(), w.begin(), w.end());
    }

    // Solve Riemann-Hurwitz for the base genus against the known g(X).
    lc.genus_x = 1 + (ell * ell - 1) * (ell - 6) / 24;
    Int rhs = 2 * lc.genus_x - 2;
    for (const auto& orbit : orbits)
        rhs -= x_orbit_size(orbit, lc.group) * orbit_different_exponent(orbit, lc.group);
    Int denom = 2 * lc.group.order();
    if (mod_floor(rhs, denom) != 0)
        throw Failure(FailureCode::InconsistentRamification,
                      "base genus for " + std::string(local_subgroup_name(sub)) +
                          " cover is not integral");
    lc.cover.genus_z = rhs / denom + 1;

    if (genus_X(lc.cover, lc.group) != lc.genus_x)
        throw Failure(FailureCode::InconsistentRamification, "local cover genus check failed");
    return lc;
}

// Closed-form non-projective part of the restriction to a local subgroup.
inline Decomposition expected_local_stable(const Int& ell, LocalSubgroup sub, const Int& m) {
    CaseParams cp = case_params(ell, m);
    if (sub == LocalSubgroup::Delta2 && !cp.equal_case())
        throw Failure(FailureCode::BadSubgroupForCase, "Delta2 needs eps = eps'");
    Int s = pow_int(Int(3), cp.n - 1);
    Decomposition dec;
    if (sub == LocalSubgroup::V) {
        for (Int a = 0; a < cp.n_prime; ++a) {
            if (cp.delta0) dec.add({a, s}, 1);
            if (cp.delta1) dec.add({a, 2 * s}, 1);
        }
        return dec;
    }
    Int i0;
    if (!cp.equal_case())
        i0 = 1;
    else
        i0 = sub == LocalSubgroup::Delta1 ? 2 : 0;
    Int swing = i0 * (1 - 2 * cp.delta_m);
    Int w_plus = (cp.n_prime + swing) / 2;
    Int w_minus = (cp.n_prime - swing) / 2;
    if (cp.delta0) {
        dec.add({0, s}, w_plus);
        dec.add({1, s}, w_minus);
    }
    if (cp.delta1) {
        dec.add({0, 2 * s}, w_minus);
        dec.add({1, 2 * s}, w_plus);
    }
    return dec;
}

inline std::vector<LocalSubgroup> valid_local_subgroups(const Int& ell) {
    CaseParams cp = case_params(ell, 2);
    if (cp.equal_case())
        return {LocalSubgroup::V, LocalSubgroup::Delta1, LocalSubgroup::Delta2};
    return {LocalSubgroup::V, LocalSubgroup::Delta1};
}

// Engine vs closed form for one local restriction.
struct LocalCheck {
    bool pass;
    std::string detail;
};

inline LocalCheck local_restriction_check(const Int& ell, LocalSubgroup sub, const Int& m) {
    LocalCover lc = build_local_cover(ell, sub);
    EngineResult run = decompose_polydifferential(lc.group, lc.cover, m);
    Decomposition got = run.decomposition.nonprojective_part(lc.group);
    Decomposition want = expected_local_stable(ell, sub, m);
    if (got == want) return {true, ""};
    std::ostringstream os;
    os << "mismatch at ell=" << ell << " " << local_subgroup_name(sub) << " m=" << m;
    return {false, os.str()};
}

}  // namespace curvemod
