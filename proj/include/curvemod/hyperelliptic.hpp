#pragma once

#include <sstream>

#include "curvemod/deformation.hpp"
#include "curvemod/engine.hpp"

namespace curvemod {

// The family y^2 = t^{p^2} - t with the order 2p(p-1) group P x| C acting
// through chi = xi^2, where xi identifies C with the 2(p-1)-st roots of
// unity. Everything below is the ramification bookkeeping of that action:
// three branch orbits on the base, one of them wild with a single jump at 2.
struct HyperellipticInstance {
    Int p;
    GroupData group;
    CoverData cover;
};

inline HyperellipticInstance build_hyperelliptic(const Int& p) {
    if (!is_prime(p) || p <= 3)
        throw Failure(FailureCode::NotPrime, "family needs a prime p > 3, got " + str(p));
    HyperellipticInstance inst;
    inst.p = p;
    inst.group = GroupData{p, 1, 2 * (p - 1), 2};

    BranchOrbit z0;  // above t = 0: full tame inertia
    z0.tame_order = 2 * p - 2;
    z0.phi = 2 * p - 3;
    z0.ord_ky = 2 * p - 3;

    BranchOrbit z1;  // above t^p - t = -1: hyperelliptic involution only
    z1.tame_order = 2;
    z1.phi = 1;
    z1.ord_ky = 1;

    BranchOrbit zinf;  // above infinity: totally ramified, jump at 2
    zinf.jumps = {2};
    zinf.tame_order = 2 * p - 2;
    zinf.phi = mod_floor(p, 2 * p - 2);
    zinf.ord_ky = -(2 * p - 1);

    inst.cover.genus_z = 0;
    inst.cover.orbits = {z0, z1, zinf};
    return inst;
}

// The closed-form decomposition of the m-differentials of the family:
// two non-projective summands plus four arithmetic bands of projectives.
inline Decomposition expected_hyperelliptic(const Int& p, const Int& m) {
    if (!is_prime(p) || p <= 3) throw Failure(FailureCode::NotPrime, "p must be a prime > 3");
    if (m <= 1 || 3 * m >= p)
        throw Failure(FailureCode::OutOfRange, "closed form needs 1 < m and 3m < p");
    Int c = 2 * (p - 1);
    Int delta = mod_floor(m, Int(2));

    Decomposition dec;
    dec.add({p - 2 * m, (p - 3 * m + 1 + delta) / 2}, 1);
    dec.add({2 * p - 2 * m, (2 * p - 3 * m + 2 - delta) / 2}, 1);

    // Even socles: coefficient (m - delta)/2, bumped by one on the band E1.
    Int e1_lo = p - m + 1;
    Int e1_hi = p - 1 - (m + delta) / 2;
    for (Int i = 0; i <= p - 2; ++i) {
        Int coeff = (m - delta) / 2;
        if (i >= e1_lo && i <= e1_hi) coeff += 1;
        dec.add({mod_floor(2 * i, c), p}, coeff);
    }
    // Odd socles: coefficient (m + delta)/2, dropped by one off the band O1.
    Int o1_lo = (p + 1) / 2 - m;
    Int o1_hi = p - 2 - (m - delta) / 2;
    for (Int i = 0; i <= p - 2; ++i) {
        Int coeff = (m + delta) / 2;
        if (i < o1_lo || i > o1_hi) coeff -= 1;
        dec.add({mod_floor(2 * i + 1, c), p}, coeff);
    }
    return dec;
}

struct RegressionReport {
    bool pass = true;
    int cases = 0;
    std::string first_failure;
    std::vector<std::string> lines;
};

// Engine vs closed form over every admissible (p, m) with p <= p_max,
// plus the tangent-dimension and dimension-identity checks per case.
inline RegressionReport hyperelliptic_regression(const Int& p_max) {
    RegressionReport report;
    auto fail = [&report](const std::string& msg) {
        report.pass = false;
        if (report.first_failure.empty()) report.first_failure = msg;
        report.lines.push_back("FAIL " + msg);
    };
    for (const Int& p : primes_in_range(7, p_max)) {
        HyperellipticInstance inst = build_hyperelliptic(p);
        for (Int m = 2; 3 * m < p; ++m) {
            ++report.cases;
            std::ostringstream tag;
            tag << "p=" << p << " m=" << m;
            try {
                EngineResult run = decompose_polydifferential(inst.group, inst.cover, m);
                Decomposition expected = expected_hyperelliptic(p, m);
                if (!(run.decomposition == expected)) {
                    fail(tag.str() + ": engine output differs from closed form");
                    continue;
                }
                Int dim = total_dimension(run.decomposition);
                Int want = (2 * m - 1) * (run.trace.genus_x - 1);
                if (dim != want) {
                    fail(tag.str() + ": dimension " + str(dim) + " != " + str(want));
                    continue;
                }
                if (m == 2) {
                    Int tangent = tangent_dimension(inst.group, inst.cover);
                    if (tangent != 1) {
                        fail(tag.str() + ": tangent dimension " + str(tangent) + " != 1");
                        continue;
                    }
                }
                report.lines.push_back("ok " + tag.str() + " dim=" + str(dim));
            } catch (const Failure& f) {
                fail(tag.str() + ": " + f.what());
            }
        }
    }
    return report;
}

}  // namespace curvemod
