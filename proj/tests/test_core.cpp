#include <catch_amalgamated.hpp>

#include "curvemod/hyperelliptic.hpp"
#include "curvemod/validate.hpp"

using namespace curvemod;

TEST_CASE("floor division is toward minus infinity") {
    CHECK(floor_div(Int(-146), Int(7)) == -21);
    CHECK(floor_div(Int(-148), Int(7)) == -22);
    CHECK(floor_div(Int(8), Int(3)) == 2);
    CHECK(floor_div(Int(-1), Int(2)) == -1);
    CHECK(floor_div(Int(-14), Int(7)) == -2);
    for (long a = -25; a <= 25; ++a)
        for (long b = 1; b <= 7; ++b) {
            Int q = floor_div(Int(a), Int(b));
            Int r = mod_floor(Int(a), Int(b));
            CHECK(q * b + r == a);
            CHECK(r >= 0);
            CHECK(r < b);
        }
}

TEST_CASE("chi action on socle indices") {
    GroupData trivial{5, 1, 8, 0};
    CHECK(chi_act(trivial, 3, 5) == 5);

    // hyperelliptic family: c = 2(p-1), chi = 2, so chi^j.0 = 2j
    GroupData hyper{7, 1, 12, 2};
    for (Int j = 0; j <= 5; ++j) CHECK(chi_act(hyper, j, 0) == mod_floor(2 * j, Int(12)));

    GroupData g{7, 1, 6, 2};
    CHECK(chi_act(g, -1, 1) == 5);
    CHECK(chi_act(g, 1, chi_act(g, -1, 1)) == 1);
}

TEST_CASE("chi action composes") {
    GroupData g{7, 2, 6, 2};
    for (Int i = -3; i <= 3; ++i)
        for (Int j = -3; j <= 3; ++j)
            for (Int a = 0; a < 6; ++a)
                CHECK(chi_act(g, i + j, a) == chi_act(g, i, chi_act(g, j, a)));
}

TEST_CASE("chi^(p^(n-nI)) = chi for valid groups") {
    // order(chi) divides p-1, and p^k = 1 mod (p-1)
    for (auto [p, n, c, chi] : {std::tuple<long, int, long, long>{7, 3, 12, 2},
                                {3, 2, 2, 1},
                                {5, 2, 8, 2}}) {
        GroupData g{Int(p), n, Int(c), Int(chi)};
        CoverData etale;
        etale.genus_z = 2;
        REQUIRE(validate_input(g, etale, Mode::omega()).empty());
        for (int n_I = 0; n_I <= n; ++n_I)
            for (Int a = 0; a < c; ++a)
                CHECK(chi_act(g, pow_int(g.p, n - n_I), a) == chi_act(g, 1, a));
    }
}

TEST_CASE("mu indicator") {
    BranchOrbit trivial;  // c_y = 1
    for (Int a = 0; a < 5; ++a)
        for (Int i = -4; i <= 4; ++i) CHECK(mu_indicator(a, i, trivial) == 1);

    // hyperelliptic y_0: c_y = 2p-2, phi = 2p-3 = -1, so mu_{d,-d} = 1
    Int p = 7;
    BranchOrbit y0;
    y0.tame_order = 2 * p - 2;
    y0.phi = 2 * p - 3;
    for (Int d = 0; d < 2 * p - 2; ++d) CHECK(mu_indicator(d, -d, y0) == 1);

    BranchOrbit half;
    half.tame_order = 2;
    half.phi = 1;
    CHECK(mu_indicator(3, -1, half) == 1);
    CHECK(mu_indicator(2, -1, half) == 0);

    // depends on a only through a mod c_y
    BranchOrbit o;
    o.tame_order = 4;
    o.phi = 3;
    for (Int a = 0; a < 16; ++a)
        for (Int i = -5; i <= 5; ++i)
            CHECK(mu_indicator(a, i, o) == mu_indicator(mod_floor(a, o.tame_order), i, o));
}

TEST_CASE("validate_input accepts the hyperelliptic builder") {
    auto inst = build_hyperelliptic(7);
    CHECK(validate_input(inst.group, inst.cover, Mode::poly_diff(2)).empty());
    // and the whole admissible range
    for (Int p : primes_in_range(7, 31)) {
        auto i2 = build_hyperelliptic(p);
        for (Int m = 2; 3 * m < p; ++m)
            CHECK(validate_input(i2.group, i2.cover, Mode::poly_diff(m)).empty());
    }
}

TEST_CASE("validate_input rejects bad groups and orbits") {
    // order of chi is 4, does not divide p-1 = 2
    GroupData g{3, 1, 4, 1};
    auto issues = validate_input(g, CoverData{}, Mode::omega());
    REQUIRE(!issues.empty());
    CHECK(issues.front().code == FailureCode::InvalidGroup);

    GroupData ok{3, 1, 2, 1};
    CoverData cover;
    BranchOrbit bad;
    bad.jumps = {2, 2};
    cover.orbits.push_back(bad);
    issues = validate_input(ok, cover, Mode::omega());
    REQUIRE(!issues.empty());
    CHECK(issues.front().code == FailureCode::InvalidOrbit);
    CHECK(issues.front().orbit == 0);

    GroupData composite{6, 1, 1, 0};
    issues = validate_input(composite, CoverData{}, Mode::omega());
    REQUIRE(!issues.empty());
    CHECK(issues.front().code == FailureCode::InvalidGroup);
}

TEST_CASE("validate_input flags degree and canonical-data problems") {
    auto inst = build_hyperelliptic(7);

    // Riemann-Roch mode with deg(E) = 0 <= 2g - 2
    CoverData small = inst.cover;
    for (auto& orbit : small.orbits) orbit.e = 0;
    auto issues = validate_input(inst.group, small, Mode::riemann_roch());
    REQUIRE(!issues.empty());
    CHECK(issues.front().code == FailureCode::DegreeTooSmall);

    // poly-differential mode with a stripped ord_ky
    CoverData stripped = inst.cover;
    stripped.orbits[1].ord_ky.reset();
    issues = validate_input(inst.group, stripped, Mode::poly_diff(2));
    REQUIRE(!issues.empty());
    CHECK(issues.front().code == FailureCode::MissingCanonicalData);
    CHECK(issues.front().orbit == 1);

    // filtration cap
    GroupData big{2, 21, 1, 0};
    CoverData wild;
    BranchOrbit orbit;
    orbit.jumps.resize(21);
    Int v = 1;
    for (auto& j : orbit.jumps) {
        j = v;
        v += 2;
    }
    wild.orbits.push_back(orbit);
    issues = validate_input(big, wild, Mode::omega());
    REQUIRE(!issues.empty());
    CHECK(issues.front().code == FailureCode::TooLarge);
}

TEST_CASE("total dimension of a decomposition") {
    Decomposition empty;
    CHECK(total_dimension(empty) == 0);

    GroupData g{7, 1, 12, 2};
    Decomposition proj;
    proj.add({0, g.sylow_order()}, 3);
    CHECK(total_dimension(proj) == 3 * 7);

    Decomposition hyper = expected_hyperelliptic(7, 2);
    CHECK(total_dimension(hyper) == 69);  // 3(g-1), g = 24
}

TEST_CASE("coinvariant dimension") {
    GroupData trivial_chi{5, 1, 4, 0};
    Decomposition d;
    d.add({0, 3}, 2);
    d.add({1, 1}, 5);
    CHECK(coinvariant_dimension(d, trivial_chi) == 2);

    // hyperelliptic (7, 2): only U_{0,7} has trivial top
    GroupData g{7, 1, 12, 2};
    Decomposition hyper = expected_hyperelliptic(7, 2);
    CHECK(coinvariant_dimension(hyper, g) == 1);
}

TEST_CASE("decomposition stores no zero multiplicities") {
    Decomposition d;
    d.add({1, 2}, 0);
    CHECK(d.empty());
    d.add({1, 2}, 3);
    d.add({1, 2}, -3);
    CHECK(d.empty());
}
