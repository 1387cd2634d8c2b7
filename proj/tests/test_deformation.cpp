#include <catch_amalgamated.hpp>

#include "curvemod/deformation.hpp"
#include "curvemod/hyperelliptic.hpp"

using namespace curvemod;

TEST_CASE("tangent dimension of the hyperelliptic family is one") {
    for (Int p : primes_in_range(7, 31)) {
        auto inst = build_hyperelliptic(p);
        CHECK(tangent_dimension(inst.group, inst.cover) == 1);
    }
}

TEST_CASE("tangent dimension of etale Z/p covers") {
    // m = 2 output is {U_{0,p} : 3(g-1)}; every summand has trivial top.
    GroupData g{5, 1, 1, 0};
    for (Int genus : {Int(2), Int(3), Int(4)}) {
        CoverData cover;
        cover.genus_z = genus;
        EngineResult run = decompose_polydifferential(g, cover, 2);
        Decomposition want;
        want.add({0, 5}, 3 * (genus - 1));
        CHECK(run.decomposition == want);
        CHECK(tangent_dimension(g, cover) == 3 * (genus - 1));
        CHECK(coinvariant_dimension(run.decomposition, g) == 3 * (genus - 1));
    }
}

TEST_CASE("tangent dimension equals the coinvariant count") {
    for (Int p : {Int(7), Int(11), Int(13)}) {
        auto inst = build_hyperelliptic(p);
        EngineResult run = decompose_polydifferential(inst.group, inst.cover, 2);
        CHECK(tangent_dimension(inst.group, inst.cover) ==
              coinvariant_dimension(run.decomposition, inst.group));
    }
}
