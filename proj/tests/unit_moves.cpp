#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "crysta/homology.hpp"
#include "crysta/invariants.hpp"
#include "support/testutil.hpp"

using namespace crysta;
using namespace testutil;

namespace {

std::set<std::tuple<int, int, uint8_t>> dipole_set(const std::vector<Dipole>& ds) {
    std::set<std::tuple<int, int, uint8_t>> out;
    for (const Dipole& d : ds) out.insert({d.v, d.w, d.colors.mask()});
    return out;
}

}  // namespace

TEST_CASE("the order-2 gem has no dipoles and no rho-pairs") {
    CHECK(find_dipoles(order2()).empty());
    CHECK(find_rho_pairs(order2()).empty());
    CHECK(is_rigid_dipole_free(order2()));
}

TEST_CASE("the welded order-4 gem contains the expected dipoles") {
    // two 4-dipoles across the quadruple edges and two 1-dipoles across the
    // color-0 bridges
    auto all = find_dipoles(welded_order4());
    CHECK(all.size() == 4);
    auto quad = find_dipoles(welded_order4(), 4);
    REQUIRE(quad.size() == 2);
    CHECK(quad[0].v == 0);
    CHECK(quad[0].w == 1);
    CHECK(quad[0].colors == ColorSet::of({1, 2, 3, 4}));
    CHECK(find_dipoles(welded_order4(), 1).size() == 2);

    Gem reduced = eliminate_dipole(welded_order4(), quad[0]);
    CHECK(reduced == order2());
}

TEST_CASE("dipole detection matches the brute-force oracle") {
    std::mt19937_64 rng(61);
    std::vector<Gem> corpus{order2(), welded_order4(), torus_witness(), cp2()};
    for (int i = 0; i < 12; ++i) corpus.push_back(random_bipartite_gem(6 + 2 * (i % 3), rng));
    for (int i = 0; i < 6; ++i) {
        int h = 1 + int(rng() % 4);
        corpus.push_back(insert_random_dipole(cp2(), h, rng).gem);
    }
    for (const Gem& g : corpus) CHECK(dipole_set(find_dipoles(g)) == dipole_set(oracle_dipoles(g)));
}

TEST_CASE("stale dipoles are rejected") {
    Gem g = welded_order4();
    Dipole fake{0, 1, ColorSet::of({0, 1})};
    CHECK_THROWS_AS(eliminate_dipole(g, fake), GemError);
}

TEST_CASE("insert + eliminate round-trips exactly") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        const Gem& base = trial % 2 ? cp2() : order2();
        int h = 1 + int(rng() % 4);
        InsertedDipole ins = insert_random_dipole(base, h, rng);
        CHECK(ins.gem.order() == base.order() + 2);
        CHECK(ins.gem.bipartition().bipartite);
        Gem back = eliminate_dipole(ins.gem, ins.dipole);
        CHECK(back == base);
    }
}

TEST_CASE("dipole moves preserve euler characteristic, homology and bipartiteness") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        const Gem& base = trial % 2 ? cp2() : order2();
        InvariantReport before = invariant_report(base);
        int h = 1 + int(rng() % 4);
        Gem blown = insert_random_dipole(base, h, rng).gem;
        InvariantReport after = invariant_report(blown);
        CHECK(after.order == before.order + 2);
        CHECK(after.chi == before.chi);
        CHECK(after.homology.betti == before.homology.betti);
        CHECK(after.bipartite);
        // eliminate any current dipole of the blown-up gem and recheck
        auto ds = find_dipoles(blown);
        REQUIRE_FALSE(ds.empty());
        Gem down = eliminate_dipole(blown, ds[size_t(rng() % ds.size())]);
        InvariantReport rounded = invariant_report(down);
        CHECK(rounded.order == before.order);
        CHECK(rounded.chi == before.chi);
        CHECK(rounded.homology.betti == before.homology.betti);
        CHECK(rounded.bipartite);
    }
}

TEST_CASE("rho-pairs: none on simple crystallizations, present after a 2-dipole blow-up") {
    CHECK(find_rho_pairs(cp2()).empty());
    CHECK(is_rigid_dipole_free(cp2()));

    std::mt19937_64 rng(73);
    Gem blown = insert_random_dipole(cp2(), 2, rng).gem;
    bool has_reduction = !find_dipoles(blown, 2).empty() || !find_rho_pairs(blown).empty();
    CHECK(has_reduction);
    CHECK_FALSE(is_rigid_dipole_free(blown));
}

TEST_CASE("rho-pair switch reduces the blown-up gem back to order 8") {
    std::mt19937_64 rng(79);
    int switched = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Gem blown = insert_random_dipole(cp2(), 2, rng).gem;
        InvariantReport before = invariant_report(blown);
        for (const RhoPair& r : find_rho_pairs(blown)) {
            RhoSwitchResult res = switch_rho_pair(blown, r);
            InvariantReport after = invariant_report(res.gem);
            CHECK(after.chi == before.chi);
            CHECK(after.homology.betti == before.homology.betti);
            CHECK(after.bipartite);
            if (res.reduced) {
                ++switched;
                CHECK(res.gem.order() == 8);
            }
        }
    }
    CHECK(switched > 0);
}

TEST_CASE("stale rho-pairs are rejected") {
    RhoPair fake;
    fake.color = 0;
    fake.e1 = {0, 1};
    fake.e2 = {2, 3};
    CHECK_THROWS_AS(switch_rho_pair(order2(), fake), GemError);
}

TEST_CASE("hat residues of the order-8 crystallization are 3-spheres") {
    const Gem& g = cp2();
    for (int c = 0; c < 5; ++c) {
        auto residues = hat_residues(g, c);
        REQUIRE(residues.size() == 1);
        CHECK(residues[0].order == 8);
        CHECK(recognize_s3(residues[0]) == S3Verdict::yes);
        FourGraphHomology h = four_graph_homology(residues[0]);
        CHECK(h.betti == std::array<int, 4>{1, 0, 0, 1});
        for (const auto& t : h.torsion) CHECK(t.empty());
    }
    auto verdicts = s3_verdicts(g);
    for (int c = 0; c < 5; ++c) CHECK(verdicts[c] == S3Verdict::yes);
}

TEST_CASE("the standard order-2 four-graph is recognized immediately") {
    FourGraph fg;
    fg.order = 2;
    for (int c = 0; c < 4; ++c) fg.inv[c] = {1, 0};
    CHECK(recognize_s3(fg) == S3Verdict::yes);
}

TEST_CASE("recognition refuses a residue that is not a surface-of-spheres graph") {
    // the {0,1,2}+3 restriction of the torus witness: take the hat-4 residue
    Gem g = torus_witness();
    auto residues = hat_residues(g, 4);
    for (const auto& fg : residues) CHECK(recognize_s3(fg) == S3Verdict::unknown);
}

TEST_CASE("simplify reduces a chain of sphere summands to the order-2 gem") {
    // stack three dipole insertions on the sphere and simplify back down
    std::mt19937_64 rng(83);
    Gem g = order2();
    for (int i = 0; i < 3; ++i) g = insert_random_dipole(g, 1 + int(rng() % 4), rng).gem;
    CHECK(g.order() == 8);
    SimplifyResult res = simplify(g, 1);
    CHECK(res.gem.order() == 2);
    CHECK(res.gem == order2());
    CHECK(res.log.size() == 3);
    SUBCASE("the move log replays") {
        Gem replayed = apply_move_log(g, res.log);
        CHECK(replayed == res.gem);
    }
}

TEST_CASE("simplify leaves rigid simple crystallizations untouched") {
    SimplifyResult res = simplify(cp2(), 1);
    CHECK(res.gem == cp2());
    CHECK(res.log.empty());
}

TEST_CASE("simplify reduces the blown-up crystallization back to order 8") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 10; ++trial) {
        Gem blown = insert_random_dipole(cp2(), 2, rng).gem;
        SimplifyResult res = simplify(blown, rng());
        CHECK(res.gem.order() == 8);
        InvariantReport rep = invariant_report(res.gem);
        CHECK(rep.chi == 3);
        CHECK(rep.homology.betti == std::array<int, 5>{1, 0, 1, 0, 1});
        Gem replayed = apply_move_log(blown, res.log);
        CHECK(replayed == res.gem);
    }
}
