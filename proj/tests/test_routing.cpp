#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "netmig/routing.hpp"
#include "oracles.hpp"

using namespace netmig;

namespace {

// Peer chain A-B-C with a stub on each end: the only transit walk crosses
// two peering links, which the export rules forbid.
Topology peer_chain() {
    using RK = RelationKind;
    std::vector<Role> roles = {Role::Transit, Role::Transit, Role::Transit,
                               Role::Stub, Role::Stub};
    return Topology::from_parts(
        5, {{0, 1, RK::P2P}, {1, 2, RK::P2P}, {3, 0, RK::C2P}, {4, 2, RK::C2P}},
        std::move(roles));
}

std::vector<std::uint8_t> bits(int n, std::initializer_list<int> on) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(n), 0);
    for (int i : on) v[static_cast<std::size_t>(i)] = 1;
    return v;
}

}  // namespace

TEST_CASE("candidate sets on the cascade fixture match hand enumeration") {
    Topology t = fixtures::cascade_graph();
    Router r(t);
    CHECK(r.pair_count() == 12);  // four stubs, ordered pairs

    auto cands = [&](IslandId a, IslandId b) {
        return r.candidates(r.pair_index(a, b));
    };
    // p -> q ties across the two shared providers.
    CHECK(cands(10, 11) == std::vector<Path>{{10, 0, 11}, {10, 1, 11}});
    // r -> s ties across two four-hop routes.
    CHECK(cands(12, 13) == std::vector<Path>{{12, 2, 0, 3, 13}, {12, 7, 8, 9, 13}});
    // The cross pairs have a single route each.
    CHECK(cands(10, 12) == std::vector<Path>{{10, 0, 2, 12}});
    CHECK(cands(10, 13) == std::vector<Path>{{10, 0, 3, 13}});
    CHECK(cands(11, 12) == std::vector<Path>{{11, 0, 2, 12}});
    CHECK(cands(13, 10) == std::vector<Path>{{13, 3, 0, 10}});

    CHECK(r.pair_index(0, 11) == -1);  // transit endpoint: not a demand pair
    CHECK(r.pair_index(10, 10) == -1);
}

TEST_CASE("customer routes beat shorter peer and provider routes") {
    using RK = RelationKind;
    // 0 -> 1 -> 2 -> 3 descends customer links; 0 -- 3 also peer directly.
    std::vector<Role> roles(4, Role::Transit);
    Topology t = Topology::from_parts(
        4, {{1, 0, RK::C2P}, {2, 1, RK::C2P}, {3, 2, RK::C2P}, {0, 3, RK::P2P}},
        std::move(roles));
    auto got = Router::compute_candidates(t, 0, 3);
    CHECK(got == std::vector<Path>{{0, 1, 2, 3}});

    // From 3, the customer-first rule has nothing to offer; peering wins
    // over climbing through providers.
    got = Router::compute_candidates(t, 3, 0);
    CHECK(got == std::vector<Path>{{3, 0}});
}

TEST_CASE("export rules accept and reject the right shapes") {
    Topology t = fixtures::cascade_graph();
    CHECK(Router::is_valley_free(t, {10, 0, 11}));          // up down
    CHECK(Router::is_valley_free(t, {12, 2, 0, 3, 13}));    // up up down down
    CHECK_FALSE(Router::is_valley_free(t, {2, 0, 3, 13, 9}));  // re-climb at s
    CHECK_FALSE(Router::is_valley_free(t, {10, 11}));       // not an edge
    CHECK_FALSE(Router::is_valley_free(t, {10, 0, 10}));    // repeated island
    CHECK_FALSE(Router::is_valley_free(t, {10}));           // too short

    Topology chain = peer_chain();
    CHECK_FALSE(Router::is_valley_free(chain, {3, 0, 1, 2, 4}));  // two peerings
    CHECK(Router::is_valley_free(chain, {3, 0, 1}));

    CHECK(Router::path_class(t, {10, 0, 11}) == PathClass::ProviderRoute);
    CHECK(Router::path_class(t, {0, 10}) == PathClass::CustomerRoute);
    CHECK(Router::path_class(chain, {0, 1}) == PathClass::PeerRoute);
    CHECK_THROWS_AS(Router::path_class(t, {10}), std::invalid_argument);
}

TEST_CASE("unroutable demands are counted, not silently dropped") {
    Topology t = peer_chain();
    Router r(t);
    CHECK(r.candidates(r.pair_index(3, 4)).empty());

    RoutingPrefs prefs;
    auto demands = r.initial_demands(1.0);
    auto st = r.provision(demands, bits(t.n(), {}), prefs, 1);
    CHECK(st.unroutable == 2);  // both directions
    for (double x : st.transit_load) CHECK(x == 0.0);

    // Zero-volume pairs do not count as failed demands.
    st = r.provision(r.initial_demands(0.0), bits(t.n(), {}), prefs, 1);
    CHECK(st.unroutable == 0);

    CHECK(r.best_paths(3, 4, bits(t.n(), {}), prefs, 1).empty());
}

TEST_CASE("adoption state selects among candidates") {
    Topology t = fixtures::cascade_graph();
    Router r(t);
    RoutingPrefs multi;  // defaults to MultiPath

    // No adopters: both p->q routes carry traffic.
    auto got = r.best_paths(10, 11, bits(t.n(), {}), multi, 7);
    CHECK(got == std::vector<Path>{{10, 0, 11}, {10, 1, 11}});

    // X adopted: its route can be guaranteed end to end and wins alone.
    got = r.best_paths(10, 11, bits(t.n(), {0}), multi, 7);
    CHECK(got == std::vector<Path>{{10, 0, 11}});

    got = r.best_paths(10, 11, bits(t.n(), {1}), multi, 7);
    CHECK(got == std::vector<Path>{{10, 1, 11}});

    // Both adopted: back to an even tie.
    got = r.best_paths(10, 11, bits(t.n(), {0, 1}), multi, 7);
    CHECK(got.size() == 2);

    // Partial coverage of a long route does not qualify it.
    got = r.best_paths(12, 13, bits(t.n(), {0}), multi, 7);
    CHECK(got.size() == 2);
    got = r.best_paths(12, 13, bits(t.n(), {2, 0, 3}), multi, 7);
    CHECK(got == std::vector<Path>{{12, 2, 0, 3, 13}});
}

TEST_CASE("single-path selection is deterministic per seed and pair") {
    Topology t = fixtures::cascade_graph();
    Router r(t);
    RoutingPrefs single;
    single.equi_cost = EquiCostMode::SinglePath;
    auto none = bits(t.n(), {});

    auto first = r.best_paths(10, 11, none, single, 3);
    REQUIRE(first.size() == 1);
    CHECK(r.best_paths(10, 11, none, single, 3) == first);

    // Across seeds, both members of the tie get picked.
    int left = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto got = r.best_paths(12, 13, none, single, seed);
        REQUIRE(got.size() == 1);
        if (got[0] == Path{12, 2, 0, 3, 13}) ++left;
    }
    CHECK(left > 20);
    CHECK(left < 80);

    // Qualified candidates displace the rest in single-path mode too.
    auto got = r.best_paths(10, 11, bits(t.n(), {0}), single, 11);
    CHECK(got == std::vector<Path>{{10, 0, 11}});
}

TEST_CASE("per-island load agrees with a full provision pass") {
    Topology t = fixtures::cascade_graph();
    Router r(t);
    std::vector<double> demands(static_cast<std::size_t>(r.pair_count()), 0.0);
    rng::Stream s(21);
    for (auto& d : demands) d = s.next_unit() * 5.0;

    for (int mask = 0; mask < 16; ++mask) {
        auto b = bits(t.n(), {});
        for (int i = 0; i < 4; ++i)
            if (mask & (1 << i)) b[static_cast<std::size_t>(i)] = 1;  // X X2 Y Z
        for (auto mode : {EquiCostMode::MultiPath, EquiCostMode::SinglePath}) {
            RoutingPrefs prefs;
            prefs.equi_cost = mode;
            auto st = r.provision(demands, b, prefs, 99);
            for (IslandId v : t.transits())
                CHECK(r.island_load(v, demands, b, prefs, 99) ==
                      doctest::Approx(st.transit_load[static_cast<std::size_t>(v)])
                          .epsilon(1e-12));
        }
    }
}

TEST_CASE("router agrees with the brute-force enumerator on random graphs") {
    rng::Stream gen(2024);
    int graphs = 0;
    while (graphs < 60) {
        Topology t = [&]() -> Topology {
            for (;;) {
                try {
                    return oracle::random_labeled(gen);
                } catch (const std::invalid_argument&) {
                    continue;  // rejected sample (e.g. duplicate stub edge)
                }
            }
        }();
        ++graphs;
        Router r(t);
        IslandId s1 = t.stubs()[0], s2 = t.stubs()[1];

        for (auto [src, dst] : {std::pair{s1, s2}, std::pair{s2, s1}}) {
            auto want = oracle::candidates(t, src, dst);
            CHECK(r.candidates(r.pair_index(src, dst)) == want);

            // Full enumeration agreement too, not just the filtered set.
            CHECK(Router::valley_free_paths(t, src, dst) ==
                  oracle::all_valley_paths(t, src, dst));

            // Adoption filtering, three random masks per pair.
            for (int k = 0; k < 3; ++k) {
                std::vector<std::uint8_t> b(static_cast<std::size_t>(t.n()), 0);
                for (IslandId v : t.transits())
                    b[static_cast<std::size_t>(v)] = gen.bernoulli(0.5);
                auto surv = oracle::survivors(t, want, b);

                RoutingPrefs multi;
                CHECK(r.best_paths(src, dst, b, multi, 5) == surv);

                RoutingPrefs single;
                single.equi_cost = EquiCostMode::SinglePath;
                auto got = r.best_paths(src, dst, b, single, 5);
                if (surv.empty()) {
                    CHECK(got.empty());
                } else {
                    REQUIRE(got.size() == 1);
                    CHECK(std::find(surv.begin(), surv.end(), got[0]) != surv.end());
                }
            }
        }

        // Transit-to-transit candidate sets exercise the customer and peer
        // route classes that stub pairs never produce.
        for (int trial = 0; trial < 4; ++trial) {
            IslandId a = t.transits()[gen.uniform_index(t.transits().size())];
            IslandId b = t.transits()[gen.uniform_index(t.transits().size())];
            if (a == b) continue;
            CHECK(Router::compute_candidates(t, a, b) == oracle::candidates(t, a, b));
        }
    }
}

TEST_CASE("demand files parse with line-precise errors") {
    Topology t = fixtures::cascade_graph();
    Router r(t);

    std::istringstream ok("demand 10 11 2.5\ndemand 12 13 0.75\n");
    auto d = r.parse_demands(ok, "mem");
    CHECK(d[static_cast<std::size_t>(r.pair_index(10, 11))] == 2.5);
    CHECK(d[static_cast<std::size_t>(r.pair_index(12, 13))] == 0.75);
    CHECK(d[static_cast<std::size_t>(r.pair_index(11, 10))] == 0.0);

    auto expect_fail = [&](const std::string& text, const std::string& frag) {
        std::istringstream in(text);
        CHECK_THROWS_WITH_AS(r.parse_demands(in, "f"), doctest::Contains(frag.c_str()),
                             std::runtime_error);
    };
    expect_fail("demand 0 11 1\n", "not an ordered stub pair");
    expect_fail("demand 10 11 1\ndemand 10 11 2\n", "f:2: duplicate demand");
    expect_fail("demand 10 11 -1\n", "negative demand volume");
    expect_fail("demand 10\n", "malformed demand line");
    expect_fail("load 10 11 1\n", "unknown line tag 'load'");
}
