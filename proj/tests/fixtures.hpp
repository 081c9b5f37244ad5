#pragma once

// Hand-built graphs shared across test suites, with quantities worked out
// by hand so tests can pin exact values.

#include <vector>

#include "netmig/economics.hpp"
#include "netmig/topology.hpp"

namespace fixtures {

// Twelve-island peering tree rooted (for our purposes) at island 0:
//
//            0
//         /  |  '.
//        1   3   5
//       /|   |   |
//      2 9   4   6
//      |  \  |   |
//      7  11 8  10
//
// With adopters {1, 4, 9} and radius 3, the distance-weighted adoption
// signal at island 0 is (1/1 + 1/2 + 1/2) / (3/1 + 4/2) = 2/5 exactly.
inline netmig::Topology influence_tree() {
    using netmig::Edge;
    using netmig::RelationKind;
    std::vector<Edge> edges;
    const int pairs[][2] = {{0, 1}, {0, 3}, {0, 5}, {1, 2},  {3, 4}, {5, 6},
                            {1, 9}, {2, 7}, {4, 8}, {6, 10}, {9, 11}};
    for (auto& e : pairs)
        edges.push_back(Edge{e[0], e[1], RelationKind::P2P});
    std::vector<netmig::Role> roles(12, netmig::Role::Transit);
    return netmig::Topology::from_parts(12, std::move(edges), std::move(roles));
}

inline std::vector<netmig::StrategySet> influence_tree_states() {
    std::vector<netmig::StrategySet> states(12);
    states[1].pce = true;
    states[4].pce = true;
    states[9].pce = true;
    return states;
}

// Cascade scenario: fourteen islands, two stub pairs with traffic.
//
//   transits: 0=X 1=X2 2=Y 3=Z 4..6=A1..A3 7=W 8=V 9=U
//   stubs:    10=p 11=q 12=r 13=s
//
//   p,q multi-home to X and X2; the (p,q) route is a two-candidate tie.
//   r..s has two tied four-hop routes, r-Y-X-Z-s and r-W-V-U-s.
//   A1..A3 are leaf providers of Z (the min-degree islands, used as
//   seeded adopters so Z's neighborhood signal sits just below 1/2).
//
// With demands (p,q)=(q,p)=0.25 and (r,s)=(s,r)=1, economics
// {c_pce=0.45, c_sdn=1.0, eta=1.0, alphas default} and radius 3,
// deterministic estimation, multipath:
//   - X alone is profitable up front (its bit reroutes the p-q tie);
//   - X's migration lifts Z's signal from 3/7 to 4/7 > 1/2, so Y
//     now expects Z to migrate and moves on that optimistic estimate;
//   - Y's real bit then makes Z itself profitable.
// X2, W and V never profit in any visiting order. Two moves do depend on
// the order: between Y's and Z's real migrations, X and Y price Z's
// anticipated traffic into a dual-tech upgrade, and U — whose circle sees
// Z but not Y — may fold to dual-tech for free (zero expected traffic
// means zero deployment cost, and it escapes its current running cost).
inline netmig::Topology cascade_graph() {
    using netmig::Edge;
    using netmig::RelationKind;
    std::vector<Edge> edges;
    const int c2p[][2] = {{10, 0}, {11, 0}, {10, 1}, {11, 1}, {12, 2},
                          {2, 0},  {3, 0},  {13, 3}, {3, 4},  {3, 5},
                          {3, 6},  {12, 7}, {7, 8},  {9, 8},  {13, 9}};
    for (auto& e : c2p)
        edges.push_back(Edge{e[0], e[1], RelationKind::C2P});
    std::vector<netmig::Role> roles(14, netmig::Role::Transit);
    for (int s = 10; s < 14; ++s)
        roles[static_cast<std::size_t>(s)] = netmig::Role::Stub;
    return netmig::Topology::from_parts(14, std::move(edges), std::move(roles));
}

inline netmig::EconParams cascade_econ() {
    netmig::EconParams p;
    p.c_pce = 0.45;
    p.c_sdn = 1.0;
    p.eta = 1.0;
    return p;
}

}  // namespace fixtures
