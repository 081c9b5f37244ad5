#pragma once

// Independent reference implementations used to cross-check the router.
// Deliberately written with different machinery than production code:
// plain edge-label strings and exhaustive enumeration instead of the
// phase-state search.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "netmig/rng.hpp"
#include "netmig/topology.hpp"

namespace oracle {

// Label of the hop u -> v: 'u' climbs to a provider, 'p' crosses to a peer,
// 'd' descends to a customer; '\0' if the edge does not exist.
inline char hop_label(const netmig::Topology& t, netmig::IslandId u,
                      netmig::IslandId v) {
    for (const netmig::Edge& e : t.edges()) {
        if (e.a == u && e.b == v)
            return e.kind == netmig::RelationKind::P2P ? 'p' : 'u';
        if (e.a == v && e.b == u)
            return e.kind == netmig::RelationKind::P2P ? 'p' : 'd';
    }
    return '\0';
}

// Export policy in shape form: climb, at most one peering, descend.
inline bool shape_ok(const std::string& labels) {
    std::size_t i = 0;
    while (i < labels.size() && labels[i] == 'u') ++i;
    if (i < labels.size() && labels[i] == 'p') ++i;
    while (i < labels.size() && labels[i] == 'd') ++i;
    return i == labels.size();
}

// Every simple path src -> dst whose hop-label word is policy-compliant.
inline std::vector<netmig::Path> all_valley_paths(const netmig::Topology& t,
                                                  netmig::IslandId src,
                                                  netmig::IslandId dst) {
    std::vector<netmig::Path> out;
    std::vector<char> used(static_cast<std::size_t>(t.n()), 0);
    netmig::Path cur{src};
    std::string labels;
    used[static_cast<std::size_t>(src)] = 1;
    auto dfs = [&](auto&& self, netmig::IslandId u) -> void {
        if (u == dst) {
            if (shape_ok(labels)) out.push_back(cur);
            return;
        }
        for (netmig::IslandId v = 0; v < t.n(); ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            char lab = hop_label(t, u, v);
            if (lab == '\0') continue;
            labels.push_back(lab);
            if (shape_ok(labels)) {  // prune: prefixes of valid words are valid
                used[static_cast<std::size_t>(v)] = 1;
                cur.push_back(v);
                self(self, v);
                cur.pop_back();
                used[static_cast<std::size_t>(v)] = 0;
            }
            labels.pop_back();
        }
    };
    dfs(dfs, src);
    std::sort(out.begin(), out.end());
    return out;
}

// Commercial rank of a path: routes from customers beat peer routes beat
// provider routes, no matter the length. Lower rank wins.
inline int class_rank(const netmig::Topology& t, const netmig::Path& p) {
    char lab = hop_label(t, p[0], p[1]);
    if (lab == 'd') return 0;
    if (lab == 'p') return 1;
    return 2;
}

// Best-class-then-shortest filter over the full enumeration.
inline std::vector<netmig::Path> candidates(const netmig::Topology& t,
                                            netmig::IslandId src,
                                            netmig::IslandId dst) {
    std::vector<netmig::Path> all = all_valley_paths(t, src, dst);
    if (all.empty()) return all;
    int best_rank = 3;
    for (const auto& p : all) best_rank = std::min(best_rank, class_rank(t, p));
    std::size_t best_len = SIZE_MAX;
    for (const auto& p : all)
        if (class_rank(t, p) == best_rank) best_len = std::min(best_len, p.size());
    std::vector<netmig::Path> out;
    for (const auto& p : all)
        if (class_rank(t, p) == best_rank && p.size() == best_len)
            out.push_back(p);
    return out;  // `all` was sorted already
}

// Candidates that remain usable under an adoption state: those whose transit
// islands all run automated path computation displace the rest; if none
// does, everything stays.
inline std::vector<netmig::Path> survivors(
    const netmig::Topology& t, const std::vector<netmig::Path>& cands,
    const std::vector<std::uint8_t>& pce_bits) {
    std::vector<netmig::Path> qualified;
    for (const auto& p : cands) {
        bool all = true;
        for (netmig::IslandId v : p)
            if (t.is_transit(v) && !pce_bits[static_cast<std::size_t>(v)])
                all = false;
        if (all) qualified.push_back(p);
    }
    return qualified.empty() ? cands : qualified;
}

// Random connected labeled topology: 2..6 transits plus two stubs used as
// route endpoints; mixed customer/provider/peer labels.
inline netmig::Topology random_labeled(netmig::rng::Stream& s) {
    using netmig::Edge;
    using netmig::RelationKind;
    const int nt = 2 + static_cast<int>(s.uniform_index(5));
    std::vector<Edge> edges;
    auto add_random_kind = [&](int a, int b) {
        switch (s.uniform_index(3)) {
            case 0: edges.push_back({a, b, RelationKind::C2P}); break;
            case 1: edges.push_back({b, a, RelationKind::C2P}); break;
            default: edges.push_back({a, b, RelationKind::P2P}); break;
        }
    };
    // Random spanning tree keeps the transit core connected.
    for (int v = 1; v < nt; ++v)
        add_random_kind(v, static_cast<int>(s.uniform_index(static_cast<std::size_t>(v))));
    // Sprinkle extra links.
    for (int a = 0; a < nt; ++a)
        for (int b = a + 1; b < nt; ++b) {
            bool present = false;
            for (const Edge& e : edges)
                if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) present = true;
            if (!present && s.next_unit() < 0.3) add_random_kind(a, b);
        }
    // Two stubs, each buying transit from one or two distinct transits.
    for (int stub = nt; stub < nt + 2; ++stub) {
        int m = 1 + static_cast<int>(s.uniform_index(
                        static_cast<std::size_t>(std::min(2, nt))));
        std::vector<int> targets;
        while (static_cast<int>(targets.size()) < m) {
            int v = static_cast<int>(s.uniform_index(static_cast<std::size_t>(nt)));
            if (std::find(targets.begin(), targets.end(), v) == targets.end())
                targets.push_back(v);
        }
        for (int v : targets) edges.push_back({stub, v, RelationKind::C2P});
    }
    std::vector<netmig::Role> roles(static_cast<std::size_t>(nt) + 2,
                                    netmig::Role::Transit);
    roles[static_cast<std::size_t>(nt)] = netmig::Role::Stub;
    roles[static_cast<std::size_t>(nt) + 1] = netmig::Role::Stub;
    return netmig::Topology::from_parts(nt + 2, std::move(edges), std::move(roles));
}

}  // namespace oracle
