#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netmig/rng.hpp"

namespace netmig {

using IslandId = int;

enum class Role : std::uint8_t { Transit, Stub };

// Business relationship on an edge. For C2P, `a` is the customer of `b`.
enum class RelationKind : std::uint8_t { C2P, P2P };

struct Edge {
    IslandId a = 0;
    IslandId b = 0;
    RelationKind kind = RelationKind::P2P;
};

// Link type as seen from one endpoint.
enum class LinkDir : std::uint8_t { ToProvider, ToCustomer, Peer };

struct Neighbor {
    IslandId id = 0;
    LinkDir dir = LinkDir::Peer;
};

struct TopologyConfig {
    int n_total = 100;
    int n_seed = 16;    // fully peered core clique
    int n_transit = 39; // includes the seed islands
    int stub_attach_degree = 2;
    std::uint64_t rng_seed = 1;
};

// Marker for disconnected island pairs in hop_distance (never produced by
// generate(); only reachable through from_parts with validation relaxed).
inline constexpr int kUnreachable = -1;

// Undirected policy-labeled multigraph-free graph of provider islands.
// Immutable after construction; all queries are const.
class Topology {
public:
    // Preferential-attachment construction:
    //   1. n_seed transits forming a P2P clique,
    //   2. remaining transits attach to existing transits (as customers)
    //      with degree-proportional choice,
    //   3. stubs attach to stub_attach_degree distinct transits (as customers).
    static Topology generate(const TopologyConfig& cfg);

    // Assemble from explicit parts; validates structural invariants.
    static Topology from_parts(int n_islands, std::vector<Edge> edges,
                               std::vector<Role> roles);

    static Topology load(const std::string& path);
    static Topology load_stream(std::istream& in, const std::string& name);

    void save(const std::string& path) const;
    std::string to_text() const;

    int n() const { return static_cast<int>(roles_.size()); }
    Role role(IslandId i) const { return roles_[static_cast<std::size_t>(i)]; }
    bool is_transit(IslandId i) const { return role(i) == Role::Transit; }
    int degree(IslandId i) const {
        return static_cast<int>(adj_[static_cast<std::size_t>(i)].size());
    }
    const std::vector<Neighbor>& neighbors(IslandId i) const {
        return adj_[static_cast<std::size_t>(i)];
    }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<IslandId>& transits() const { return transits_; }
    const std::vector<IslandId>& stubs() const { return stubs_; }

    // Unweighted shortest-path hop count, ignoring relationship labels.
    int hop_distance(IslandId a, IslandId b) const {
        return dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    bool same_structure(const Topology& other) const;

private:
    Topology() = default;
    void build_index();
    void validate() const;

    std::vector<Role> roles_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<std::vector<int>> dist_;
    std::vector<IslandId> transits_;
    std::vector<IslandId> stubs_;
};

namespace detail {
// Draw k distinct indices with probability proportional to weights[i];
// weights of chosen indices are excluded from subsequent draws.
std::vector<int> weighted_pick_distinct(const std::vector<int>& weights, int k,
                                        rng::Stream& stream);
}  // namespace detail

}  // namespace netmig
