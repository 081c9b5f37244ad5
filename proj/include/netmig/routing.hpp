#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netmig/rng.hpp"
#include "netmig/topology.hpp"

namespace netmig {

using Path = std::vector<IslandId>;  // island sequence, endpoints included

// Commercial class of a route, named after the first hop's relationship.
// Routes learned from customers are preferred over peer routes, which beat
// routes bought from providers, regardless of length.
enum class PathClass : std::uint8_t { CustomerRoute, PeerRoute, ProviderRoute };

enum class EquiCostMode : std::uint8_t { SinglePath, MultiPath };

struct RoutingPrefs {
    EquiCostMode equi_cost = EquiCostMode::MultiPath;
};

// Result of routing every demand at once.
struct TrafficState {
    std::vector<double> transit_load;  // per island, volume it forwards
    long unroutable = 0;               // demands with no policy-compliant path
};

// Policy-aware router over a fixed topology. Equi-cost candidate sets for
// every ordered stub pair are precomputed once (they do not depend on which
// islands adopted what); adoption state only selects among the candidates.
class Router {
public:
    explicit Router(const Topology& topo);

    const Topology& topo() const { return *topo_; }

    // Ordered stub pairs, in (src, dst) lexicographic order.
    int pair_count() const { return static_cast<int>(pairs_.size()); }
    std::pair<IslandId, IslandId> pair_endpoints(int pair_idx) const;
    int pair_index(IslandId src, IslandId dst) const;  // -1 if not a stub pair

    // Equi-cost candidate set of a pair: best-class then shortest.
    const std::vector<Path>& candidates(int pair_idx) const;

    // All loop-free paths from src to dst that respect the export rules
    // (climb via providers, at most one peer crossing, then descend via
    // customers). Sorted lexicographically. Exponential; for small graphs
    // and tests.
    static std::vector<Path> valley_free_paths(const Topology& t, IslandId src,
                                               IslandId dst);

    static bool is_valley_free(const Topology& t, const Path& p);
    static PathClass path_class(const Topology& t, const Path& p);

    // Candidate set for arbitrary endpoints (computed fresh, not cached).
    static std::vector<Path> compute_candidates(const Topology& t, IslandId src,
                                                IslandId dst);

    // Paths the pair's traffic actually uses given adoption state: candidates
    // whose transit islands all run automated path computation are preferred
    // (they can guarantee end-to-end properties); if none qualifies, all
    // candidates remain in play. SinglePath keeps one survivor, chosen
    // uniformly from a substream keyed by (route_seed, pair).
    std::vector<Path> best_paths(IslandId src, IslandId dst,
                                 const std::vector<std::uint8_t>& pce_bits,
                                 const RoutingPrefs& prefs,
                                 std::uint64_t route_seed) const;

    // Route every demand; demands are indexed by ordered pair index.
    TrafficState provision(const std::vector<double>& demands,
                           const std::vector<std::uint8_t>& pce_bits,
                           const RoutingPrefs& prefs,
                           std::uint64_t route_seed) const;

    // Load a single island would carry under `provision` with these inputs.
    // Exact same arithmetic as provision, restricted to pairs that can
    // possibly touch the island.
    double island_load(IslandId island, const std::vector<double>& demands,
                       const std::vector<std::uint8_t>& pce_bits,
                       const RoutingPrefs& prefs, std::uint64_t route_seed) const;

    // One demand unit per ordered stub pair.
    std::vector<double> initial_demands(double volume = 1.0) const {
        return std::vector<double>(pairs_.size(), volume);
    }

    // Demand file: lines "demand <src> <dst> <volume>".
    std::vector<double> load_demands(const std::string& path) const;
    std::vector<double> parse_demands(std::istream& in,
                                      const std::string& name) const;

private:
    struct PairRoutes {
        IslandId src = 0;
        IslandId dst = 0;
        std::vector<Path> paths;
        // Transit islands along each path (including endpoints if transit):
        // these must all run automated computation for the path to qualify.
        std::vector<std::vector<IslandId>> path_transits;
        // Interior islands of each path: they carry the volume.
        std::vector<std::vector<IslandId>> interior;
    };

    struct Touch {
        int pair = 0;
        std::vector<std::uint8_t> member;  // per candidate: interior contains island
        bool all_members = false;          // every candidate crosses the island
    };

    // Fraction of the pair's volume each candidate carries.
    void pair_weights(const PairRoutes& pr, int pair_idx,
                      const std::vector<std::uint8_t>& pce_bits,
                      const RoutingPrefs& prefs, std::uint64_t route_seed,
                      std::vector<double>& weights) const;

    const Topology* topo_;
    std::vector<PairRoutes> pairs_;
    std::vector<int> pair_lookup_;             // src * n + dst -> index or -1
    std::vector<std::vector<Touch>> touching_; // per island
};

}  // namespace netmig
