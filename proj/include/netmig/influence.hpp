#pragma once

#include <cstdint>
#include <vector>

#include "netmig/economics.hpp"
#include "netmig/rng.hpp"
#include "netmig/routing.hpp"
#include "netmig/topology.hpp"

namespace netmig {

enum class Tech : std::uint8_t { Pce, Sdn };

enum class EstimationApproach : std::uint8_t { Deterministic, Probabilistic };

struct InfluenceConfig {
    int relevant_radius = 5;  // islands strictly closer than this are visible
    EstimationApproach approach = EstimationApproach::Probabilistic;
    int mc_samples = 16;  // traffic samples per probabilistic estimate
};

// Per-island adoption likelihood as seen by one decision maker; indexed by
// island id, entries outside the circle equal the current bit.
struct StateEstimate {
    std::vector<double> pce;
    std::vector<double> sdn;
};

bool has_tech(const StrategySet& s, Tech tech);

// Islands whose distance from i is strictly below `radius` (i excluded).
std::vector<IslandId> circle_of_influence(const Topology& t, IslandId i,
                                          int radius);

// Distance-weighted fraction of i's circle already running `tech`:
// sum(bit_j / d(i,j)) / sum(1 / d(i,j)); 0 for an empty circle. Nearby
// adopters count for more.
double effective_migration_coefficient(const Topology& t, IslandId i, Tech tech,
                                       const std::vector<StrategySet>& states,
                                       int radius);

// What island i believes about its circle's next state. Deterministic:
// a member is assumed migrated iff the majority signal crosses 1/2.
// Probabilistic: the signal is kept as a probability. Either way a bit
// already set stays set (adoption is never estimated backwards).
StateEstimate estimate_states(const Topology& t, IslandId i,
                              const std::vector<StrategySet>& states,
                              const InfluenceConfig& cfg);

// Traffic island i expects to carry if it moves to `candidate`, with its
// circle behaving per `est`. Deterministic: one routing pass on thresholded
// estimates. Probabilistic: mean over cfg.mc_samples passes with circle
// bits drawn from `bit_stream` (callers key that stream by decision step
// and island, keeping estimates reproducible).
double estimate_traffic(const Topology& t, const Router& router, IslandId i,
                        const StrategySet& candidate, const StateEstimate& est,
                        const std::vector<StrategySet>& states,
                        const std::vector<double>& demands,
                        const RoutingPrefs& prefs, const InfluenceConfig& cfg,
                        std::uint64_t route_seed, rng::Stream& bit_stream);

}  // namespace netmig
