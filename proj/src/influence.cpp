#include "netmig/influence.hpp"

#include <algorithm>
#include <stdexcept>

namespace netmig {

bool has_tech(const StrategySet& s, Tech tech) {
    return tech == Tech::Pce ? s.pce : s.sdn;
}

std::vector<IslandId> circle_of_influence(const Topology& t, IslandId i,
                                          int radius) {
    std::vector<IslandId> circle;
    for (IslandId j = 0; j < t.n(); ++j) {
        if (j == i) continue;
        int d = t.hop_distance(i, j);
        if (d != kUnreachable && d < radius) circle.push_back(j);
    }
    return circle;
}

double effective_migration_coefficient(const Topology& t, IslandId i, Tech tech,
                                       const std::vector<StrategySet>& states,
                                       int radius) {
    double num = 0.0, den = 0.0;
    for (IslandId j = 0; j < t.n(); ++j) {
        if (j == i) continue;
        int d = t.hop_distance(i, j);
        if (d == kUnreachable || d >= radius) continue;
        const double w = 1.0 / static_cast<double>(d);
        den += w;
        if (has_tech(states[static_cast<std::size_t>(j)], tech)) num += w;
    }
    return den > 0.0 ? num / den : 0.0;
}

StateEstimate estimate_states(const Topology& t, IslandId i,
                              const std::vector<StrategySet>& states,
                              const InfluenceConfig& cfg) {
    StateEstimate est;
    est.pce.resize(states.size());
    est.sdn.resize(states.size());
    for (std::size_t j = 0; j < states.size(); ++j) {
        est.pce[j] = states[j].pce ? 1.0 : 0.0;
        est.sdn[j] = states[j].sdn ? 1.0 : 0.0;
    }
    for (IslandId j : circle_of_influence(t, i, cfg.relevant_radius)) {
        for (Tech tech : {Tech::Pce, Tech::Sdn}) {
            const double x =
                effective_migration_coefficient(t, j, tech, states,
                                                cfg.relevant_radius);
            double& slot = tech == Tech::Pce ? est.pce[static_cast<std::size_t>(j)]
                                             : est.sdn[static_cast<std::size_t>(j)];
            if (cfg.approach == EstimationApproach::Deterministic) {
                if (x > 0.5) slot = 1.0;
            } else {
                slot = std::max(slot, x);
            }
        }
    }
    return est;
}

double estimate_traffic(const Topology& t, const Router& router, IslandId i,
                        const StrategySet& candidate, const StateEstimate& est,
                        const std::vector<StrategySet>& states,
                        const std::vector<double>& demands,
                        const RoutingPrefs& prefs, const InfluenceConfig& cfg,
                        std::uint64_t route_seed, rng::Stream& bit_stream) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    if (states.size() != n || est.pce.size() != n)
        throw std::invalid_argument("estimate_traffic: state size mismatch");

    // Only automated path computation influences route qualification, so
    // only those bits feed the routing pass.
    thread_local std::vector<std::uint8_t> bits;
    bits.resize(n);

    if (cfg.approach == EstimationApproach::Deterministic) {
        for (std::size_t j = 0; j < n; ++j) bits[j] = est.pce[j] > 0.5 ? 1 : 0;
        bits[static_cast<std::size_t>(i)] = candidate.pce ? 1 : 0;
        return router.island_load(i, demands, bits, prefs, route_seed);
    }

    if (cfg.mc_samples < 1)
        throw std::invalid_argument("estimate_traffic: mc_samples must be >= 1");
    double total = 0.0;
    for (int s = 0; s < cfg.mc_samples; ++s) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = est.pce[j];
            // Avoid burning draws on certain outcomes; keeps the stream
            // aligned with what actually needs randomness.
            if (x <= 0.0)
                bits[j] = 0;
            else if (x >= 1.0)
                bits[j] = 1;
            else
                bits[j] = bit_stream.bernoulli(x) ? 1 : 0;
        }
        bits[static_cast<std::size_t>(i)] = candidate.pce ? 1 : 0;
        total += router.island_load(i, demands, bits, prefs, route_seed);
    }
    return total / static_cast<double>(cfg.mc_samples);
}

}  // namespace netmig
