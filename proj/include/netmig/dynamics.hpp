#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netmig/economics.hpp"
#include "netmig/influence.hpp"
#include "netmig/routing.hpp"
#include "netmig/topology.hpp"

namespace netmig {

// Which upgrades the scenario allows agents to consider.
enum class TechAvailability : std::uint8_t { Both, PceOnly, SdnOnly };

// How early adopters are chosen among transits (ties broken by island id).
enum class AdopterRule : std::uint8_t { None, MaxDegree, MinDegree };

enum class MigrationCause : std::uint8_t { OpexOnly, TrafficOnly, Both };

const char* cause_name(MigrationCause c);

struct SimConfig {
    TopologyConfig topo;
    EconParams econ;
    InfluenceConfig influence;
    RoutingPrefs prefs;
    double lambda = 0.05;      // expected demand arrivals per pair per step
    double demand_cap = 200.0; // per-pair volume ceiling
    int steps = 200;
    int max_sweeps = 10;       // cascade sweeps per step before giving up
    int early_adopters = 0;
    AdopterRule adopter_rule = AdopterRule::None;
    TechAvailability availability = TechAvailability::Both;
    std::uint64_t arrival_seed = 1;  // demand profile
    std::uint64_t decision_seed = 1; // sweep order, sampling, route picks
};

struct MigrationRecord {
    int step = 0;
    IslandId island = 0;
    StrategySet from;
    StrategySet to;
    double payoff_value = 0.0;
    double traffic_est = 0.0;     // anticipated load behind the decision
    double traffic_before = 0.0;  // actual load when deciding
    double traffic_after = 0.0;   // actual load once rerouted
    double opex_before = 0.0;
    double opex_after = 0.0;
    MigrationCause cause = MigrationCause::OpexOnly;
};

struct StepStats {
    int step = 0;
    int pce_count = 0;   // islands running automated path computation
    int sdn_count = 0;   // islands running centralized control
    int both_count = 0;  // islands running the full stack
    long unroutable = 0;
};

struct RunResult {
    std::vector<StepStats> series;  // one row per step, 0..steps
    std::vector<MigrationRecord> records;
    std::vector<StrategySet> final_states;
    std::vector<double> final_demands;
    int sweep_limit_hits = 0;  // cascades cut off by max_sweeps
    // Adoption sets per recorded step, packed 64 islands per word;
    // row r occupies words [r*mask_words, (r+1)*mask_words).
    int mask_words = 0;
    std::vector<std::uint64_t> pce_masks;
    std::vector<std::uint64_t> sdn_masks;
};

// Why a migration paid off, from realized before/after quantities. A move
// that neither attracted traffic nor cut running costs cannot have had a
// positive payoff; feeding one in is a programming error.
MigrationCause classify_cause(double traffic_before, double traffic_after,
                              double opex_before, double opex_after);
MigrationCause classify_cause(const MigrationRecord& rec);

// One simulation run over a fixed topology. Exposes the internals the way
// tests want them; run() below is the packaged whole-run entry point.
class Sim {
public:
    Sim(const SimConfig& cfg, const Topology& topo, const Router& router);

    void init();  // unit demand per pair, early adopters, first provision
    void init_with_demands(std::vector<double> demands);  // custom scenarios
    void advance();  // arrivals, provision, cascade, bookkeeping

    struct Choice {
        StrategySet to;
        double payoff_value = 0.0;
        double traffic_est = 0.0;
    };
    // Best strictly profitable upgrade for transit i, if any.
    std::optional<Choice> agent_decide(IslandId i);

    // Decision sweeps at the current step until a sweep makes no migration
    // (or until max_sweeps). Returns whether anything migrated.
    bool cascade();

    int step() const { return step_; }
    const std::vector<StrategySet>& states() const { return states_; }
    const TrafficState& traffic() const { return traffic_; }
    const std::vector<double>& demands() const { return demands_; }
    const std::vector<MigrationRecord>& records() const { return records_; }

    RunResult finish() const;

private:
    void apply_arrivals();
    void reprovision();
    void record_stats();
    void seed_adopters();

    const SimConfig cfg_;
    const Topology* topo_;
    const Router* router_;
    int step_ = 0;
    std::vector<StrategySet> states_;
    std::vector<std::uint8_t> pce_bits_;
    std::vector<double> demands_;
    TrafficState traffic_;
    std::vector<StepStats> series_;
    std::vector<MigrationRecord> records_;
    int mask_words_ = 0;
    std::vector<std::uint64_t> pce_masks_;
    std::vector<std::uint64_t> sdn_masks_;
    int sweep_limit_hits_ = 0;
};

// Whole run with a freshly generated topology (or a caller-provided one).
RunResult run(const SimConfig& cfg);
RunResult run(const SimConfig& cfg, const Topology& topo, const Router& router);

// Time-series and migration-log serialization.
std::string series_csv(const RunResult& r);
std::string records_csv(const RunResult& r);
std::vector<StepStats> parse_series_csv(const std::string& text);

}  // namespace netmig
