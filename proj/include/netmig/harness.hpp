#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netmig/dynamics.hpp"

namespace netmig {

// One scenario arm: a named configuration variant under comparison.
struct ArmSpec {
    std::string name;
    SimConfig cfg;
};

struct ExperimentSpec {
    std::string preset;
    std::vector<ArmSpec> arms;
    int n_profiles = 50;  // independent demand profiles
    int n_replicas = 5;   // decision-noise replicas per profile
    std::uint64_t base_seed = 42;
};

struct CauseBreakdown {
    long total = 0;  // accepted migrations across all runs of the arm
    long opex_only = 0;
    long traffic_only = 0;
    long both = 0;
    double pct(long part) const {
        return total > 0 ? 100.0 * static_cast<double>(part) /
                               static_cast<double>(total)
                         : 0.0;
    }
};

struct ArmResult {
    std::string name;
    SimConfig cfg;
    // Per-step aggregates over all runs of the arm.
    std::vector<double> pce_mean, pce_dev;
    std::vector<double> sdn_mean, sdn_dev;
    std::vector<double> both_mean, both_dev;
    std::vector<double> unroutable_mean;
    CauseBreakdown causes;
    // Raw runs in profile-major order: index = profile * n_replicas + replica.
    std::vector<RunResult> runs;
};

struct AggregateResult {
    ExperimentSpec spec;
    std::vector<ArmResult> arms;
};

SimConfig default_config();

// Structural sanity on top of the economic inequalities; empty means usable.
std::vector<std::string> validate_config(const SimConfig& cfg);

// Flat key-value config text; keys are the config field names. Unknown keys
// and malformed values are errors (reported with line numbers).
void apply_config_entry(SimConfig& cfg, const std::string& key,
                        const std::string& value);
SimConfig load_config_file(const std::string& path, SimConfig base);

std::vector<std::string> preset_names();

// Assemble a preset's arms on top of `base` (defaults possibly overridden by
// a config file). Derives the topology seed from base_seed; per-run arrival
// and decision seeds are derived inside run_experiment, with arms sharing a
// profile's arrival sequence so comparisons are paired.
ExperimentSpec make_experiment(const std::string& preset, const SimConfig& base,
                               std::uint64_t base_seed, int n_profiles,
                               int n_replicas);

// Run every (arm, profile, replica) combination and aggregate. n_threads = 0
// uses the hardware count; results are identical regardless of thread count.
AggregateResult run_experiment(const ExperimentSpec& spec, int n_threads = 0);

// Write per-arm aggregate series, cause breakdowns, per-run raw series and
// migration logs, and a manifest (config, seeds, version). `format` picks
// csv or json for the aggregate files; raw per-run files are always CSV.
void emit(const AggregateResult& result, const std::string& format,
          const std::string& out_dir);

}  // namespace netmig
