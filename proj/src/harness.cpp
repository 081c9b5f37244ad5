#include "netmig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "netmig/version.hpp"

namespace netmig {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ", ";
        out += p;
    }
    return out;
}

double parse_double(const std::string& v) {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
}

long long parse_int(const std::string& v) {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
}

std::uint64_t parse_u64(const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(x);
}

const char* approach_name(EstimationApproach a) {
    return a == EstimationApproach::Deterministic ? "deterministic"
                                                  : "probabilistic";
}
const char* equi_cost_name(EquiCostMode m) {
    return m == EquiCostMode::SinglePath ? "single_path" : "multi_path";
}
const char* adopter_rule_name(AdopterRule r) {
    switch (r) {
        case AdopterRule::None: return "none";
        case AdopterRule::MaxDegree: return "max_degree";
        case AdopterRule::MinDegree: return "min_degree";
    }
    return "?";
}
const char* availability_name(TechAvailability a) {
    switch (a) {
        case TechAvailability::Both: return "both";
        case TechAvailability::PceOnly: return "pce_only";
        case TechAvailability::SdnOnly: return "sdn_only";
    }
    return "?";
}

json config_json(const SimConfig& c) {
    json j;
    j["n_total"] = c.topo.n_total;
    j["n_seed"] = c.topo.n_seed;
    j["n_transit"] = c.topo.n_transit;
    j["stub_attach_degree"] = c.topo.stub_attach_degree;
    j["rng_seed"] = c.topo.rng_seed;
    j["c_pce"] = c.econ.c_pce;
    j["c_sdn"] = c.econ.c_sdn;
    j["eta"] = c.econ.eta;
    j["a_pce"] = c.econ.a_pce;
    j["a_sdn"] = c.econ.a_sdn;
    j["a_nopce"] = c.econ.a_nopce;
    j["a_nosdn"] = c.econ.a_nosdn;
    j["relevant_radius"] = c.influence.relevant_radius;
    j["approach"] = approach_name(c.influence.approach);
    j["mc_samples"] = c.influence.mc_samples;
    j["equi_cost"] = equi_cost_name(c.prefs.equi_cost);
    j["lambda"] = c.lambda;
    j["demand_cap"] = c.demand_cap;
    j["steps"] = c.steps;
    j["max_sweeps"] = c.max_sweeps;
    j["early_adopters"] = c.early_adopters;
    j["adopter_rule"] = adopter_rule_name(c.adopter_rule);
    j["availability"] = availability_name(c.availability);
    j["arrival_seed"] = c.arrival_seed;
    j["decision_seed"] = c.decision_seed;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

SimConfig default_config() { return SimConfig{}; }

std::vector<std::string> validate_config(const SimConfig& cfg) {
    std::vector<std::string> bad = validate_params(cfg.econ);
    if (cfg.topo.n_seed < 2) bad.push_back("n_seed_at_least_2");
    if (cfg.topo.n_transit < cfg.topo.n_seed)
        bad.push_back("n_transit_ge_n_seed");
    if (cfg.topo.n_total <= cfg.topo.n_transit)
        bad.push_back("n_total_gt_n_transit");
    if (cfg.topo.stub_attach_degree < 1)
        bad.push_back("stub_attach_degree_positive");
    if (cfg.influence.relevant_radius < 1)
        bad.push_back("relevant_radius_positive");
    if (cfg.influence.mc_samples < 1) bad.push_back("mc_samples_positive");
    if (!(cfg.lambda >= 0.0)) bad.push_back("lambda_nonnegative");
    if (!(cfg.demand_cap > 0.0)) bad.push_back("demand_cap_positive");
    if (cfg.steps < 0) bad.push_back("steps_nonnegative");
    if (cfg.max_sweeps < 1) bad.push_back("max_sweeps_positive");
    if (cfg.early_adopters < 0) bad.push_back("early_adopters_nonnegative");
    return bad;
}

void apply_config_entry(SimConfig& cfg, const std::string& key,
                        const std::string& value) {
    try {
        if (key == "n_total")
            cfg.topo.n_total = static_cast<int>(parse_int(value));
        else if (key == "n_seed")
            cfg.topo.n_seed = static_cast<int>(parse_int(value));
        else if (key == "n_transit")
            cfg.topo.n_transit = static_cast<int>(parse_int(value));
        else if (key == "stub_attach_degree")
            cfg.topo.stub_attach_degree = static_cast<int>(parse_int(value));
        else if (key == "rng_seed")
            cfg.topo.rng_seed = parse_u64(value);
        else if (key == "c_pce")
            cfg.econ.c_pce = parse_double(value);
        else if (key == "c_sdn")
            cfg.econ.c_sdn = parse_double(value);
        else if (key == "eta")
            cfg.econ.eta = parse_double(value);
        else if (key == "a_pce")
            cfg.econ.a_pce = parse_double(value);
        else if (key == "a_sdn")
            cfg.econ.a_sdn = parse_double(value);
        else if (key == "a_nopce")
            cfg.econ.a_nopce = parse_double(value);
        else if (key == "a_nosdn")
            cfg.econ.a_nosdn = parse_double(value);
        else if (key == "relevant_radius")
            cfg.influence.relevant_radius = static_cast<int>(parse_int(value));
        else if (key == "mc_samples")
            cfg.influence.mc_samples = static_cast<int>(parse_int(value));
        else if (key == "approach") {
            if (value == "deterministic")
                cfg.influence.approach = EstimationApproach::Deterministic;
            else if (value == "probabilistic")
                cfg.influence.approach = EstimationApproach::Probabilistic;
            else
                throw std::invalid_argument("expected deterministic|probabilistic");
        } else if (key == "equi_cost") {
            if (value == "single_path")
                cfg.prefs.equi_cost = EquiCostMode::SinglePath;
            else if (value == "multi_path")
                cfg.prefs.equi_cost = EquiCostMode::MultiPath;
            else
                throw std::invalid_argument("expected single_path|multi_path");
        } else if (key == "lambda")
            cfg.lambda = parse_double(value);
        else if (key == "demand_cap")
            cfg.demand_cap = parse_double(value);
        else if (key == "steps")
            cfg.steps = static_cast<int>(parse_int(value));
        else if (key == "max_sweeps")
            cfg.max_sweeps = static_cast<int>(parse_int(value));
        else if (key == "early_adopters")
            cfg.early_adopters = static_cast<int>(parse_int(value));
        else if (key == "adopter_rule") {
            if (value == "none")
                cfg.adopter_rule = AdopterRule::None;
            else if (value == "max_degree")
                cfg.adopter_rule = AdopterRule::MaxDegree;
            else if (value == "min_degree")
                cfg.adopter_rule = AdopterRule::MinDegree;
            else
                throw std::invalid_argument("expected none|max_degree|min_degree");
        } else if (key == "availability") {
            if (value == "both")
                cfg.availability = TechAvailability::Both;
            else if (value == "pce_only")
                cfg.availability = TechAvailability::PceOnly;
            else if (value == "sdn_only")
                cfg.availability = TechAvailability::SdnOnly;
            else
                throw std::invalid_argument("expected both|pce_only|sdn_only");
        } else if (key == "arrival_seed")
            cfg.arrival_seed = parse_u64(value);
        else if (key == "decision_seed")
            cfg.decision_seed = parse_u64(value);
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::invalid_argument& e) {
        std::string what = e.what();
        if (what.rfind("unknown config key", 0) == 0) throw;
        throw std::invalid_argument("invalid value '" + value + "' for '" + key +
                                    "': " + what);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("value '" + value + "' for '" + key +
                                    "' is out of range");
    }
}

SimConfig load_config_file(const std::string& path, SimConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        std::istringstream ls(line);
        std::string key, value, extra;
        if (!(ls >> key)) continue;
        if (!(ls >> value))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": key '" + key + "' has no value");
        if (value == "=" && !(ls >> value))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": key '" + key + "' has no value");
        if (ls >> extra)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": unexpected trailing '" + extra + "'");
        try {
            apply_config_entry(base, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    return base;
}

std::vector<std::string> preset_names() {
    return {"fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12"};
}

ExperimentSpec make_experiment(const std::string& preset, const SimConfig& base,
                               std::uint64_t base_seed, int n_profiles,
                               int n_replicas) {
    if (n_profiles < 1) throw std::invalid_argument("n_profiles must be >= 1");
    if (n_replicas < 1) throw std::invalid_argument("n_replicas must be >= 1");

    ExperimentSpec spec;
    spec.preset = preset;
    spec.base_seed = base_seed;
    spec.n_profiles = n_profiles;
    spec.n_replicas = n_replicas;

    SimConfig b = base;
    b.topo.rng_seed = rng::mix(base_seed, rng::kTopology);

    auto add = [&spec](const std::string& name, SimConfig cfg) {
        spec.arms.push_back(ArmSpec{name, std::move(cfg)});
    };
    auto det = [](SimConfig c) {
        c.influence.approach = EstimationApproach::Deterministic;
        return c;
    };
    auto sized = [](SimConfig c, int total, int seed_n, int transit) {
        c.topo.n_total = total;
        c.topo.n_seed = seed_n;
        c.topo.n_transit = transit;
        return c;
    };

    if (preset == "fig5") {
        add("default", b);
    } else if (preset == "fig6") {
        SimConfig d = det(b);
        SimConfig pce = d;
        pce.availability = TechAvailability::PceOnly;
        SimConfig sdn = d;
        sdn.availability = TechAvailability::SdnOnly;
        add("pce_only", pce);
        add("sdn_only", sdn);
        add("pce_sdn", d);
    } else if (preset == "fig7") {
        SimConfig d = det(b);
        auto seeded = [&](AdopterRule rule, int k) {
            SimConfig c = d;
            c.adopter_rule = rule;
            c.early_adopters = k;
            return c;
        };
        add("none", d);
        add("min_3", seeded(AdopterRule::MinDegree, 3));
        add("max_3", seeded(AdopterRule::MaxDegree, 3));
        add("min_5", seeded(AdopterRule::MinDegree, 5));
    } else if (preset == "fig8") {
        auto routed = [&](SimConfig c, EquiCostMode m) {
            c.prefs.equi_cost = m;
            return c;
        };
        SimConfig d = det(b);
        add("det_multi", routed(d, EquiCostMode::MultiPath));
        add("det_single", routed(d, EquiCostMode::SinglePath));
        add("prob_multi", routed(b, EquiCostMode::MultiPath));
        add("prob_single", routed(b, EquiCostMode::SinglePath));
    } else if (preset == "fig9") {
        SimConfig d = sized(det(b), 150, 24, 58);
        SimConfig indep = d;
        indep.econ.eta = 1.0;
        SimConfig coupled = d;
        coupled.econ.eta = 1.5;
        add("eta_1.0", indep);
        add("eta_1.5", coupled);
    } else if (preset == "fig10") {
        SimConfig d = det(b);
        SimConfig single = d;
        single.prefs.equi_cost = EquiCostMode::SinglePath;
        SimConfig multi = d;
        multi.prefs.equi_cost = EquiCostMode::MultiPath;
        add("single_path", single);
        add("multi_path", multi);
    } else if (preset == "fig11") {
        SimConfig d = det(b);
        add("n_050", sized(d, 50, 8, 20));
        add("n_100", sized(d, 100, 16, 39));
        add("n_150", sized(d, 150, 24, 58));
    } else if (preset == "fig12") {
        add("deterministic", det(b));
        add("probabilistic", b);
    } else {
        throw std::invalid_argument("unknown preset '" + preset + "'");
    }
    return spec;
}

AggregateResult run_experiment(const ExperimentSpec& spec, int n_threads) {
    if (spec.arms.empty())
        throw std::invalid_argument("experiment has no arms");
    if (spec.n_profiles < 1 || spec.n_replicas < 1)
        throw std::invalid_argument("profile and replica counts must be >= 1");
    for (const ArmSpec& arm : spec.arms) {
        auto bad = validate_config(arm.cfg);
        if (!bad.empty())
            throw std::invalid_argument("arm '" + arm.name +
                                        "' has invalid config: " + join(bad));
    }

    // Topology and routing tables are immutable per arm; build once, share
    // across that arm's runs (and threads).
    std::vector<std::unique_ptr<Topology>> topos;
    std::vector<std::unique_ptr<Router>> routers;
    for (const ArmSpec& arm : spec.arms) {
        topos.push_back(
            std::make_unique<Topology>(Topology::generate(arm.cfg.topo)));
        routers.push_back(std::make_unique<Router>(*topos.back()));
    }

    const std::size_t runs_per_arm =
        static_cast<std::size_t>(spec.n_profiles) *
        static_cast<std::size_t>(spec.n_replicas);
    const std::size_t total = runs_per_arm * spec.arms.size();
    std::vector<RunResult> results(total);

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::mutex fail_mu;
    std::string fail_msg;

    auto work = [&]() {
        for (;;) {
            const std::size_t task = cursor.fetch_add(1);
            if (task >= total || failed.load()) return;
            const std::size_t a = task / runs_per_arm;
            const std::size_t r = task % runs_per_arm;
            const std::uint64_t profile = r / spec.n_replicas;
            const std::uint64_t replica = r % spec.n_replicas;
            SimConfig cfg = spec.arms[a].cfg;
            cfg.arrival_seed = rng::mix(spec.base_seed, rng::kProfile, profile);
            cfg.decision_seed =
                rng::mix(spec.base_seed, rng::kReplica, profile, replica);
            try {
                results[task] = run(cfg, *topos[a], *routers[a]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(fail_mu);
                if (!failed.exchange(true))
                    fail_msg = "run (arm " + spec.arms[a].name + ", profile " +
                               std::to_string(profile) + ", replica " +
                               std::to_string(replica) + ") failed: " + e.what();
                return;
            }
        }
    };

    int nt = n_threads > 0 ? n_threads
                           : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::max(1, std::min<int>(nt, static_cast<int>(total)));
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nt));
        for (int i = 0; i < nt; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(fail_msg);

    // Aggregate sequentially, in fixed run order, so results do not depend
    // on how the pool interleaved.
    AggregateResult agg;
    agg.spec = spec;
    for (std::size_t a = 0; a < spec.arms.size(); ++a) {
        ArmResult arm;
        arm.name = spec.arms[a].name;
        arm.cfg = spec.arms[a].cfg;
        arm.runs.assign(results.begin() + static_cast<std::ptrdiff_t>(a * runs_per_arm),
                        results.begin() +
                            static_cast<std::ptrdiff_t>((a + 1) * runs_per_arm));

        const std::size_t rows = arm.runs.front().series.size();
        for (const RunResult& rr : arm.runs)
            if (rr.series.size() != rows)
                throw std::logic_error("runs of one arm disagree on step count");

        auto collect = [&](auto getter, std::vector<double>& mean,
                           std::vector<double>* dev) {
            mean.assign(rows, 0.0);
            std::vector<double> sq(rows, 0.0);
            for (const RunResult& rr : arm.runs)
                for (std::size_t t = 0; t < rows; ++t) {
                    const double x = static_cast<double>(getter(rr.series[t]));
                    mean[t] += x;
                    sq[t] += x * x;
                }
            const double n = static_cast<double>(arm.runs.size());
            for (std::size_t t = 0; t < rows; ++t) {
                mean[t] /= n;
                if (dev) {
                    const double var = sq[t] / n - mean[t] * mean[t];
                    (*dev)[t] = std::sqrt(std::max(0.0, var));
                }
            }
        };
        arm.pce_dev.assign(rows, 0.0);
        arm.sdn_dev.assign(rows, 0.0);
        arm.both_dev.assign(rows, 0.0);
        collect([](const StepStats& s) { return s.pce_count; }, arm.pce_mean,
                &arm.pce_dev);
        collect([](const StepStats& s) { return s.sdn_count; }, arm.sdn_mean,
                &arm.sdn_dev);
        collect([](const StepStats& s) { return s.both_count; }, arm.both_mean,
                &arm.both_dev);
        collect([](const StepStats& s) { return s.unroutable; },
                arm.unroutable_mean, nullptr);

        for (const RunResult& rr : arm.runs)
            for (const MigrationRecord& rec : rr.records) {
                ++arm.causes.total;
                switch (rec.cause) {
                    case MigrationCause::OpexOnly: ++arm.causes.opex_only; break;
                    case MigrationCause::TrafficOnly:
                        ++arm.causes.traffic_only;
                        break;
                    case MigrationCause::Both: ++arm.causes.both; break;
                }
            }
        agg.arms.push_back(std::move(arm));
    }
    return agg;
}

void emit(const AggregateResult& result, const std::string& format,
          const std::string& out_dir) {
    if (format != "csv" && format != "json")
        throw std::invalid_argument("emit format must be csv or json");
    namespace fs = std::filesystem;
    const fs::path root(out_dir);
    std::error_code ec;
    fs::create_directories(root / "runs", ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " +
                                 root.string() + ": " + ec.message());

    json manifest;
    manifest["preset"] = result.spec.preset;
    manifest["version"] = kVersion;
    manifest["base_seed"] = result.spec.base_seed;
    manifest["n_profiles"] = result.spec.n_profiles;
    manifest["n_replicas"] = result.spec.n_replicas;
    manifest["format"] = format;
    manifest["arms"] = json::array();

    for (const ArmResult& arm : result.arms) {
        json jarm;
        jarm["name"] = arm.name;
        jarm["config"] = config_json(arm.cfg);
        json jruns = json::array();
        for (std::size_t r = 0; r < arm.runs.size(); ++r) {
            const std::uint64_t profile =
                r / static_cast<std::size_t>(result.spec.n_replicas);
            const std::uint64_t replica =
                r % static_cast<std::size_t>(result.spec.n_replicas);
            json jr;
            jr["profile"] = profile;
            jr["replica"] = replica;
            jr["arrival_seed"] =
                rng::mix(result.spec.base_seed, rng::kProfile, profile);
            jr["decision_seed"] =
                rng::mix(result.spec.base_seed, rng::kReplica, profile, replica);
            jruns.push_back(std::move(jr));
        }
        jarm["runs"] = std::move(jruns);
        manifest["arms"].push_back(std::move(jarm));

        const std::size_t rows = arm.pce_mean.size();
        if (format == "csv") {
            std::ostringstream out;
            out << "step,pce_mean,pce_dev,sdn_mean,sdn_dev,both_mean,both_dev,"
                   "unroutable_mean\n";
            for (std::size_t t = 0; t < rows; ++t)
                out << t << "," << fmt_double(arm.pce_mean[t]) << ","
                    << fmt_double(arm.pce_dev[t]) << ","
                    << fmt_double(arm.sdn_mean[t]) << ","
                    << fmt_double(arm.sdn_dev[t]) << ","
                    << fmt_double(arm.both_mean[t]) << ","
                    << fmt_double(arm.both_dev[t]) << ","
                    << fmt_double(arm.unroutable_mean[t]) << "\n";
            write_file(root / (arm.name + "_series.csv"), out.str());

            std::ostringstream causes;
            causes << "cause,count,percent\n";
            causes << "opex_only," << arm.causes.opex_only << ","
                   << fmt_double(arm.causes.pct(arm.causes.opex_only)) << "\n";
            causes << "traffic_only," << arm.causes.traffic_only << ","
                   << fmt_double(arm.causes.pct(arm.causes.traffic_only)) << "\n";
            causes << "both," << arm.causes.both << ","
                   << fmt_double(arm.causes.pct(arm.causes.both)) << "\n";
            write_file(root / (arm.name + "_causes.csv"), causes.str());
        } else {
            json series;
            series["step"] = json::array();
            for (std::size_t t = 0; t < rows; ++t) series["step"].push_back(t);
            series["pce_mean"] = arm.pce_mean;
            series["pce_dev"] = arm.pce_dev;
            series["sdn_mean"] = arm.sdn_mean;
            series["sdn_dev"] = arm.sdn_dev;
            series["both_mean"] = arm.both_mean;
            series["both_dev"] = arm.both_dev;
            series["unroutable_mean"] = arm.unroutable_mean;
            write_file(root / (arm.name + "_series.json"), series.dump(2) + "\n");

            json causes;
            causes["total"] = arm.causes.total;
            causes["opex_only"] = {{"count", arm.causes.opex_only},
                                   {"percent",
                                    arm.causes.pct(arm.causes.opex_only)}};
            causes["traffic_only"] = {{"count", arm.causes.traffic_only},
                                      {"percent",
                                       arm.causes.pct(arm.causes.traffic_only)}};
            causes["both"] = {{"count", arm.causes.both},
                              {"percent", arm.causes.pct(arm.causes.both)}};
            write_file(root / (arm.name + "_causes.json"), causes.dump(2) + "\n");
        }

        for (std::size_t r = 0; r < arm.runs.size(); ++r) {
            const std::size_t profile =
                r / static_cast<std::size_t>(result.spec.n_replicas);
            const std::size_t replica =
                r % static_cast<std::size_t>(result.spec.n_replicas);
            char tag[64];
            std::snprintf(tag, sizeof tag, "%s_p%04zu_r%02zu", arm.name.c_str(),
                          profile, replica);
            write_file(root / "runs" / (std::string(tag) + ".csv"),
                       series_csv(arm.runs[r]));
            write_file(root / "runs" / (std::string(tag) + "_records.csv"),
                       records_csv(arm.runs[r]));
        }
    }

    write_file(root / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace netmig
