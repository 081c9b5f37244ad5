#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "netmig/harness.hpp"
#include "netmig/topology.hpp"
#include "netmig/version.hpp"

namespace {

int cmd_run(const std::string& preset, const std::string& out_dir,
            std::uint64_t seed, int profiles, int replicas,
            const std::string& format, const std::string& config_path,
            int threads) {
    netmig::SimConfig base = netmig::default_config();
    if (!config_path.empty())
        base = netmig::load_config_file(config_path, base);

    netmig::ExperimentSpec spec =
        netmig::make_experiment(preset, base, seed, profiles, replicas);
    std::cout << "preset " << preset << ": " << spec.arms.size() << " arm(s), "
              << profiles << " profile(s) x " << replicas << " replica(s)\n";
    netmig::AggregateResult result = netmig::run_experiment(spec, threads);
    netmig::emit(result, format, out_dir);

    for (const netmig::ArmResult& arm : result.arms) {
        const std::size_t last = arm.pce_mean.size() - 1;
        std::cout << "  arm " << arm.name << ": final mean pce "
                  << arm.pce_mean[last] << ", sdn " << arm.sdn_mean[last]
                  << ", both " << arm.both_mean[last] << ", migrations "
                  << arm.causes.total << "\n";
    }
    std::cout << "wrote " << out_dir << "\n";
    return 0;
}

int cmd_validate(const std::string& config_path) {
    netmig::SimConfig cfg =
        netmig::load_config_file(config_path, netmig::default_config());
    const auto bad = netmig::validate_config(cfg);
    if (bad.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    std::cout << "invalid configuration:\n";
    for (const auto& b : bad) std::cout << "  " << b << "\n";
    return 1;
}

int cmd_topo(int n, std::uint64_t seed, const std::string& out, int seed_size,
             int transits, int attach) {
    netmig::TopologyConfig cfg;
    cfg.n_total = n;
    // Keep the default 16/39-per-100 proportions unless overridden.
    cfg.n_seed = seed_size > 0 ? seed_size : std::max(2, (n * 16 + 50) / 100);
    cfg.n_transit = transits > 0 ? transits : std::max(cfg.n_seed + 1, (n * 39 + 50) / 100);
    if (attach > 0) cfg.stub_attach_degree = attach;
    cfg.rng_seed = seed;

    netmig::Topology topo = netmig::Topology::generate(cfg);
    topo.save(out);
    std::cout << "wrote " << out << ": " << topo.n() << " islands ("
              << topo.transits().size() << " transit, " << topo.stubs().size()
              << " stub), " << topo.edges().size() << " edges\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netmig: migration dynamics of path-computation and "
                 "control-plane upgrades over policy-routed topologies"};
    app.set_version_flag("--version", netmig::kVersion);
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run an experiment preset");
    std::string preset, out_dir, format = "csv", config_path;
    std::uint64_t seed = 42;
    int profiles = 50, replicas = 5, threads = 0;
    run->add_option("--preset", preset, "experiment preset")
        ->required()
        ->check(CLI::IsMember(netmig::preset_names()));
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seed", seed, "base seed");
    run->add_option("--profiles", profiles, "traffic profiles per arm")
        ->check(CLI::PositiveNumber);
    run->add_option("--replicas", replicas, "replicas per profile")
        ->check(CLI::PositiveNumber);
    run->add_option("--format", format, "aggregate output format")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--config", config_path, "config file overriding defaults");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");

    // validate
    auto* validate = app.add_subcommand("validate", "check a config file");
    std::string validate_path;
    validate->add_option("--config", validate_path, "config file")->required();

    // topo
    auto* topo = app.add_subcommand("topo", "generate and save a topology");
    int topo_n = 100, topo_seed_size = 0, topo_transits = 0, topo_attach = 0;
    std::uint64_t topo_seed = 7;
    std::string topo_out;
    topo->add_option("--n", topo_n, "total islands")->check(CLI::PositiveNumber);
    topo->add_option("--seed", topo_seed, "generator seed");
    topo->add_option("--out", topo_out, "output file")->required();
    topo->add_option("--seed-size", topo_seed_size, "core clique size");
    topo->add_option("--transits", topo_transits, "transit count");
    topo->add_option("--attach", topo_attach, "attachment degree");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(preset, out_dir, seed, profiles, replicas, format,
                           config_path, threads);
        if (validate->parsed()) return cmd_validate(validate_path);
        if (topo->parsed())
            return cmd_topo(topo_n, topo_seed, topo_out, topo_seed_size,
                            topo_transits, topo_attach);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
