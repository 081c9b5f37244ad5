#include "netmig/dynamics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace netmig {

const char* cause_name(MigrationCause c) {
    switch (c) {
        case MigrationCause::OpexOnly: return "opex_only";
        case MigrationCause::TrafficOnly: return "traffic_only";
        case MigrationCause::Both: return "both";
    }
    return "?";
}

MigrationCause classify_cause(double traffic_before, double traffic_after,
                              double opex_before, double opex_after) {
    const bool gained_traffic = traffic_after > traffic_before;
    const bool cut_opex = opex_after < opex_before;
    if (gained_traffic && cut_opex) return MigrationCause::Both;
    if (gained_traffic) return MigrationCause::TrafficOnly;
    if (cut_opex) return MigrationCause::OpexOnly;
    throw std::logic_error(
        "migration brought neither traffic gain nor opex relief");
}

MigrationCause classify_cause(const MigrationRecord& rec) {
    return classify_cause(rec.traffic_before, rec.traffic_after, rec.opex_before,
                          rec.opex_after);
}

Sim::Sim(const SimConfig& cfg, const Topology& topo, const Router& router)
    : cfg_(cfg), topo_(&topo), router_(&router) {
    auto bad = validate_params(cfg.econ);
    if (!bad.empty()) {
        std::string msg = "invalid economic parameters:";
        for (const auto& b : bad) msg += " " + b;
        throw std::invalid_argument(msg);
    }
    states_.assign(static_cast<std::size_t>(topo.n()), StrategySet{});
    pce_bits_.assign(static_cast<std::size_t>(topo.n()), 0);
}

void Sim::seed_adopters() {
    if (cfg_.adopter_rule == AdopterRule::None || cfg_.early_adopters <= 0)
        return;
    std::vector<IslandId> order = topo_->transits();
    const bool want_max = cfg_.adopter_rule == AdopterRule::MaxDegree;
    std::sort(order.begin(), order.end(), [&](IslandId a, IslandId b) {
        int da = topo_->degree(a), db = topo_->degree(b);
        if (da != db) return want_max ? da > db : da < db;
        return a < b;
    });
    const int k = std::min<int>(cfg_.early_adopters,
                                static_cast<int>(order.size()));
    for (int i = 0; i < k; ++i) {
        states_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
            .pce = true;
        pce_bits_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
            1;
    }
}

void Sim::init() { init_with_demands(router_->initial_demands(1.0)); }

void Sim::init_with_demands(std::vector<double> demands) {
    demands_ = std::move(demands);
    step_ = 0;
    seed_adopters();
    reprovision();
    record_stats();
}

void Sim::reprovision() {
    traffic_ =
        router_->provision(demands_, pce_bits_, cfg_.prefs, cfg_.decision_seed);
}

void Sim::apply_arrivals() {
    for (std::size_t pi = 0; pi < demands_.size(); ++pi) {
        rng::Stream arrivals(rng::mix(cfg_.arrival_seed, rng::kArrivals,
                                      static_cast<std::uint64_t>(step_),
                                      static_cast<std::uint64_t>(pi)));
        demands_[pi] = std::min(cfg_.demand_cap,
                                demands_[pi] + arrivals.poisson(cfg_.lambda));
    }
}

std::optional<Sim::Choice> Sim::agent_decide(IslandId i) {
    if (!topo_->is_transit(i))
        throw std::logic_error("agent_decide: stub islands never decide");
    const StrategySet cur = states_[static_cast<std::size_t>(i)];

    std::vector<StrategySet> candidates;
    for (const StrategySet& to : feasible_transitions(cur)) {
        if (cfg_.availability == TechAvailability::PceOnly && to.sdn) continue;
        if (cfg_.availability == TechAvailability::SdnOnly && to.pce) continue;
        candidates.push_back(to);
    }
    if (candidates.empty()) return std::nullopt;

    const StateEstimate est =
        estimate_states(*topo_, i, states_, cfg_.influence);
    rng::Stream bit_stream(rng::mix(cfg_.decision_seed, rng::kEstimate,
                                    static_cast<std::uint64_t>(step_),
                                    static_cast<std::uint64_t>(i)));
    const double t_now = traffic_.transit_load[static_cast<std::size_t>(i)];

    bool have = false;
    Choice best;
    for (const StrategySet& to : candidates) {
        const double t_est = estimate_traffic(
            *topo_, *router_, i, to, est, states_, demands_, cfg_.prefs,
            cfg_.influence, cfg_.decision_seed, bit_stream);
        const double pay = payoff(cfg_.econ, cur, to, t_now, t_est);
        // Ties go to the bigger upgrade, then to path computation first.
        const bool wins =
            !have || pay > best.payoff_value ||
            (pay == best.payoff_value &&
             (to.count() > best.to.count() ||
              (to.count() == best.to.count() && to.pce && !best.to.pce)));
        if (wins) {
            best = Choice{to, pay, t_est};
            have = true;
        }
    }
    if (!have || !(best.payoff_value > 0.0)) return std::nullopt;
    return best;
}

bool Sim::cascade() {
    bool any = false;
    for (int sweep = 0; sweep < cfg_.max_sweeps; ++sweep) {
        std::vector<IslandId> order = topo_->transits();
        rng::Stream shuffler(rng::mix(cfg_.decision_seed, rng::kSweepOrder,
                                      static_cast<std::uint64_t>(step_),
                                      static_cast<std::uint64_t>(sweep)));
        shuffler.shuffle(order);

        bool migrated = false;
        for (IslandId i : order) {
            auto choice = agent_decide(i);
            if (!choice) continue;

            MigrationRecord rec;
            rec.step = step_;
            rec.island = i;
            rec.from = states_[static_cast<std::size_t>(i)];
            rec.to = choice->to;
            rec.payoff_value = choice->payoff_value;
            rec.traffic_est = choice->traffic_est;
            rec.traffic_before =
                traffic_.transit_load[static_cast<std::size_t>(i)];

            states_[static_cast<std::size_t>(i)] = choice->to;
            pce_bits_[static_cast<std::size_t>(i)] = choice->to.pce ? 1 : 0;
            reprovision();

            rec.traffic_after =
                traffic_.transit_load[static_cast<std::size_t>(i)];
            rec.opex_before = opex(cfg_.econ, rec.from, rec.traffic_before);
            rec.opex_after = opex(cfg_.econ, rec.to, rec.traffic_after);
            rec.cause = classify_cause(rec);
            records_.push_back(rec);
            migrated = true;
            any = true;
        }
        if (!migrated) return any;  // fixpoint reached
    }
    ++sweep_limit_hits_;
    return any;
}

void Sim::record_stats() {
    StepStats row;
    row.step = step_;
    for (const StrategySet& s : states_) {
        row.pce_count += s.pce;
        row.sdn_count += s.sdn;
        row.both_count += s.pce && s.sdn;
    }
    row.unroutable = traffic_.unroutable;
    series_.push_back(row);

    if (mask_words_ == 0) mask_words_ = (topo_->n() + 63) / 64;
    const std::size_t base = pce_masks_.size();
    pce_masks_.resize(base + static_cast<std::size_t>(mask_words_), 0);
    sdn_masks_.resize(base + static_cast<std::size_t>(mask_words_), 0);
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const std::size_t word = base + i / 64;
        const std::uint64_t bit = 1ull << (i % 64);
        if (states_[i].pce) pce_masks_[word] |= bit;
        if (states_[i].sdn) sdn_masks_[word] |= bit;
    }
}

void Sim::advance() {
    ++step_;
    apply_arrivals();
    reprovision();
    cascade();
    // cascade() leaves traffic_ provisioned for the final states
    record_stats();
}

RunResult Sim::finish() const {
    RunResult r;
    r.series = series_;
    r.records = records_;
    r.final_states = states_;
    r.final_demands = demands_;
    r.sweep_limit_hits = sweep_limit_hits_;
    r.mask_words = mask_words_;
    r.pce_masks = pce_masks_;
    r.sdn_masks = sdn_masks_;
    return r;
}

RunResult run(const SimConfig& cfg, const Topology& topo, const Router& router) {
    Sim sim(cfg, topo, router);
    sim.init();
    for (int t = 0; t < cfg.steps; ++t) sim.advance();
    return sim.finish();
}

RunResult run(const SimConfig& cfg) {
    Topology topo = Topology::generate(cfg.topo);
    Router router(topo);
    return run(cfg, topo, router);
}

std::string series_csv(const RunResult& r) {
    std::ostringstream out;
    out << "step,pce_count,sdn_count,both_count,unroutable\n";
    for (const StepStats& row : r.series)
        out << row.step << "," << row.pce_count << "," << row.sdn_count << ","
            << row.both_count << "," << row.unroutable << "\n";
    return out.str();
}

std::string records_csv(const RunResult& r) {
    std::ostringstream out;
    out << "step,island,transition,payoff,cause\n";
    char buf[64];
    for (const MigrationRecord& rec : r.records) {
        std::snprintf(buf, sizeof buf, "%.10g", rec.payoff_value);
        out << rec.step << "," << rec.island << "," << strategy_name(rec.from)
            << "->" << strategy_name(rec.to) << "," << buf << ","
            << cause_name(rec.cause) << "\n";
    }
    return out.str();
}

std::vector<StepStats> parse_series_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        line != "step,pce_count,sdn_count,both_count,unroutable")
        throw std::runtime_error("series csv: bad header");
    std::vector<StepStats> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        StepStats row;
        char comma;
        std::istringstream ls(line);
        if (!(ls >> row.step >> comma >> row.pce_count >> comma >>
              row.sdn_count >> comma >> row.both_count >> comma >>
              row.unroutable))
            throw std::runtime_error("series csv: bad row '" + line + "'");
        rows.push_back(row);
    }
    return rows;
}

}  // namespace netmig
