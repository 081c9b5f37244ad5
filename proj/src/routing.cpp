#include "netmig/routing.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace netmig {

namespace {

// Traversal phase of a partially built route. A policy-compliant route
// climbs provider links, crosses at most one peer link, then descends
// customer links; the phase can only move forward.
enum Phase : int { kUp = 0, kPeerX = 1, kDown = 2 };

int start_phase(LinkDir d) {
    switch (d) {
        case LinkDir::ToProvider: return kUp;
        case LinkDir::Peer: return kPeerX;
        case LinkDir::ToCustomer: return kDown;
    }
    return -1;
}

// Phase after following a link of direction d, or -1 if the step is not
// exportable under the valley-free rules.
int next_phase(int phase, LinkDir d) {
    if (phase == kUp) return start_phase(d);
    return d == LinkDir::ToCustomer ? kDown : -1;
}

LinkDir flipped(LinkDir d) {
    if (d == LinkDir::ToProvider) return LinkDir::ToCustomer;
    if (d == LinkDir::ToCustomer) return LinkDir::ToProvider;
    return LinkDir::Peer;
}

// All shortest policy-compliant paths whose first hop has direction
// `first_dir`, via BFS on (island, phase) states. Shortest such walks are
// provably simple: revisiting an island in a later phase admits a shortcut.
std::vector<Path> shortest_class_paths(const Topology& t, IslandId src,
                                       IslandId dst, LinkDir first_dir) {
    const int n = t.n();
    std::vector<int> dist(static_cast<std::size_t>(n) * 3, -1);
    std::deque<int> queue;

    for (const Neighbor& nb : t.neighbors(src)) {
        if (nb.dir != first_dir) continue;
        int st = nb.id * 3 + start_phase(nb.dir);
        if (dist[static_cast<std::size_t>(st)] < 0) {
            dist[static_cast<std::size_t>(st)] = 1;
            queue.push_back(st);
        }
    }
    while (!queue.empty()) {
        int st = queue.front();
        queue.pop_front();
        int u = st / 3, phase = st % 3;
        if (u == dst) continue;  // routes end at the destination
        for (const Neighbor& nb : t.neighbors(u)) {
            if (nb.id == src) continue;
            int np = next_phase(phase, nb.dir);
            if (np < 0) continue;
            int ns = nb.id * 3 + np;
            if (dist[static_cast<std::size_t>(ns)] < 0) {
                dist[static_cast<std::size_t>(ns)] =
                    dist[static_cast<std::size_t>(st)] + 1;
                queue.push_back(ns);
            }
        }
    }

    int best = std::numeric_limits<int>::max();
    for (int ph = 0; ph < 3; ++ph) {
        int d = dist[static_cast<std::size_t>(dst * 3 + ph)];
        if (d >= 0) best = std::min(best, d);
    }
    std::vector<Path> out;
    if (best == std::numeric_limits<int>::max()) return out;

    // Walk the distance relation backwards, collecting every geodesic.
    Path stack{dst};
    auto backward = [&](auto&& self, IslandId u, int phase, int d) -> void {
        if (d == 1) {
            Path p;
            p.reserve(stack.size() + 1);
            p.push_back(src);
            p.insert(p.end(), stack.rbegin(), stack.rend());
            out.push_back(std::move(p));
            return;
        }
        for (const Neighbor& nb : t.neighbors(u)) {
            IslandId v = nb.id;
            if (v == src || v == dst) continue;
            LinkDir vdir = flipped(nb.dir);  // direction of edge v -> u from v
            for (int pv = 0; pv < 3; ++pv) {
                if (dist[static_cast<std::size_t>(v * 3 + pv)] != d - 1) continue;
                if (next_phase(pv, vdir) != phase) continue;
                stack.push_back(v);
                self(self, v, pv, d - 1);
                stack.pop_back();
            }
        }
    };
    for (int ph = 0; ph < 3; ++ph)
        if (dist[static_cast<std::size_t>(dst * 3 + ph)] == best)
            backward(backward, dst, ph, best);

    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Path> Router::valley_free_paths(const Topology& t, IslandId src,
                                            IslandId dst) {
    if (src == dst) throw std::invalid_argument("paths: src equals dst");
    std::vector<Path> out;
    std::vector<char> visited(static_cast<std::size_t>(t.n()), 0);
    visited[static_cast<std::size_t>(src)] = 1;
    Path cur{src};
    auto dfs = [&](auto&& self, IslandId u, int phase) -> void {
        if (u == dst) {
            out.push_back(cur);
            return;
        }
        for (const Neighbor& nb : t.neighbors(u)) {
            if (visited[static_cast<std::size_t>(nb.id)]) continue;
            int np = phase < 0 ? start_phase(nb.dir) : next_phase(phase, nb.dir);
            if (np < 0) continue;
            visited[static_cast<std::size_t>(nb.id)] = 1;
            cur.push_back(nb.id);
            self(self, nb.id, np);
            cur.pop_back();
            visited[static_cast<std::size_t>(nb.id)] = 0;
        }
    };
    dfs(dfs, src, -1);
    std::sort(out.begin(), out.end());
    return out;
}

bool Router::is_valley_free(const Topology& t, const Path& p) {
    if (p.size() < 2) return false;
    std::vector<char> seen(static_cast<std::size_t>(t.n()), 0);
    for (IslandId v : p) {
        if (v < 0 || v >= t.n() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    int phase = -1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const Neighbor* found = nullptr;
        for (const Neighbor& nb : t.neighbors(p[i]))
            if (nb.id == p[i + 1]) {
                found = &nb;
                break;
            }
        if (!found) return false;
        phase = phase < 0 ? start_phase(found->dir) : next_phase(phase, found->dir);
        if (phase < 0) return false;
    }
    return true;
}

PathClass Router::path_class(const Topology& t, const Path& p) {
    if (p.size() < 2) throw std::invalid_argument("path_class: path too short");
    for (const Neighbor& nb : t.neighbors(p[0])) {
        if (nb.id != p[1]) continue;
        switch (nb.dir) {
            case LinkDir::ToCustomer: return PathClass::CustomerRoute;
            case LinkDir::Peer: return PathClass::PeerRoute;
            case LinkDir::ToProvider: return PathClass::ProviderRoute;
        }
    }
    throw std::invalid_argument("path_class: first hop is not an edge");
}

std::vector<Path> Router::compute_candidates(const Topology& t, IslandId src,
                                             IslandId dst) {
    if (src == dst) throw std::invalid_argument("candidates: src equals dst");
    // Customer routes beat peer routes beat provider routes, regardless of
    // length; only within the winning class do hop counts compete.
    for (LinkDir first :
         {LinkDir::ToCustomer, LinkDir::Peer, LinkDir::ToProvider}) {
        std::vector<Path> paths = shortest_class_paths(t, src, dst, first);
        if (!paths.empty()) return paths;
    }
    return {};
}

Router::Router(const Topology& topo) : topo_(&topo) {
    const int n = topo.n();
    pair_lookup_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                        -1);
    for (IslandId src : topo.stubs()) {
        for (IslandId dst : topo.stubs()) {
            if (src == dst) continue;
            PairRoutes pr;
            pr.src = src;
            pr.dst = dst;
            pr.paths = compute_candidates(topo, src, dst);
            pr.path_transits.reserve(pr.paths.size());
            pr.interior.reserve(pr.paths.size());
            for (const Path& p : pr.paths) {
                std::vector<IslandId> transits;
                for (IslandId v : p)
                    if (topo.is_transit(v)) transits.push_back(v);
                pr.path_transits.push_back(std::move(transits));
                pr.interior.emplace_back(p.begin() + 1, p.end() - 1);
            }
            pair_lookup_[static_cast<std::size_t>(src) *
                             static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(dst)] =
                static_cast<int>(pairs_.size());
            pairs_.push_back(std::move(pr));
        }
    }

    // Index, per island, the pairs whose candidates can cross it.
    touching_.assign(static_cast<std::size_t>(n), {});
    for (int pi = 0; pi < static_cast<int>(pairs_.size()); ++pi) {
        const PairRoutes& pr = pairs_[static_cast<std::size_t>(pi)];
        const std::size_t k = pr.paths.size();
        std::vector<IslandId> involved;
        for (const auto& in : pr.interior)
            involved.insert(involved.end(), in.begin(), in.end());
        std::sort(involved.begin(), involved.end());
        involved.erase(std::unique(involved.begin(), involved.end()),
                       involved.end());
        for (IslandId v : involved) {
            Touch touch;
            touch.pair = pi;
            touch.member.assign(k, 0);
            bool all = true;
            for (std::size_t c = 0; c < k; ++c) {
                bool on = std::find(pr.interior[c].begin(), pr.interior[c].end(),
                                    v) != pr.interior[c].end();
                touch.member[c] = on;
                all = all && on;
            }
            touch.all_members = all;
            touching_[static_cast<std::size_t>(v)].push_back(std::move(touch));
        }
    }
}

std::pair<IslandId, IslandId> Router::pair_endpoints(int pair_idx) const {
    const PairRoutes& pr = pairs_[static_cast<std::size_t>(pair_idx)];
    return {pr.src, pr.dst};
}

int Router::pair_index(IslandId src, IslandId dst) const {
    const int n = topo_->n();
    if (src < 0 || dst < 0 || src >= n || dst >= n) return -1;
    return pair_lookup_[static_cast<std::size_t>(src) *
                            static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(dst)];
}

const std::vector<Path>& Router::candidates(int pair_idx) const {
    return pairs_[static_cast<std::size_t>(pair_idx)].paths;
}

void Router::pair_weights(const PairRoutes& pr, int pair_idx,
                          const std::vector<std::uint8_t>& pce_bits,
                          const RoutingPrefs& prefs, std::uint64_t route_seed,
                          std::vector<double>& weights) const {
    const std::size_t k = pr.paths.size();
    weights.assign(k, 0.0);
    if (k == 0) return;

    // Candidates whose transit islands all run automated path computation
    // can guarantee the route end to end and displace the rest.
    thread_local std::vector<std::uint8_t> qualified;
    qualified.assign(k, 0);
    std::size_t n_qualified = 0;
    for (std::size_t c = 0; c < k; ++c) {
        bool all = true;
        for (IslandId v : pr.path_transits[c])
            if (!pce_bits[static_cast<std::size_t>(v)]) {
                all = false;
                break;
            }
        qualified[c] = all;
        n_qualified += all;
    }
    const bool restricted = n_qualified > 0;
    const std::size_t n_live = restricted ? n_qualified : k;

    if (prefs.equi_cost == EquiCostMode::MultiPath) {
        const double share = 1.0 / static_cast<double>(n_live);
        for (std::size_t c = 0; c < k; ++c)
            if (!restricted || qualified[c]) weights[c] = share;
    } else {
        rng::Stream pick(rng::mix(route_seed, rng::kRoutePick,
                                  static_cast<std::uint64_t>(pair_idx)));
        std::size_t j = pick.uniform_index(n_live);
        for (std::size_t c = 0; c < k; ++c) {
            if (restricted && !qualified[c]) continue;
            if (j == 0) {
                weights[c] = 1.0;
                break;
            }
            --j;
        }
    }
}

std::vector<Path> Router::best_paths(IslandId src, IslandId dst,
                                     const std::vector<std::uint8_t>& pce_bits,
                                     const RoutingPrefs& prefs,
                                     std::uint64_t route_seed) const {
    int pi = pair_index(src, dst);
    if (pi < 0)
        throw std::invalid_argument("best_paths: endpoints are not a stub pair");
    const PairRoutes& pr = pairs_[static_cast<std::size_t>(pi)];
    thread_local std::vector<double> w;
    pair_weights(pr, pi, pce_bits, prefs, route_seed, w);
    std::vector<Path> out;
    for (std::size_t c = 0; c < pr.paths.size(); ++c)
        if (w[c] > 0.0) out.push_back(pr.paths[c]);
    return out;
}

TrafficState Router::provision(const std::vector<double>& demands,
                               const std::vector<std::uint8_t>& pce_bits,
                               const RoutingPrefs& prefs,
                               std::uint64_t route_seed) const {
    if (demands.size() != pairs_.size())
        throw std::invalid_argument("provision: one demand per ordered stub pair");
    TrafficState st;
    st.transit_load.assign(static_cast<std::size_t>(topo_->n()), 0.0);
    thread_local std::vector<double> w;
    for (int pi = 0; pi < static_cast<int>(pairs_.size()); ++pi) {
        const double vol = demands[static_cast<std::size_t>(pi)];
        if (vol <= 0.0) continue;
        const PairRoutes& pr = pairs_[static_cast<std::size_t>(pi)];
        if (pr.paths.empty()) {
            ++st.unroutable;
            continue;
        }
        pair_weights(pr, pi, pce_bits, prefs, route_seed, w);
        for (std::size_t c = 0; c < pr.paths.size(); ++c) {
            if (w[c] <= 0.0) continue;
            const double add = vol * w[c];
            for (IslandId v : pr.interior[c])
                st.transit_load[static_cast<std::size_t>(v)] += add;
        }
    }
    return st;
}

double Router::island_load(IslandId island, const std::vector<double>& demands,
                           const std::vector<std::uint8_t>& pce_bits,
                           const RoutingPrefs& prefs,
                           std::uint64_t route_seed) const {
    if (demands.size() != pairs_.size())
        throw std::invalid_argument("island_load: one demand per ordered stub pair");
    double total = 0.0;
    thread_local std::vector<double> w;
    for (const Touch& touch : touching_[static_cast<std::size_t>(island)]) {
        const double vol = demands[static_cast<std::size_t>(touch.pair)];
        if (vol <= 0.0) continue;
        if (touch.all_members) {
            // Every candidate crosses this island, so the split is moot.
            total += vol;
            continue;
        }
        const PairRoutes& pr = pairs_[static_cast<std::size_t>(touch.pair)];
        pair_weights(pr, touch.pair, pce_bits, prefs, route_seed, w);
        for (std::size_t c = 0; c < w.size(); ++c)
            if (touch.member[c] && w[c] > 0.0) total += vol * w[c];
    }
    return total;
}

std::vector<double> Router::load_demands(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_demands(in, path);
}

std::vector<double> Router::parse_demands(std::istream& in,
                                          const std::string& name) const {
    std::vector<double> demands(pairs_.size(), 0.0);
    std::vector<char> set(pairs_.size(), 0);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag != "demand") fail("unknown line tag '" + tag + "'");
        int src = 0, dst = 0;
        double vol = 0.0;
        if (!(ls >> src >> dst >> vol)) fail("malformed demand line");
        if (vol < 0.0) fail("negative demand volume");
        int pi = pair_index(src, dst);
        if (pi < 0) fail("islands " + std::to_string(src) + " and " +
                         std::to_string(dst) + " are not an ordered stub pair");
        if (set[static_cast<std::size_t>(pi)])
            fail("duplicate demand for pair " + std::to_string(src) + " -> " +
                 std::to_string(dst));
        set[static_cast<std::size_t>(pi)] = 1;
        demands[static_cast<std::size_t>(pi)] = vol;
    }
    return demands;
}

}  // namespace netmig
