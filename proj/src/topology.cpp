#include "netmig/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace netmig {

namespace detail {

std::vector<int> weighted_pick_distinct(const std::vector<int>& weights, int k,
                                        rng::Stream& stream) {
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(k));
    std::vector<int> w = weights;
    long long total = 0;
    for (int x : w) {
        if (x < 0) throw std::invalid_argument("negative pick weight");
        total += x;
    }
    for (int round = 0; round < k; ++round) {
        if (total <= 0)
            throw std::invalid_argument("weighted pick exhausted all mass");
        auto r = static_cast<long long>(
            stream.uniform_index(static_cast<std::size_t>(total)));
        int chosen = -1;
        for (std::size_t i = 0; i < w.size(); ++i) {
            r -= w[i];
            if (r < 0) {
                chosen = static_cast<int>(i);
                break;
            }
        }
        picked.push_back(chosen);
        total -= w[static_cast<std::size_t>(chosen)];
        w[static_cast<std::size_t>(chosen)] = 0;
    }
    return picked;
}

}  // namespace detail

namespace {

const char* kind_name(RelationKind k) {
    return k == RelationKind::C2P ? "c2p" : "p2p";
}

const char* role_name(Role r) { return r == Role::Transit ? "transit" : "stub"; }

void check_config(const TopologyConfig& cfg) {
    if (cfg.n_seed < 2)
        throw std::invalid_argument("topology: n_seed must be at least 2");
    if (cfg.n_transit < cfg.n_seed)
        throw std::invalid_argument("topology: n_transit must be >= n_seed");
    if (cfg.n_total <= cfg.n_transit)
        throw std::invalid_argument("topology: n_total must exceed n_transit");
    if (cfg.stub_attach_degree < 1)
        throw std::invalid_argument("topology: stub_attach_degree must be >= 1");
}

}  // namespace

Topology Topology::generate(const TopologyConfig& cfg) {
    check_config(cfg);
    Topology t;
    t.roles_.assign(static_cast<std::size_t>(cfg.n_total), Role::Stub);
    for (int i = 0; i < cfg.n_transit; ++i)
        t.roles_[static_cast<std::size_t>(i)] = Role::Transit;

    std::vector<int> deg(static_cast<std::size_t>(cfg.n_total), 0);
    auto add_edge = [&](IslandId a, IslandId b, RelationKind k) {
        t.edges_.push_back(Edge{a, b, k});
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    };

    // Seed clique: mutually peered core.
    for (int i = 0; i < cfg.n_seed; ++i)
        for (int j = i + 1; j < cfg.n_seed; ++j) add_edge(i, j, RelationKind::P2P);

    rng::Stream stream(rng::mix(cfg.rng_seed, rng::kTopology));

    // Grow remaining transits by preferential attachment; the newcomer buys
    // transit from each chosen island (customer-to-provider links).
    for (int v = cfg.n_seed; v < cfg.n_transit; ++v) {
        std::vector<int> weights(deg.begin(), deg.begin() + v);
        int m = std::min(cfg.stub_attach_degree, v);
        for (int target : detail::weighted_pick_distinct(weights, m, stream))
            add_edge(v, target, RelationKind::C2P);
    }

    // Stubs multi-home to transits, again degree-proportionally.
    for (int v = cfg.n_transit; v < cfg.n_total; ++v) {
        std::vector<int> weights(deg.begin(), deg.begin() + cfg.n_transit);
        int m = std::min(cfg.stub_attach_degree, cfg.n_transit);
        for (int target : detail::weighted_pick_distinct(weights, m, stream))
            add_edge(v, target, RelationKind::C2P);
    }

    t.build_index();
    t.validate();
    return t;
}

Topology Topology::from_parts(int n_islands, std::vector<Edge> edges,
                              std::vector<Role> roles) {
    if (n_islands <= 0)
        throw std::invalid_argument("topology: island count must be positive");
    if (static_cast<int>(roles.size()) != n_islands)
        throw std::invalid_argument("topology: one role required per island");
    Topology t;
    t.roles_ = std::move(roles);
    t.edges_ = std::move(edges);
    t.build_index();
    t.validate();
    return t;
}

void Topology::build_index() {
    const auto n = roles_.size();
    adj_.assign(n, {});
    for (const Edge& e : edges_) {
        if (e.a < 0 || e.b < 0 || e.a >= static_cast<int>(n) ||
            e.b >= static_cast<int>(n))
            throw std::invalid_argument("topology: edge endpoint out of range");
        if (e.a == e.b) throw std::invalid_argument("topology: self-loop edge");
        if (e.kind == RelationKind::P2P) {
            adj_[static_cast<std::size_t>(e.a)].push_back({e.b, LinkDir::Peer});
            adj_[static_cast<std::size_t>(e.b)].push_back({e.a, LinkDir::Peer});
        } else {
            // e.a buys transit from e.b.
            adj_[static_cast<std::size_t>(e.a)].push_back(
                {e.b, LinkDir::ToProvider});
            adj_[static_cast<std::size_t>(e.b)].push_back(
                {e.a, LinkDir::ToCustomer});
        }
    }
    for (auto& nb : adj_)
        std::sort(nb.begin(), nb.end(),
                  [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });

    transits_.clear();
    stubs_.clear();
    for (int i = 0; i < static_cast<int>(n); ++i) {
        if (roles_[static_cast<std::size_t>(i)] == Role::Transit)
            transits_.push_back(i);
        else
            stubs_.push_back(i);
    }

    // All-pairs hop distances via BFS from every island.
    dist_.assign(n, std::vector<int>(n, kUnreachable));
    std::deque<IslandId> queue;
    for (int s = 0; s < static_cast<int>(n); ++s) {
        auto& row = dist_[static_cast<std::size_t>(s)];
        row[static_cast<std::size_t>(s)] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            IslandId u = queue.front();
            queue.pop_front();
            for (const Neighbor& nb : adj_[static_cast<std::size_t>(u)]) {
                if (row[static_cast<std::size_t>(nb.id)] != kUnreachable) continue;
                row[static_cast<std::size_t>(nb.id)] =
                    row[static_cast<std::size_t>(u)] + 1;
                queue.push_back(nb.id);
            }
        }
    }
}

void Topology::validate() const {
    const int n = static_cast<int>(roles_.size());
    // No duplicate links regardless of orientation or kind.
    std::vector<std::pair<int, int>> seen;
    seen.reserve(edges_.size());
    for (const Edge& e : edges_)
        seen.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("topology: duplicate edge between islands");

    for (int i = 0; i < n; ++i) {
        if (role(i) != Role::Stub) continue;
        for (const Neighbor& nb : neighbors(i)) {
            if (role(nb.id) == Role::Stub)
                throw std::invalid_argument(
                    "topology: stub islands may only connect to transit islands");
            if (nb.dir != LinkDir::ToProvider)
                throw std::invalid_argument(
                    "topology: stub islands cannot have customers or peers");
        }
    }

    if (n > 0) {
        for (int j = 0; j < n; ++j)
            if (hop_distance(0, j) == kUnreachable)
                throw std::invalid_argument("topology: graph is not connected");
    }
}

bool Topology::same_structure(const Topology& other) const {
    if (roles_ != other.roles_) return false;
    auto canon = [](const std::vector<Edge>& es) {
        std::vector<std::tuple<int, int, int>> v;
        v.reserve(es.size());
        for (const Edge& e : es) {
            if (e.kind == RelationKind::P2P)
                v.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b), 2);
            else
                v.emplace_back(e.a, e.b, 1);
        }
        std::sort(v.begin(), v.end());
        return v;
    };
    return canon(edges_) == canon(other.edges_);
}

std::string Topology::to_text() const {
    std::ostringstream out;
    out << "islands " << n() << "\n";
    for (const Edge& e : edges_)
        out << "edge " << e.a << " " << e.b << " " << kind_name(e.kind) << "\n";
    for (int i = 0; i < n(); ++i)
        out << "role " << i << " " << role_name(role(i)) << "\n";
    return out.str();
}

void Topology::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << to_text();
    if (!out) throw std::runtime_error("failed writing " + path);
}

Topology Topology::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_stream(in, path);
}

Topology Topology::load_stream(std::istream& in, const std::string& name) {
    auto fail = [&](int line_no, const std::string& msg) -> void {
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " +
                                 msg);
    };

    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<Edge> edges;
    std::vector<Role> roles;
    std::vector<char> role_seen;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "islands") {
            if (n >= 0) fail(line_no, "duplicate islands header");
            if (!(ls >> n) || n <= 0) fail(line_no, "invalid island count");
            roles.assign(static_cast<std::size_t>(n), Role::Stub);
            role_seen.assign(static_cast<std::size_t>(n), 0);
        } else if (tag == "edge") {
            if (n < 0) fail(line_no, "edge before islands header");
            int a = 0, b = 0;
            std::string kind;
            if (!(ls >> a >> b >> kind)) fail(line_no, "malformed edge line");
            if (a < 0 || b < 0 || a >= n || b >= n)
                fail(line_no, "edge endpoint out of range");
            RelationKind k;
            if (kind == "c2p")
                k = RelationKind::C2P;
            else if (kind == "p2p")
                k = RelationKind::P2P;
            else
                fail(line_no, "unknown relation kind '" + kind + "'");
            edges.push_back(Edge{a, b, k});
        } else if (tag == "role") {
            if (n < 0) fail(line_no, "role before islands header");
            int id = 0;
            std::string r;
            if (!(ls >> id >> r)) fail(line_no, "malformed role line");
            if (id < 0 || id >= n) fail(line_no, "role id out of range");
            if (role_seen[static_cast<std::size_t>(id)])
                fail(line_no, "duplicate role for island " + std::to_string(id));
            role_seen[static_cast<std::size_t>(id)] = 1;
            if (r == "transit")
                roles[static_cast<std::size_t>(id)] = Role::Transit;
            else if (r == "stub")
                roles[static_cast<std::size_t>(id)] = Role::Stub;
            else
                fail(line_no, "unknown role '" + r + "'");
        } else {
            fail(line_no, "unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) fail(line_no, "missing islands header");
    for (int i = 0; i < n; ++i)
        if (!role_seen[static_cast<std::size_t>(i)])
            fail(line_no, "missing role for island " + std::to_string(i));
    return from_parts(n, std::move(edges), std::move(roles));
}

}  // namespace netmig
