#ifndef AKUCB_GRAPH_HPP
#define AKUCB_GRAPH_HPP

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "akucb/rng.hpp"

namespace akucb {

struct Link {
    int u;
    int v; // u < v
};

// Undirected network graph under the primary interference model: nodes with
// dense integer ids, links as unordered node pairs with dense integer ids.
// Immutable after construction; safe to share read-only across runs.
class NetworkGraph {
public:
    NetworkGraph() = default;

    static NetworkGraph from_links(int node_count, const std::vector<std::pair<int, int>>& pairs) {
        NetworkGraph g;
        if (node_count <= 0) throw std::invalid_argument("graph needs at least one node");
        g.node_count_ = node_count;
        g.incident_.resize(node_count);
        for (auto [a, b] : pairs) {
            if (a == b) throw std::invalid_argument("self-loop link");
            if (a < 0 || b < 0 || a >= node_count || b >= node_count)
                throw std::invalid_argument("link endpoint out of range");
            if (a > b) std::swap(a, b);
            for (const Link& l : g.links_)
                if (l.u == a && l.v == b) throw std::invalid_argument("duplicate link");
            const int id = static_cast<int>(g.links_.size());
            g.links_.push_back({a, b});
            g.incident_[a].push_back(id);
            g.incident_[b].push_back(id);
        }
        return g;
    }

    int node_count() const { return node_count_; }
    int link_count() const { return static_cast<int>(links_.size()); }
    Link link(int id) const { return links_[id]; }
    bool valid_link(int id) const { return id >= 0 && id < link_count(); }

    // Incident link ids of node v, ascending.
    std::span<const int> incident(int v) const { return incident_[v]; }

    int degree(int v) const { return static_cast<int>(incident_[v].size()); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < node_count_; ++v) d = std::max(d, degree(v));
        return d;
    }

    int other_end(int link_id, int node) const {
        const Link& l = links_[link_id];
        return l.u == node ? l.v : l.u;
    }

    bool is_endpoint(int link_id, int node) const {
        const Link& l = links_[link_id];
        return l.u == node || l.v == node;
    }

    // Link id joining u and v, or -1.
    int link_between(int u, int v) const {
        for (int id : incident_[u])
            if (other_end(id, u) == v) return id;
        return -1;
    }

    bool links_share_node(int a, int b) const {
        const Link& la = links_[a];
        const Link& lb = links_[b];
        return la.u == lb.u || la.u == lb.v || la.v == lb.u || la.v == lb.v;
    }

private:
    int node_count_ = 0;
    std::vector<Link> links_;
    std::vector<std::vector<int>> incident_;
};

// rows x cols lattice; links join horizontal and vertical neighbors.
inline NetworkGraph grid_topology(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    std::vector<std::pair<int, int>> pairs;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) pairs.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) pairs.emplace_back(id(r, c), id(r + 1, c));
        }
    return NetworkGraph::from_links(rows * cols, pairs);
}

// n nodes in a single cycle; link i joins nodes i and (i+1) mod n, so link i
// shares a node with links i +/- 1 (mod n).
inline NetworkGraph ring_topology(int n) {
    if (n < 3) throw std::invalid_argument("ring needs at least 3 nodes");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
    return NetworkGraph::from_links(n, pairs);
}

// Connected simple graph with exactly n_links links: a random spanning tree
// first, then uniform samples (without replacement) from the remaining pairs.
inline NetworkGraph random_topology(int n_nodes, int n_links, uint64_t seed) {
    if (n_nodes < 1) throw std::invalid_argument("need at least one node");
    const long long max_links = static_cast<long long>(n_nodes) * (n_nodes - 1) / 2;
    if (n_links < n_nodes - 1 || n_links > max_links)
        throw std::invalid_argument("link count infeasible for a connected simple graph");

    Rng rng(derive_seed(seed, StreamTag::Topology));
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<char>> used(n_nodes, std::vector<char>(n_nodes, 0));
    for (int v = 1; v < n_nodes; ++v) {
        const int u = rng.next_below(v);
        pairs.emplace_back(u, v);
        used[u][v] = used[v][u] = 1;
    }

    std::vector<std::pair<int, int>> rest;
    for (int u = 0; u < n_nodes; ++u)
        for (int v = u + 1; v < n_nodes; ++v)
            if (!used[u][v]) rest.emplace_back(u, v);

    // Partial Fisher-Yates over the non-tree pairs.
    int need = n_links - (n_nodes - 1);
    for (int i = 0; i < need; ++i) {
        const int j = i + rng.next_below(static_cast<int>(rest.size()) - i);
        std::swap(rest[i], rest[j]);
        pairs.push_back(rest[i]);
    }
    return NetworkGraph::from_links(n_nodes, pairs);
}

// Conflict-free link set (feasible schedule). Keeps a per-node occupancy
// index for O(1) conflict checks.
class Matching {
public:
    Matching() = default;
    explicit Matching(const NetworkGraph& g)
        : graph_(&g), member_(g.link_count(), 0), node_link_(g.node_count(), -1) {}

    const NetworkGraph& graph() const { return *graph_; }

    bool contains(int link_id) const { return member_[link_id] != 0; }

    // Link occupying node v, or -1.
    int node_link(int v) const { return node_link_[v]; }

    bool can_add(int link_id) const {
        const Link l = graph_->link(link_id);
        return !member_[link_id] && node_link_[l.u] == -1 && node_link_[l.v] == -1;
    }

    void add(int link_id) {
        if (!can_add(link_id)) throw std::logic_error("link conflicts with matching");
        const Link l = graph_->link(link_id);
        member_[link_id] = 1;
        node_link_[l.u] = link_id;
        node_link_[l.v] = link_id;
        links_.insert(std::lower_bound(links_.begin(), links_.end(), link_id), link_id);
    }

    void remove(int link_id) {
        if (!member_[link_id]) return;
        const Link l = graph_->link(link_id);
        member_[link_id] = 0;
        node_link_[l.u] = -1;
        node_link_[l.v] = -1;
        links_.erase(std::lower_bound(links_.begin(), links_.end(), link_id));
    }

    void clear() {
        for (int id : links_) {
            const Link l = graph_->link(id);
            member_[id] = 0;
            node_link_[l.u] = -1;
            node_link_[l.v] = -1;
        }
        links_.clear();
    }

    // Member link ids, ascending.
    const std::vector<int>& links() const { return links_; }
    int size() const { return static_cast<int>(links_.size()); }
    bool empty() const { return links_.empty(); }

    bool operator==(const Matching& o) const { return links_ == o.links_; }

private:
    const NetworkGraph* graph_ = nullptr;
    std::vector<char> member_;
    std::vector<int> node_link_;
    std::vector<int> links_; // sorted
};

inline Matching make_matching(const NetworkGraph& g, std::initializer_list<int> ids) {
    Matching m(g);
    for (int id : ids) m.add(id);
    return m;
}

// True iff no node appears in two member links. Throws on unknown link ids.
inline bool is_matching(const NetworkGraph& g, std::span<const int> link_ids) {
    std::vector<char> seen(g.node_count(), 0);
    for (int id : link_ids) {
        if (!g.valid_link(id)) throw std::invalid_argument("unknown link id");
        const Link l = g.link(id);
        if (seen[l.u] || seen[l.v]) return false;
        seen[l.u] = 1;
        seen[l.v] = 1;
    }
    return true;
}

inline bool is_matching(const NetworkGraph& g, const std::vector<int>& link_ids) {
    return is_matching(g, std::span<const int>(link_ids));
}

// Plain-text edge list: first line "nodes <N>", then one "u v" pair per line.
inline void write_edge_list(std::ostream& os, const NetworkGraph& g) {
    os << "nodes " << g.node_count() << "\n";
    for (int id = 0; id < g.link_count(); ++id) {
        const Link l = g.link(id);
        os << l.u << " " << l.v << "\n";
    }
}

inline NetworkGraph read_edge_list(std::istream& is) {
    std::string word;
    int n = 0;
    if (!(is >> word >> n) || word != "nodes")
        throw std::invalid_argument("edge list must start with 'nodes <N>'");
    std::vector<std::pair<int, int>> pairs;
    int u, v;
    while (is >> u >> v) pairs.emplace_back(u, v);
    return NetworkGraph::from_links(n, pairs);
}

} // namespace akucb

#endif
