#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cocite/cliques.hpp"
#include "cocite/graph.hpp"

namespace cocite {

/// Overlapping community cover; a node may sit in several communities.
struct OverlappingCover {
    std::vector<std::vector<NodeId>> communities;     // each sorted; list by (-size, lex)
    std::map<NodeId, std::set<int>> membership;       // inverse of communities
    std::vector<NodeId> uncovered;                    // nodes in no community
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

inline std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++n;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return n;
}

inline std::vector<std::vector<NodeId>> order_communities(std::vector<std::vector<NodeId>> comms) {
    for (auto& c : comms) std::sort(c.begin(), c.end());
    std::sort(comms.begin(), comms.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return comms;
}

}  // namespace detail

/// k-clique percolation: communities are unions of k-cliques reachable through
/// chains of k-cliques sharing k-1 nodes. Computed on maximal cliques of size
/// >= k, which percolate together exactly when they share >= k-1 nodes.
inline OverlappingCover k_clique_communities(const Graph& g, int k) {
    if (k < 2) throw InfeasibleError("clique size k must be >= 2");
    auto cliques = maximal_clique_indices(g);
    std::erase_if(cliques, [&](const auto& c) { return c.size() < static_cast<std::size_t>(k); });

    detail::UnionFind uf(cliques.size());
    std::vector<std::vector<std::size_t>> cliques_of_node(g.n());
    for (std::size_t ci = 0; ci < cliques.size(); ++ci)
        for (int v : cliques[ci]) cliques_of_node[static_cast<std::size_t>(v)].push_back(ci);
    for (const auto& through : cliques_of_node) {
        for (std::size_t a = 0; a < through.size(); ++a)
            for (std::size_t b = a + 1; b < through.size(); ++b) {
                std::size_t ci = through[a], cj = through[b];
                if (uf.find(static_cast<int>(ci)) == uf.find(static_cast<int>(cj))) continue;
                if (detail::intersection_size(cliques[ci], cliques[cj]) >= static_cast<std::size_t>(k) - 1)
                    uf.unite(static_cast<int>(ci), static_cast<int>(cj));
            }
    }

    std::map<int, std::set<int>> groups;
    for (std::size_t ci = 0; ci < cliques.size(); ++ci)
        groups[uf.find(static_cast<int>(ci))].insert(cliques[ci].begin(), cliques[ci].end());

    std::vector<std::vector<NodeId>> comms;
    comms.reserve(groups.size());
    for (const auto& [_, nodes] : groups) {
        std::vector<NodeId> ids;
        ids.reserve(nodes.size());
        for (int v : nodes) ids.push_back(g.id_of(v));
        comms.push_back(std::move(ids));
    }

    OverlappingCover cover;
    cover.communities = detail::order_communities(std::move(comms));
    for (std::size_t i = 0; i < cover.communities.size(); ++i)
        for (const auto& id : cover.communities[i]) cover.membership[id].insert(static_cast<int>(i));
    for (const auto& id : g.nodes())
        if (!cover.membership.count(id)) cover.uncovered.push_back(id);
    return cover;
}

/// Disjoint, exhaustive partition with its (classic) modularity.
struct Partition {
    std::map<NodeId, int> assignment;  // community ids contiguous 0..C-1
    double modularity = 0.0;
    int community_count = 0;
};

/// Weighted modularity Q = sum_c [W_c/W - (S_c/2W)^2] with an optional
/// resolution scaling the null term.
inline double modularity(const Graph& g, const std::map<NodeId, int>& assignment, double resolution = 1.0) {
    if (g.m() == 0) throw UndefinedMetricError("modularity undefined for an edgeless graph");
    std::vector<int> comm(g.n());
    int max_comm = -1;
    for (const auto& id : g.nodes()) {
        auto it = assignment.find(id);
        if (it == assignment.end()) throw ValidationError("node '" + id + "' missing from partition");
        comm[static_cast<std::size_t>(g.index_of(id))] = it->second;
        max_comm = std::max(max_comm, it->second);
    }
    std::vector<double> intra(static_cast<std::size_t>(max_comm) + 1, 0.0);
    std::vector<double> strength(static_cast<std::size_t>(max_comm) + 1, 0.0);
    double total = 0.0;
    for (const auto& [u, v, w] : g.edges()) {
        total += w;
        if (comm[static_cast<std::size_t>(u)] == comm[static_cast<std::size_t>(v)])
            intra[static_cast<std::size_t>(comm[static_cast<std::size_t>(u)])] += w;
    }
    for (std::size_t i = 0; i < g.n(); ++i)
        strength[static_cast<std::size_t>(comm[i])] += g.strength_at(static_cast<int>(i));
    double q = 0.0;
    for (std::size_t c = 0; c < intra.size(); ++c) {
        double frac = strength[c] / (2.0 * total);
        q += intra[c] / total - resolution * frac * frac;
    }
    return q;
}

namespace detail {

/// Working multigraph for Louvain aggregation; self-loops allowed.
struct LouvainGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;  // neighbors, no self
    std::vector<double> self_loop;                         // counted once
    std::vector<double> strength;                          // includes 2*self
    double total_weight = 0.0;                             // edges once + selfs once

    std::size_t n() const { return adj.size(); }
};

inline LouvainGraph to_louvain_graph(const Graph& g) {
    LouvainGraph lg;
    lg.adj.resize(g.n());
    lg.self_loop.assign(g.n(), 0.0);
    lg.strength.assign(g.n(), 0.0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        lg.adj[i].assign(g.neighbors(static_cast<int>(i)).begin(), g.neighbors(static_cast<int>(i)).end());
        lg.strength[i] = g.strength_at(static_cast<int>(i));
    }
    lg.total_weight = g.total_weight();
    return lg;
}

/// One local-moving phase; returns the node-to-community map (renumbered
/// contiguously by first appearance) and whether anything moved.
inline bool louvain_phase(const LouvainGraph& lg, double resolution, double tolerance, std::mt19937& rng,
                          std::vector<int>& community_of) {
    std::size_t n = lg.n();
    community_of.resize(n);
    std::iota(community_of.begin(), community_of.end(), 0);
    std::vector<double> community_strength = lg.strength;
    double two_w = 2.0 * lg.total_weight;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    bool any_move = false;
    bool moved = true;
    std::unordered_map<int, double> weight_to;
    while (moved) {
        moved = false;
        for (int u : order) {
            auto ui = static_cast<std::size_t>(u);
            int current = community_of[ui];
            weight_to.clear();
            weight_to[current];  // consider staying even without links to it
            for (const auto& [v, w] : lg.adj[ui]) weight_to[community_of[static_cast<std::size_t>(v)]] += w;

            community_strength[static_cast<std::size_t>(current)] -= lg.strength[ui];
            double best_gain = weight_to[current] -
                               resolution * community_strength[static_cast<std::size_t>(current)] * lg.strength[ui] / two_w;
            int best_comm = current;
            // deterministic scan order over candidate communities
            std::vector<int> candidates;
            candidates.reserve(weight_to.size());
            for (const auto& [c, _] : weight_to) candidates.push_back(c);
            std::sort(candidates.begin(), candidates.end());
            for (int c : candidates) {
                if (c == current) continue;
                double gain = weight_to[c] -
                              resolution * community_strength[static_cast<std::size_t>(c)] * lg.strength[ui] / two_w;
                if (gain > best_gain + tolerance) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            community_strength[static_cast<std::size_t>(best_comm)] += lg.strength[ui];
            if (best_comm != current) {
                community_of[ui] = best_comm;
                moved = true;
                any_move = true;
            }
        }
    }

    // renumber communities contiguously in node order
    std::unordered_map<int, int> renumber;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = renumber.emplace(community_of[i], static_cast<int>(renumber.size()));
        community_of[i] = it->second;
    }
    return any_move;
}

inline LouvainGraph aggregate(const LouvainGraph& lg, const std::vector<int>& community_of, int n_comms) {
    LouvainGraph out;
    out.adj.resize(static_cast<std::size_t>(n_comms));
    out.self_loop.assign(static_cast<std::size_t>(n_comms), 0.0);
    out.strength.assign(static_cast<std::size_t>(n_comms), 0.0);
    out.total_weight = lg.total_weight;
    std::map<std::pair<int, int>, double> between;
    for (std::size_t u = 0; u < lg.n(); ++u) {
        int cu = community_of[u];
        out.self_loop[static_cast<std::size_t>(cu)] += lg.self_loop[u];
        for (const auto& [v, w] : lg.adj[u]) {
            int cv = community_of[static_cast<std::size_t>(v)];
            if (cu == cv) {
                if (static_cast<std::size_t>(v) > u) out.self_loop[static_cast<std::size_t>(cu)] += w;
            } else if (cu < cv) {
                between[{cu, cv}] += w;
            }
        }
    }
    for (const auto& [key, w] : between) {
        out.adj[static_cast<std::size_t>(key.first)].emplace_back(key.second, w);
        out.adj[static_cast<std::size_t>(key.second)].emplace_back(key.first, w);
    }
    for (auto& nbrs : out.adj) std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t c = 0; c < out.adj.size(); ++c) {
        double s = 2.0 * out.self_loop[c];
        for (const auto& [_, w] : out.adj[c]) s += w;
        out.strength[c] = s;
    }
    return out;
}

}  // namespace detail

/// Two-phase Louvain modularity optimization: seeded local moves, then
/// aggregation, repeated until no gain above the tolerance. `phase_trace`,
/// when given, records Q over the original graph after every phase.
inline Partition louvain(const Graph& g, unsigned seed, double resolution = 1.0,
                         std::vector<double>* phase_trace = nullptr) {
    if (g.m() == 0) throw UndefinedMetricError("community detection undefined for an edgeless graph");
    if (resolution <= 0) throw InfeasibleError("resolution must be positive");
    constexpr double kTolerance = 1e-10;

    std::mt19937 rng(seed);
    detail::LouvainGraph lg = detail::to_louvain_graph(g);
    std::vector<int> node_to_comm(g.n());
    std::iota(node_to_comm.begin(), node_to_comm.end(), 0);

    while (true) {
        std::vector<int> phase_comm;
        bool moved = detail::louvain_phase(lg, resolution, kTolerance, rng, phase_comm);
        int n_comms = *std::max_element(phase_comm.begin(), phase_comm.end()) + 1;
        for (auto& c : node_to_comm) c = phase_comm[static_cast<std::size_t>(c)];
        if (phase_trace) {
            std::map<NodeId, int> flat;
            for (std::size_t i = 0; i < g.n(); ++i) flat[g.id_of(static_cast<int>(i))] = node_to_comm[i];
            phase_trace->push_back(modularity(g, flat, 1.0));
        }
        if (!moved || n_comms == static_cast<int>(lg.n())) break;
        lg = detail::aggregate(lg, phase_comm, n_comms);
    }

    // canonical ids: decreasing size, then lexicographically smallest member
    std::map<int, std::vector<NodeId>> groups;
    for (std::size_t i = 0; i < g.n(); ++i) groups[node_to_comm[i]].push_back(g.id_of(static_cast<int>(i)));
    std::vector<std::vector<NodeId>> comms;
    comms.reserve(groups.size());
    for (auto& [_, members] : groups) comms.push_back(std::move(members));
    comms = detail::order_communities(std::move(comms));

    Partition part;
    part.community_count = static_cast<int>(comms.size());
    for (std::size_t c = 0; c < comms.size(); ++c)
        for (const auto& id : comms[c]) part.assignment[id] = static_cast<int>(c);
    part.modularity = modularity(g, part.assignment, 1.0);
    return part;
}

/// Best of `runs` seeded runs (seed, seed+1, ...); highest Q wins, first on ties.
inline Partition louvain_best_of(const Graph& g, unsigned seed, unsigned runs, double resolution = 1.0) {
    if (runs == 0) throw InfeasibleError("runs must be >= 1");
    Partition best;
    bool have = false;
    for (unsigned r = 0; r < runs; ++r) {
        Partition p = louvain(g, seed + r, resolution);
        if (!have || p.modularity > best.modularity) {
            best = std::move(p);
            have = true;
        }
    }
    return best;
}

}  // namespace cocite
