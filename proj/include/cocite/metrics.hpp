#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cocite/graph.hpp"

namespace cocite {

namespace detail {

/// Component labels per node index via BFS; -1 never survives.
inline std::vector<int> component_labels(std::size_t n, const auto& neighbors_of) {
    std::vector<int> label(n, -1);
    int next = 0;
    std::vector<std::size_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        queue.assign(1, s);
        while (!queue.empty()) {
            std::size_t u = queue.back();
            queue.pop_back();
            for (int v : neighbors_of(u)) {
                if (label[static_cast<std::size_t>(v)] == -1) {
                    label[static_cast<std::size_t>(v)] = next;
                    queue.push_back(static_cast<std::size_t>(v));
                }
            }
        }
        ++next;
    }
    return label;
}

inline std::vector<std::vector<NodeId>> order_components(std::vector<std::vector<NodeId>> comps) {
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return comps;
}

}  // namespace detail

/// Maximal connected node sets, ordered by decreasing size then by
/// lexicographically smallest member.
inline std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    std::vector<int> nbr_buf;
    auto labels = detail::component_labels(g.n(), [&](std::size_t u) -> const std::vector<int>& {
        nbr_buf.clear();
        for (const auto& [v, _] : g.neighbors(static_cast<int>(u))) nbr_buf.push_back(v);
        return nbr_buf;
    });
    int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::vector<NodeId>> comps(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < labels.size(); ++i)
        comps[static_cast<std::size_t>(labels[i])].push_back(g.id_of(static_cast<int>(i)));
    return detail::order_components(std::move(comps));
}

/// Components of the union graph of a two-mode network.
inline std::vector<std::vector<NodeId>> connected_components(const BipartiteGraph& b) {
    std::size_t nl = b.left().size(), n = nl + b.right().size();
    std::vector<int> nbr_buf;
    auto labels = detail::component_labels(n, [&](std::size_t u) -> const std::vector<int>& {
        nbr_buf.clear();
        if (u < nl) {
            for (int r : b.right_neighbors_of_left(static_cast<int>(u)))
                nbr_buf.push_back(static_cast<int>(nl) + r);
        } else {
            for (int l : b.left_neighbors_of_right(static_cast<int>(u - nl))) nbr_buf.push_back(l);
        }
        return nbr_buf;
    });
    int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::vector<NodeId>> comps(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const NodeId& id = i < nl ? b.left()[i] : b.right()[i - nl];
        comps[static_cast<std::size_t>(labels[i])].push_back(id);
    }
    return detail::order_components(std::move(comps));
}

/// 2m / n(n-1); weights ignored.
inline double density(const Graph& g) {
    if (g.n() < 2) throw UndefinedMetricError("density undefined for n < 2");
    double n = static_cast<double>(g.n());
    return 2.0 * static_cast<double>(g.m()) / (n * (n - 1.0));
}

/// m / (|left| * |right|).
inline double density(const BipartiteGraph& b) {
    if (b.left().empty() || b.right().empty())
        throw UndefinedMetricError("bipartite density undefined with an empty side");
    return static_cast<double>(b.m()) /
           (static_cast<double>(b.left().size()) * static_cast<double>(b.right().size()));
}

/// Unipartite density of the two-mode union graph, 2m / n(n-1) over L+R nodes.
inline double density_union(const BipartiteGraph& b) {
    double n = static_cast<double>(b.left().size() + b.right().size());
    if (n < 2) throw UndefinedMetricError("density undefined for n < 2");
    return 2.0 * static_cast<double>(b.m()) / (n * (n - 1.0));
}

/// Global clustering: 3 * triangles / connected triples; weights ignored.
inline double transitivity(const Graph& g) {
    double triples = 0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        double d = static_cast<double>(g.degree_at(static_cast<int>(i)));
        triples += d * (d - 1.0) / 2.0;
    }
    if (triples == 0) throw UndefinedMetricError("transitivity undefined without connected triples");
    // count each triangle once via ordered neighbor intersections
    double triangles = 0;
    for (const auto& [u, v, w] : g.edges()) {
        static_cast<void>(w);
        const auto& nu = g.neighbors(u);
        const auto& nv = g.neighbors(v);
        std::size_t i = 0, j = 0;
        while (i < nu.size() && j < nv.size()) {
            if (nu[i].first == nv[j].first) {
                if (nu[i].first > v) triangles += 1.0;  // u < v < common neighbor
                ++i;
                ++j;
            } else if (nu[i].first < nv[j].first) {
                ++i;
            } else {
                ++j;
            }
        }
    }
    return 3.0 * triangles / triples;
}

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge; unweighted degrees.
inline double degree_assortativity(const Graph& g) {
    if (g.m() < 2) throw UndefinedMetricError("degree assortativity undefined with fewer than 2 edges");
    double sx = 0, sxx = 0, sxy = 0;
    double samples = 2.0 * static_cast<double>(g.m());
    for (const auto& [u, v, w] : g.edges()) {
        static_cast<void>(w);
        double du = static_cast<double>(g.degree_at(u));
        double dv = static_cast<double>(g.degree_at(v));
        sx += du + dv;       // both orientations; x and y totals coincide
        sxx += du * du + dv * dv;
        sxy += 2.0 * du * dv;
    }
    double mean = sx / samples;
    double var = sxx / samples - mean * mean;
    double cov = sxy / samples - mean * mean;
    if (var <= 1e-15 * std::max(1.0, sxx / samples))
        throw UndefinedMetricError("degree assortativity undefined for degree-regular graphs");
    return cov / var;
}

inline double mean_degree(const Graph& g) {
    if (g.n() == 0) return 0.0;
    return 2.0 * static_cast<double>(g.m()) / static_cast<double>(g.n());
}

}  // namespace cocite
