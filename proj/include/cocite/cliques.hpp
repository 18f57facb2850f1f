#pragma once

#include <algorithm>
#include <vector>

#include "cocite/graph.hpp"

namespace cocite {

namespace detail {

/// Bron-Kerbosch with pivoting over sorted index sets.
class MaximalCliqueFinder {
public:
    explicit MaximalCliqueFinder(const Graph& g) : g_(g) {
        adj_.resize(g.n());
        for (std::size_t i = 0; i < g.n(); ++i)
            for (const auto& [v, _] : g.neighbors(static_cast<int>(i))) adj_[i].push_back(v);
    }

    std::vector<std::vector<int>> run() {
        std::vector<int> r, p, x;
        p.resize(g_.n());
        for (std::size_t i = 0; i < g_.n(); ++i) p[i] = static_cast<int>(i);
        expand(r, p, x);
        return std::move(cliques_);
    }

private:
    std::vector<int> intersect(const std::vector<int>& sorted_set, int v) const {
        std::vector<int> out;
        const auto& nbrs = adj_[static_cast<std::size_t>(v)];
        std::set_intersection(sorted_set.begin(), sorted_set.end(), nbrs.begin(), nbrs.end(),
                              std::back_inserter(out));
        return out;
    }

    void expand(std::vector<int>& r, std::vector<int> p, std::vector<int> x) {
        if (p.empty() && x.empty()) {
            cliques_.push_back(r);
            return;
        }
        // pivot: vertex of P ∪ X with the most neighbors in P
        int pivot = -1;
        std::size_t best = 0;
        for (const auto* side : {&p, &x}) {
            for (int v : *side) {
                std::size_t cnt = intersect(p, v).size();
                if (pivot == -1 || cnt > best) {
                    pivot = v;
                    best = cnt;
                }
            }
        }
        std::vector<int> candidates;
        const auto& pivot_nbrs = adj_[static_cast<std::size_t>(pivot)];
        std::set_difference(p.begin(), p.end(), pivot_nbrs.begin(), pivot_nbrs.end(),
                            std::back_inserter(candidates));
        for (int v : candidates) {
            r.push_back(v);
            expand(r, intersect(p, v), intersect(x, v));
            r.pop_back();
            p.erase(std::lower_bound(p.begin(), p.end(), v));
            x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
    }

    const Graph& g_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> cliques_;
};

}  // namespace detail

/// All maximal cliques as node indices; each clique sorted, list sorted.
inline std::vector<std::vector<int>> maximal_clique_indices(const Graph& g) {
    auto cliques = detail::MaximalCliqueFinder(g).run();
    for (auto& c : cliques) std::sort(c.begin(), c.end());
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

/// All maximal cliques by node id; ids sort the same way as indices.
inline std::vector<std::vector<NodeId>> maximal_cliques(const Graph& g) {
    auto idx = maximal_clique_indices(g);
    std::vector<std::vector<NodeId>> out;
    out.reserve(idx.size());
    for (const auto& c : idx) {
        std::vector<NodeId> ids;
        ids.reserve(c.size());
        for (int v : c) ids.push_back(g.id_of(v));
        out.push_back(std::move(ids));
    }
    return out;
}

}  // namespace cocite
