#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cocite/error.hpp"

namespace cocite {

using NodeId = std::string;

/// Simple undirected weighted graph. Nodes are opaque string ids; internally
/// they are indexed in lexicographic id order, so index order is deterministic.
/// No self-loops, no parallel edges, weights strictly positive.
class Graph {
public:
    class Builder {
    public:
        void add_node(const NodeId& id) { nodes_.push_back(id); }

        /// Repeated (u,v) insertions accumulate weight.
        void add_edge(const NodeId& u, const NodeId& v, double w = 1.0) {
            if (u == v) throw ValidationError("self-loop on node '" + u + "'");
            if (w <= 0) throw ValidationError("non-positive edge weight on (" + u + ", " + v + ")");
            nodes_.push_back(u);
            nodes_.push_back(v);
            auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
            weights_[key] += w;
        }

        Graph build() && {
            Graph g;
            std::sort(nodes_.begin(), nodes_.end());
            nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
            g.ids_ = std::move(nodes_);
            g.index_.reserve(g.ids_.size());
            for (std::size_t i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = static_cast<int>(i);
            g.adj_.resize(g.ids_.size());
            for (const auto& [key, w] : weights_) {
                int a = g.index_.at(key.first);
                int b = g.index_.at(key.second);
                g.adj_[static_cast<std::size_t>(a)].emplace_back(b, w);
                g.adj_[static_cast<std::size_t>(b)].emplace_back(a, w);
            }
            for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
            g.m_ = weights_.size();
            return g;
        }

    private:
        std::vector<NodeId> nodes_;
        std::map<std::pair<NodeId, NodeId>, double> weights_;
    };

    std::size_t n() const { return ids_.size(); }
    std::size_t m() const { return m_; }

    const std::vector<NodeId>& nodes() const { return ids_; }

    bool has_node(const NodeId& id) const { return index_.count(id) != 0; }

    int index_of(const NodeId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw LookupError("unknown node '" + id + "'");
        return it->second;
    }

    const NodeId& id_of(int i) const { return ids_[static_cast<std::size_t>(i)]; }

    const std::vector<std::pair<int, double>>& neighbors(int i) const {
        return adj_[static_cast<std::size_t>(i)];
    }

    std::size_t degree_at(int i) const { return adj_[static_cast<std::size_t>(i)].size(); }

    double strength_at(int i) const {
        double s = 0;
        for (const auto& [_, w] : adj_[static_cast<std::size_t>(i)]) s += w;
        return s;
    }

    std::size_t degree(const NodeId& id) const { return degree_at(index_of(id)); }
    double strength(const NodeId& id) const { return strength_at(index_of(id)); }

    bool has_edge(int a, int b) const {
        const auto& nbrs = adj_[static_cast<std::size_t>(a)];
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(b, 0.0));
        return it != nbrs.end() && it->first == b;
    }

    /// Edges as (u, v, w) with u < v, in index order.
    std::vector<std::tuple<int, int, double>> edges() const {
        std::vector<std::tuple<int, int, double>> out;
        out.reserve(m_);
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for (const auto& [v, w] : adj_[u])
                if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v, w);
        return out;
    }

    double total_weight() const {
        double s = 0;
        for (const auto& nbrs : adj_)
            for (const auto& [_, w] : nbrs) s += w;
        return s / 2.0;
    }

private:
    std::vector<NodeId> ids_;
    std::unordered_map<NodeId, int> index_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::size_t m_ = 0;
};

/// Two-mode unweighted graph; left and right id sets must be disjoint.
class BipartiteGraph {
public:
    class Builder {
    public:
        void add_left(const NodeId& id) { left_.push_back(id); }
        void add_right(const NodeId& id) { right_.push_back(id); }
        void add_edge(const NodeId& l, const NodeId& r) {
            left_.push_back(l);
            right_.push_back(r);
            edges_.emplace_back(l, r);
        }

        BipartiteGraph build() && {
            BipartiteGraph g;
            auto dedup = [](std::vector<NodeId>& v) {
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
            };
            dedup(left_);
            dedup(right_);
            for (const auto& id : left_)
                if (std::binary_search(right_.begin(), right_.end(), id))
                    throw ValidationError("node '" + id + "' appears on both sides of a bipartite graph");
            g.left_ = std::move(left_);
            g.right_ = std::move(right_);
            for (std::size_t i = 0; i < g.left_.size(); ++i) g.lidx_[g.left_[i]] = static_cast<int>(i);
            for (std::size_t i = 0; i < g.right_.size(); ++i) g.ridx_[g.right_[i]] = static_cast<int>(i);
            std::sort(edges_.begin(), edges_.end());
            edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
            g.adj_left_.resize(g.left_.size());
            g.adj_right_.resize(g.right_.size());
            for (const auto& [l, r] : edges_) {
                int li = g.lidx_.at(l), ri = g.ridx_.at(r);
                g.adj_left_[static_cast<std::size_t>(li)].push_back(ri);
                g.adj_right_[static_cast<std::size_t>(ri)].push_back(li);
            }
            g.m_ = edges_.size();
            return g;
        }

    private:
        std::vector<NodeId> left_, right_;
        std::vector<std::pair<NodeId, NodeId>> edges_;
    };

    const std::vector<NodeId>& left() const { return left_; }
    const std::vector<NodeId>& right() const { return right_; }
    std::size_t m() const { return m_; }

    const std::vector<int>& right_neighbors_of_left(int li) const {
        return adj_left_[static_cast<std::size_t>(li)];
    }
    const std::vector<int>& left_neighbors_of_right(int ri) const {
        return adj_right_[static_cast<std::size_t>(ri)];
    }

    int left_index(const NodeId& id) const {
        auto it = lidx_.find(id);
        if (it == lidx_.end()) throw LookupError("unknown left node '" + id + "'");
        return it->second;
    }
    int right_index(const NodeId& id) const {
        auto it = ridx_.find(id);
        if (it == ridx_.end()) throw LookupError("unknown right node '" + id + "'");
        return it->second;
    }

    /// Number of left nodes attached to a right node (a dataset's citation count).
    std::size_t right_degree(const NodeId& id) const {
        return adj_right_[static_cast<std::size_t>(right_index(id))].size();
    }

    std::vector<std::pair<NodeId, NodeId>> edge_list() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(m_);
        for (std::size_t li = 0; li < adj_left_.size(); ++li)
            for (int ri : adj_left_[li]) out.emplace_back(left_[li], right_[static_cast<std::size_t>(ri)]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<NodeId> left_, right_;
    std::unordered_map<NodeId, int> lidx_, ridx_;
    std::vector<std::vector<int>> adj_left_, adj_right_;
    std::size_t m_ = 0;
};

}  // namespace cocite
