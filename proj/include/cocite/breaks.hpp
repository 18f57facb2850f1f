#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "cocite/centrality.hpp"
#include "cocite/error.hpp"
#include "cocite/graph.hpp"

namespace cocite {

/// Natural-breaks classification of one-dimensional values into contiguous
/// classes with minimal total within-class squared deviation.
struct BreaksClassification {
    int n_classes = 1;
    std::vector<double> boundaries;  // class maxima, ascending, n_classes-1 entries
    std::vector<int> classes;        // class index per input value, input order
    double gvf = 1.0;                // goodness of variance fit

    int class_of(double v) const {
        for (std::size_t i = 0; i < boundaries.size(); ++i)
            if (v <= boundaries[i]) return static_cast<int>(i);
        return n_classes - 1;
    }
};

namespace detail {

struct JenksPrefix {
    std::vector<double> sum, sumsq;   // over the sorted full value list
    std::vector<std::size_t> start, end;  // run of each distinct value in that list
    std::vector<double> distinct;

    // SSE of the full-array span covering distinct values [a..b]
    double sse(std::size_t a, std::size_t b) const {
        std::size_t lo = start[a], hi = end[b];
        double n = static_cast<double>(hi - lo + 1);
        double s = sum[hi + 1] - sum[lo];
        double ss = sumsq[hi + 1] - sumsq[lo];
        return std::max(0.0, ss - s * s / n);
    }
};

inline JenksPrefix jenks_prefix(std::vector<double> sorted_values) {
    JenksPrefix p;
    p.sum.assign(1, 0.0);
    p.sumsq.assign(1, 0.0);
    for (double v : sorted_values) {
        p.sum.push_back(p.sum.back() + v);
        p.sumsq.push_back(p.sumsq.back() + v * v);
        if (p.distinct.empty() || p.distinct.back() != v) {
            p.distinct.push_back(v);
            p.start.push_back(p.sum.size() - 2);
        }
        p.end.resize(p.distinct.size());
        p.end.back() = p.sum.size() - 2;
    }
    return p;
}

}  // namespace detail

/// Exact optimum over contiguous partitions of the distinct sorted values
/// (splitting a run of equal values is never strictly better). Ties resolve
/// to the earliest boundaries: the lexicographically smallest cut tuple.
inline BreaksClassification jenks_breaks(const std::vector<double>& values, int n_classes) {
    if (values.empty()) throw InfeasibleError("natural breaks needs at least one value");
    if (n_classes < 1) throw InfeasibleError("n_classes must be >= 1");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    auto p = detail::jenks_prefix(std::move(sorted));
    std::size_t d = p.distinct.size();
    if (static_cast<std::size_t>(n_classes) > d)
        throw InfeasibleError("n_classes (" + std::to_string(n_classes) + ") exceeds distinct value count (" +
                              std::to_string(d) + ")");

    std::size_t k = static_cast<std::size_t>(n_classes);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // D[j][i]: minimal right-folded cost of splitting distinct[i..d-1] into j classes
    std::vector<std::vector<double>> D(k + 1, std::vector<double>(d + 1, kInf));
    for (std::size_t i = 0; i < d; ++i) D[1][i] = p.sse(i, d - 1);
    for (std::size_t j = 2; j <= k; ++j) {
        for (std::size_t i = 0; i + j <= d; ++i) {
            double best = kInf;
            for (std::size_t e = i; e + j <= d; ++e) {  // first class = distinct[i..e]
                double cost = p.sse(i, e) + D[j - 1][e + 1];
                if (cost < best) best = cost;
            }
            D[j][i] = best;
        }
    }

    // forward reconstruction, earliest boundary on exact ties
    BreaksClassification out;
    out.n_classes = n_classes;
    std::size_t i = 0;
    for (std::size_t j = k; j >= 2; --j) {
        for (std::size_t e = i; e + j <= d; ++e) {
            if (p.sse(i, e) + D[j - 1][e + 1] == D[j][i]) {
                out.boundaries.push_back(p.distinct[e]);
                i = e + 1;
                break;
            }
        }
    }
    double total = D[k][0];
    double sst = p.sse(0, d - 1);
    out.gvf = sst == 0.0 ? 1.0 : 1.0 - total / sst;
    out.classes.reserve(values.size());
    for (double v : values) out.classes.push_back(out.class_of(v));
    return out;
}

/// Ids whose value lands in the highest natural-breaks class.
inline std::set<NodeId> top_class(const std::map<NodeId, double>& values, int n_classes) {
    std::vector<double> vals;
    vals.reserve(values.size());
    for (const auto& [_, v] : values) vals.push_back(v);
    auto breaks = jenks_breaks(vals, n_classes);
    std::set<NodeId> out;
    for (const auto& [id, v] : values)
        if (breaks.class_of(v) == n_classes - 1) out.insert(id);
    return out;
}

struct HubClasses {
    std::set<NodeId> high_degree;
    std::set<NodeId> high_betweenness;
    std::set<NodeId> high_both;
};

/// Top natural-breaks class by degree, by normalized betweenness, and their
/// intersection. A precomputed betweenness table may be supplied.
inline HubClasses classify_hubs(const Graph& g, int n_classes,
                                const CentralityTable* betweenness = nullptr) {
    HubClasses out;
    out.high_degree = top_class(degree_table(g).values, n_classes);
    CentralityTable local;
    if (!betweenness) {
        local = betweenness_all(g, /*normalized=*/true);
        betweenness = &local;
    }
    out.high_betweenness = top_class(betweenness->values, n_classes);
    std::set_intersection(out.high_degree.begin(), out.high_degree.end(), out.high_betweenness.begin(),
                          out.high_betweenness.end(), std::inserter(out.high_both, out.high_both.begin()));
    return out;
}

}  // namespace cocite
