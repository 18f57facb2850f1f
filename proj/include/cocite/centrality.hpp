#pragma once

#include <atomic>
#include <cstdlib>
#include <map>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "cocite/graph.hpp"

namespace cocite {

enum class CentralityMetric { degree, strength, betweenness };

inline const char* to_string(CentralityMetric m) {
    switch (m) {
        case CentralityMetric::degree: return "degree";
        case CentralityMetric::strength: return "strength";
        case CentralityMetric::betweenness: return "betweenness";
    }
    return "?";
}

struct CentralityTable {
    CentralityMetric metric = CentralityMetric::degree;
    std::map<NodeId, double> values;
    bool normalized = false;
};

/// Worker cap from COCITE_THREADS (>= 1); hardware concurrency otherwise.
inline unsigned worker_count() {
    if (const char* env = std::getenv("COCITE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

/// One Brandes source pass: BFS shortest-path counting, then dependency
/// accumulation in reverse BFS order. Adds into `acc`.
inline void brandes_source_pass(const Graph& g, int s, std::vector<double>& acc, std::vector<int>& dist,
                                std::vector<double>& sigma, std::vector<double>& delta,
                                std::vector<std::vector<int>>& pred, std::vector<int>& order) {
    std::size_t n = g.n();
    dist.assign(n, -1);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    for (auto& p : pred) p.clear();
    order.clear();

    dist[static_cast<std::size_t>(s)] = 0;
    sigma[static_cast<std::size_t>(s)] = 1.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (const auto& [w, _] : g.neighbors(v)) {
            auto wi = static_cast<std::size_t>(w);
            if (dist[wi] < 0) {
                dist[wi] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(w);
            }
            if (dist[wi] == dist[static_cast<std::size_t>(v)] + 1) {
                sigma[wi] += sigma[static_cast<std::size_t>(v)];
                pred[wi].push_back(v);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int w = *it;
        for (int v : pred[static_cast<std::size_t>(w)]) {
            delta[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(v)] /
                                                  sigma[static_cast<std::size_t>(w)] *
                                                  (1.0 + delta[static_cast<std::size_t>(w)]);
        }
        if (w != s) acc[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
}

}  // namespace detail

/// Betweenness for every node over unweighted shortest paths (Brandes).
/// Undirected pair sums are halved; normalization divides by (n-1)(n-2)/2
/// over the whole graph. Source passes run in fixed-size blocks so the
/// floating-point reduction order is independent of the worker count.
inline CentralityTable betweenness_all(const Graph& g, bool normalized, unsigned threads = 0) {
    std::size_t n = g.n();
    if (normalized && n < 3)
        throw UndefinedMetricError("normalized betweenness undefined for n < 3");
    if (threads == 0) threads = worker_count();

    constexpr std::size_t kBlock = 32;
    std::size_t n_blocks = n == 0 ? 0 : (n + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> partials(n_blocks);

    std::atomic<std::size_t> next_block{0};
    auto work = [&]() {
        std::vector<int> dist, order;
        std::vector<double> sigma, delta;
        std::vector<std::vector<int>> pred(n);
        while (true) {
            std::size_t blk = next_block.fetch_add(1);
            if (blk >= n_blocks) break;
            auto& acc = partials[blk];
            acc.assign(n, 0.0);
            std::size_t lo = blk * kBlock;
            std::size_t hi = std::min(n, lo + kBlock);
            for (std::size_t s = lo; s < hi; ++s)
                detail::brandes_source_pass(g, static_cast<int>(s), acc, dist, sigma, delta, pred, order);
        }
    };

    unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n_blocks, 1)));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<double> total(n, 0.0);
    for (const auto& part : partials)  // fixed block order keeps sums deterministic
        for (std::size_t i = 0; i < n; ++i) total[i] += part[i];

    double scale = 0.5;
    if (normalized) {
        double nn = static_cast<double>(n);
        scale = 1.0 / ((nn - 1.0) * (nn - 2.0));
    }
    CentralityTable table;
    table.metric = CentralityMetric::betweenness;
    table.normalized = normalized;
    for (std::size_t i = 0; i < n; ++i) table.values[g.id_of(static_cast<int>(i))] = total[i] * scale;
    return table;
}

inline CentralityTable degree_table(const Graph& g) {
    CentralityTable table;
    table.metric = CentralityMetric::degree;
    for (std::size_t i = 0; i < g.n(); ++i)
        table.values[g.id_of(static_cast<int>(i))] = static_cast<double>(g.degree_at(static_cast<int>(i)));
    return table;
}

inline CentralityTable strength_table(const Graph& g) {
    CentralityTable table;
    table.metric = CentralityMetric::strength;
    for (std::size_t i = 0; i < g.n(); ++i)
        table.values[g.id_of(static_cast<int>(i))] = g.strength_at(static_cast<int>(i));
    return table;
}

}  // namespace cocite
