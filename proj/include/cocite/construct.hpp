#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cocite/corpus.hpp"
#include "cocite/graph.hpp"

namespace cocite {

/// Citation network B: publications x datasets. Multiple studies of one
/// series cited by the same publication collapse to a single edge.
inline BipartiteGraph build_citation_network(const std::vector<CitationLink>& links, const DatasetIndex& datasets) {
    BipartiteGraph::Builder b;
    for (const auto& link : links) {
        auto it = datasets.study_to_dataset.find(link.study_id);
        if (it == datasets.study_to_dataset.end())
            throw ValidationError("study '" + link.study_id + "' has no dataset mapping");
        b.add_edge(link.publication_id, it->second);
    }
    return std::move(b).build();
}

/// One-mode projection of the right side: weight(u, v) = number of left
/// nodes adjacent to both. Isolated right nodes are kept.
inline Graph project_cocitation(const BipartiteGraph& b) {
    Graph::Builder g;
    for (const auto& id : b.right()) g.add_node(id);
    std::map<std::pair<int, int>, double> w;
    for (std::size_t li = 0; li < b.left().size(); ++li) {
        const auto& nbrs = b.right_neighbors_of_left(static_cast<int>(li));
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                int a = nbrs[i], c = nbrs[j];
                if (a > c) std::swap(a, c);
                w[{a, c}] += 1.0;
            }
    }
    for (const auto& [key, weight] : w)
        g.add_edge(b.right()[static_cast<std::size_t>(key.first)], b.right()[static_cast<std::size_t>(key.second)],
                   weight);
    return std::move(g).build();
}

/// B': publications x field codes; an edge per tagged field. Publications with
/// no fields stay as isolated left nodes.
inline BipartiteGraph build_field_network(const std::vector<PublicationRecord>& publications) {
    BipartiteGraph::Builder b;
    for (const auto& p : publications) {
        b.add_left(p.publication_id);
        for (const auto& code : p.for_codes) b.add_edge(p.publication_id, code);
    }
    return std::move(b).build();
}

/// Field co-citation network F: weight(f, g) sums, over publications tagged
/// with both fields, the number of distinct studies each publication cites.
/// Links are taken at study level (no series grouping).
inline Graph project_fields(const std::vector<PublicationRecord>& publications,
                            const std::vector<CitationLink>& links) {
    std::unordered_map<std::string, std::set<std::string>> cited;
    for (const auto& link : links) cited[link.publication_id].insert(link.study_id);

    Graph::Builder g;
    std::map<std::pair<std::string, std::string>, double> w;
    for (const auto& p : publications) {
        std::vector<std::string> fields = p.for_codes;
        std::sort(fields.begin(), fields.end());
        fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
        for (const auto& f : fields) g.add_node(f);
        auto it = cited.find(p.publication_id);
        if (it == cited.end() || fields.size() < 2) continue;
        double n_studies = static_cast<double>(it->second.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            for (std::size_t j = i + 1; j < fields.size(); ++j) w[{fields[i], fields[j]}] += n_studies;
    }
    for (const auto& [key, weight] : w) g.add_edge(key.first, key.second, weight);
    return std::move(g).build();
}

/// Drop edges with weight < min_weight; optionally drop nodes isolated after
/// the removal. Monotone in min_weight and idempotent.
inline Graph threshold_edges(const Graph& g, double min_weight, bool drop_isolated) {
    if (min_weight < 0) throw InfeasibleError("min_weight must be >= 0");
    Graph::Builder out;
    std::vector<bool> keep_node(g.n(), !drop_isolated);
    for (const auto& [u, v, w] : g.edges()) {
        if (w < min_weight) continue;
        out.add_edge(g.id_of(u), g.id_of(v), w);
        keep_node[static_cast<std::size_t>(u)] = keep_node[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t i = 0; i < g.n(); ++i)
        if (keep_node[i]) out.add_node(g.id_of(static_cast<int>(i)));
    return std::move(out).build();
}

}  // namespace cocite
