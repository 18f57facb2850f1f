#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cocite/breaks.hpp"
#include "cocite/centrality.hpp"
#include "cocite/community.hpp"
#include "cocite/corpus.hpp"
#include "cocite/graph.hpp"
#include "cocite/metrics.hpp"

namespace cocite {

struct CommunityLabel {
    int community_index = 0;
    std::vector<std::string> terms;  // up to 3, frequency then alphabetical
    std::string label;               // terms joined with ", ", or "(unlabeled)"
};

/// Label each community with the three most frequent subject terms over its
/// member datasets' aggregated term multisets; frequency ties alphabetical.
inline std::vector<CommunityLabel> label_communities(const OverlappingCover& cover, const DatasetIndex& datasets) {
    std::vector<CommunityLabel> out;
    out.reserve(cover.communities.size());
    for (std::size_t i = 0; i < cover.communities.size(); ++i) {
        std::map<std::string, std::size_t> freq;
        for (const auto& member : cover.communities[i]) {
            const DatasetNode& node = datasets.at(member);
            for (const auto& [term, count] : node.subject_terms) freq[term] += count;
        }
        std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        CommunityLabel label;
        label.community_index = static_cast<int>(i);
        for (std::size_t t = 0; t < ranked.size() && t < 3; ++t) label.terms.push_back(ranked[t].first);
        if (label.terms.empty()) {
            label.label = "(unlabeled)";
        } else {
            for (std::size_t t = 0; t < label.terms.size(); ++t) {
                if (t) label.label += ", ";
                label.label += label.terms[t];
            }
        }
        out.push_back(std::move(label));
    }
    return out;
}

struct MultiMembership {
    std::map<NodeId, std::size_t> counts;  // covered nodes only
    std::set<NodeId> at_least_two;
    std::set<NodeId> at_least_three;
};

inline MultiMembership multi_membership(const OverlappingCover& cover) {
    MultiMembership out;
    for (const auto& [node, comms] : cover.membership) {
        out.counts[node] = comms.size();
        if (comms.size() >= 2) out.at_least_two.insert(node);
        if (comms.size() >= 3) out.at_least_three.insert(node);
    }
    return out;
}

struct SubdivisionEvidence {
    int community_index = 0;
    bool is_component_isolated = false;
    double exclusivity_ratio = 0.0;  // intra weight / weight incident to members
    bool is_subdivision = false;     // default rule: component isolation
};

/// Exclusivity of every community plus the component-isolation flag; the
/// default subdivision rule is component isolation (ratio exactly 1).
inline std::vector<SubdivisionEvidence> identify_subdivisions(const Graph& g, const OverlappingCover& cover) {
    auto comps = connected_components(g);
    std::vector<int> comp_of(g.n(), -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (const auto& id : comps[c]) comp_of[static_cast<std::size_t>(g.index_of(id))] = static_cast<int>(c);

    std::vector<SubdivisionEvidence> out;
    out.reserve(cover.communities.size());
    for (std::size_t ci = 0; ci < cover.communities.size(); ++ci) {
        const auto& members = cover.communities[ci];
        std::unordered_set<int> member_idx;
        for (const auto& id : members) member_idx.insert(g.index_of(id));
        double internal = 0.0, incident = 0.0;
        for (const auto& [u, v, w] : g.edges()) {
            bool mu = member_idx.count(u) != 0, mv = member_idx.count(v) != 0;
            if (mu && mv) internal += w;
            if (mu || mv) incident += w;
        }
        SubdivisionEvidence ev;
        ev.community_index = static_cast<int>(ci);
        ev.exclusivity_ratio = incident > 0 ? internal / incident : 1.0;
        if (!members.empty()) {
            int comp = comp_of[static_cast<std::size_t>(g.index_of(members.front()))];
            ev.is_component_isolated = comps[static_cast<std::size_t>(comp)].size() == members.size() &&
                                       std::all_of(members.begin(), members.end(), [&](const NodeId& id) {
                                           return comp_of[static_cast<std::size_t>(g.index_of(id))] == comp;
                                       });
        }
        ev.is_subdivision = ev.is_component_isolated;
        out.push_back(ev);
    }
    return out;
}

struct CrossroadsEvidence {
    NodeId dataset;
    std::size_t membership_count = 0;
    std::size_t degree = 0;
    double betweenness = 0.0;
    bool in_high_both = false;
};

/// Crossroads = datasets in >= 2 overlapping communities, or jointly in the
/// top degree and betweenness classes.
inline std::vector<CrossroadsEvidence> identify_crossroads(const OverlappingCover& cover, const HubClasses& hubs,
                                                           const Graph& g,
                                                           const CentralityTable& betweenness) {
    std::set<NodeId> picked;
    MultiMembership multi = multi_membership(cover);
    picked.insert(multi.at_least_two.begin(), multi.at_least_two.end());
    picked.insert(hubs.high_both.begin(), hubs.high_both.end());

    std::vector<CrossroadsEvidence> out;
    out.reserve(picked.size());
    for (const auto& id : picked) {
        CrossroadsEvidence ev;
        ev.dataset = id;
        auto it = multi.counts.find(id);
        ev.membership_count = it == multi.counts.end() ? 0 : it->second;
        ev.degree = g.has_node(id) ? g.degree(id) : 0;
        auto bit = betweenness.values.find(id);
        ev.betweenness = bit == betweenness.values.end() ? 0.0 : bit->second;
        ev.in_high_both = hubs.high_both.count(id) != 0;
        out.push_back(std::move(ev));
    }
    return out;
}

struct CocitationHistogram {
    std::map<std::size_t, std::size_t> counts;  // distinct citing divisions -> datasets
    std::size_t untagged = 0;                   // datasets with no field-tagged citing publication
    double lambda_mle = 0.0;                    // mean of the counted distribution
};

/// Per study-level dataset, the number of distinct parent divisions across all
/// citing publications' field codes.
inline CocitationHistogram field_cocitation_histogram(const std::vector<CitationLink>& links,
                                                      const std::vector<PublicationRecord>& publications,
                                                      const Taxonomy& taxonomy) {
    std::unordered_map<std::string, const PublicationRecord*> pubs;
    for (const auto& p : publications) pubs[p.publication_id] = &p;
    std::map<std::string, std::set<std::string>> divisions_of_study;
    for (const auto& link : links) {
        auto& divs = divisions_of_study[link.study_id];
        auto it = pubs.find(link.publication_id);
        if (it == pubs.end()) continue;
        for (const auto& code : it->second->for_codes) divs.insert(taxonomy.parent_division(code).code);
    }
    CocitationHistogram hist;
    double total = 0.0, weighted = 0.0;
    for (const auto& [study, divs] : divisions_of_study) {
        if (divs.empty()) {
            ++hist.untagged;
        } else {
            ++hist.counts[divs.size()];
            total += 1.0;
            weighted += static_cast<double>(divs.size());
        }
    }
    hist.lambda_mle = total > 0 ? weighted / total : 0.0;
    return hist;
}

/// How many field communities co-cite each study-level dataset; datasets whose
/// citing publications carry no partitioned field land in the 0 bucket.
inline std::map<std::size_t, std::size_t> community_cocitation_spread(const std::vector<CitationLink>& links,
                                                                      const std::vector<PublicationRecord>& publications,
                                                                      const Partition& field_partition) {
    std::unordered_map<std::string, const PublicationRecord*> pubs;
    for (const auto& p : publications) pubs[p.publication_id] = &p;
    std::map<std::string, std::set<int>> communities_of_study;
    for (const auto& link : links) {
        auto& cs = communities_of_study[link.study_id];
        auto it = pubs.find(link.publication_id);
        if (it == pubs.end()) continue;
        for (const auto& code : it->second->for_codes) {
            auto ait = field_partition.assignment.find(code);
            if (ait != field_partition.assignment.end()) cs.insert(ait->second);
        }
    }
    std::map<std::size_t, std::size_t> spread;
    for (const auto& [study, cs] : communities_of_study) ++spread[cs.size()];
    return spread;
}

struct FieldCommunityReport {
    struct Community {
        int index = 0;
        std::vector<NodeId> members;                         // sorted
        std::vector<std::pair<std::string, std::size_t>> dominant_divisions;  // by count desc
        std::vector<std::pair<NodeId, double>> core;         // strength desc
        std::vector<std::pair<NodeId, double>> periphery;
    };
    std::vector<Community> communities;
};

/// Rank each field community's members by strength; top natural-breaks class
/// is the core, bottom class the periphery. Communities too small (or with
/// too few distinct strengths) for the requested class count report whole as
/// core.
inline FieldCommunityReport core_periphery(const Graph& f, const Partition& partition, int n_classes,
                                           const Taxonomy* taxonomy = nullptr) {
    if (n_classes < 1) throw InfeasibleError("n_classes must be >= 1");
    std::map<int, std::vector<NodeId>> groups;
    for (const auto& [id, c] : partition.assignment)
        if (f.has_node(id)) groups[c].push_back(id);

    FieldCommunityReport report;
    for (auto& [index, members] : groups) {
        std::sort(members.begin(), members.end());
        FieldCommunityReport::Community community;
        community.index = index;
        community.members = members;

        if (taxonomy) {
            std::map<std::string, std::size_t> divs;
            for (const auto& id : members)
                if (taxonomy->has(id)) ++divs[taxonomy->parent_division(id).name];
            community.dominant_divisions.assign(divs.begin(), divs.end());
            std::sort(community.dominant_divisions.begin(), community.dominant_divisions.end(),
                      [](const auto& a, const auto& b) {
                          if (a.second != b.second) return a.second > b.second;
                          return a.first < b.first;
                      });
        }

        std::map<NodeId, double> strengths;
        std::set<double> distinct;
        for (const auto& id : members) {
            double s = f.strength(id);
            strengths[id] = s;
            distinct.insert(s);
        }
        auto by_strength_desc = [&](std::vector<std::pair<NodeId, double>>& v) {
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
        };
        if (members.size() < static_cast<std::size_t>(n_classes) ||
            distinct.size() < static_cast<std::size_t>(n_classes) || n_classes == 1) {
            community.core.assign(strengths.begin(), strengths.end());
            by_strength_desc(community.core);
        } else {
            std::vector<double> vals;
            vals.reserve(strengths.size());
            for (const auto& [_, s] : strengths) vals.push_back(s);
            auto breaks = jenks_breaks(vals, n_classes);
            for (const auto& [id, s] : strengths) {
                int cls = breaks.class_of(s);
                if (cls == n_classes - 1) community.core.emplace_back(id, s);
                else if (cls == 0) community.periphery.emplace_back(id, s);
            }
            by_strength_desc(community.core);
            by_strength_desc(community.periphery);
        }
        report.communities.push_back(std::move(community));
    }
    return report;
}

}  // namespace cocite
