#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cocite/analysis.hpp"
#include "cocite/breaks.hpp"
#include "cocite/centrality.hpp"
#include "cocite/community.hpp"
#include "cocite/construct.hpp"
#include "cocite/corpus.hpp"
#include "cocite/graph_io.hpp"
#include "cocite/hash.hpp"
#include "cocite/layout.hpp"
#include "cocite/metrics.hpp"
#include "cocite/text.hpp"

namespace cocite {

struct PipelineConfig {
    std::string citations_path;
    std::string studies_path;
    std::string publications_path;
    std::string taxonomy_path;
    int min_year = 1962;
    double s_min_weight = 2.0;
    double f_min_weight = 5.0;
    int k = 3;
    unsigned louvain_seed = 1;
    unsigned louvain_runs = 1;
    int jenks_classes = 4;
    int layout_iterations = 500;
    unsigned layout_seed = 42;
    std::string out_dir = "out";

    void validate() const {
        if (citations_path.empty() || studies_path.empty() || publications_path.empty())
            throw InfeasibleError("citations, studies and publications inputs are required");
        if (min_year < 0) throw InfeasibleError("min_year must be >= 0");
        if (s_min_weight < 0 || f_min_weight < 0) throw InfeasibleError("edge-weight thresholds must be >= 0");
        if (k < 2) throw InfeasibleError("clique size k must be >= 2");
        if (jenks_classes < 1) throw InfeasibleError("jenks_classes must be >= 1");
        if (layout_iterations < 1) throw InfeasibleError("layout_iterations must be >= 1");
        if (louvain_runs < 1) throw InfeasibleError("louvain_runs must be >= 1");
    }
};

/// Flat key=value config file, '#' comments; relative paths resolve against
/// the config file's directory.
inline PipelineConfig load_config(const std::string& path) {
    PipelineConfig cfg;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).lexically_normal().string();
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "citations") cfg.citations_path = resolve(value);
        else if (key == "studies") cfg.studies_path = resolve(value);
        else if (key == "publications") cfg.publications_path = resolve(value);
        else if (key == "taxonomy") cfg.taxonomy_path = resolve(value);
        else if (key == "min_year") cfg.min_year = static_cast<int>(parse_long(value, lineno));
        else if (key == "s_min_weight") cfg.s_min_weight = parse_double(value, lineno);
        else if (key == "f_min_weight") cfg.f_min_weight = parse_double(value, lineno);
        else if (key == "k") cfg.k = static_cast<int>(parse_long(value, lineno));
        else if (key == "louvain_seed") cfg.louvain_seed = static_cast<unsigned>(parse_long(value, lineno));
        else if (key == "louvain_runs") cfg.louvain_runs = static_cast<unsigned>(parse_long(value, lineno));
        else if (key == "jenks_classes") cfg.jenks_classes = static_cast<int>(parse_long(value, lineno));
        else if (key == "layout_iterations") cfg.layout_iterations = static_cast<int>(parse_long(value, lineno));
        else if (key == "layout_seed") cfg.layout_seed = static_cast<unsigned>(parse_long(value, lineno));
        else if (key == "out") cfg.out_dir = resolve(value);
        else throw ParseError("unknown config key '" + key + "'", lineno);
    }
    return cfg;
}

enum Stage : unsigned {
    kStageIngest = 1u << 0,
    kStageBuild = 1u << 1,
    kStageMetrics = 1u << 2,
    kStageCommunities = 1u << 3,
    kStageRoles = 1u << 4,
    kStageLayout = 1u << 5,
    kStageReport = 1u << 6,
    kStageAll = 0x7F,
};

inline unsigned stages_for_command(const std::string& command) {
    if (command == "ingest") return kStageIngest;
    if (command == "build") return kStageIngest | kStageBuild;
    if (command == "metrics") return kStageIngest | kStageBuild | kStageMetrics;
    if (command == "communities") return kStageIngest | kStageBuild | kStageCommunities;
    if (command == "roles")
        return kStageIngest | kStageBuild | kStageMetrics | kStageCommunities | kStageRoles;
    if (command == "layout") return kStageIngest | kStageBuild | kStageLayout;
    if (command == "report" || command == "all") return kStageAll;
    throw InfeasibleError("unknown command '" + command + "'");
}

namespace detail {

/// Removes everything written so far if a stage fails.
class OutputTracker {
public:
    explicit OutputTracker(std::string dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory " + dir_);
    }

    std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }

    void write(const std::string& name, std::string_view content) {
        std::string p = path(name);
        write_file(p, content);
        written_.push_back(p);
    }

    void remove_written() {
        for (const auto& p : written_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        written_.clear();
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    std::string dir_;
    std::vector<std::string> written_;
};

template <typename Fn>
auto run_stage(const std::string& stage, Fn&& fn) {
    auto wrap = [&](const char* kind, const std::string& what) {
        return "stage " + stage + " (" + kind + "): " + what;
    };
    try {
        return fn();
    } catch (const ParseError& e) {
        throw ValidationError(wrap("parse", e.what()));
    } catch (const ValidationError& e) {
        throw ValidationError(wrap("validation", e.what()));
    } catch (const LookupError& e) {
        throw LookupError(wrap("lookup", e.what()));
    } catch (const UndefinedMetricError& e) {
        throw UndefinedMetricError(wrap("metric", e.what()));
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(wrap("parameter", e.what()));
    } catch (const IoError& e) {
        throw IoError(wrap("io", e.what()));
    }
}

inline std::string csv_row(std::initializer_list<std::string> cells) {
    std::string out;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out += ',';
        out += c;
        first = false;
    }
    out += '\n';
    return out;
}

inline std::string q(const std::string& s) { return csv_quote(s); }
inline std::string num(double v) { return format_double(v); }
inline std::string num(std::size_t v) { return std::to_string(v); }
inline std::string num(int v) { return std::to_string(v); }

}  // namespace detail

/// Everything the pipeline derives, for callers that want the objects rather
/// than the files.
struct PipelineResult {
    Corpus corpus;
    IngestStats stats;
    YearFilterResult filtered;
    DatasetIndex datasets;
    std::optional<Taxonomy> taxonomy;
    BipartiteGraph citation_network;   // B
    Graph cocitation_pre;              // S before thresholding
    Graph cocitation;                  // S
    BipartiteGraph field_bipartite;    // B'
    Graph field_network_pre;           // F before thresholding
    Graph field_network;               // F
    CentralityTable betweenness_s;
    HubClasses hubs;
    OverlappingCover cover;
    std::vector<CommunityLabel> labels;
    Partition field_partition;
    std::vector<SubdivisionEvidence> subdivisions;
    std::vector<CrossroadsEvidence> crossroads;
    CocitationHistogram histogram;
    std::map<std::size_t, std::size_t> spread;
    FieldCommunityReport field_report;
    bool betweenness_from_cache = false;
};

namespace detail {

inline std::string graph_fingerprint(const Graph& g) {
    std::string blob;
    for (const auto& id : g.nodes()) {
        blob += id;
        blob += '\n';
    }
    blob += '#';
    blob += edge_csv_string(g);
    return hex64(fnv1a64(blob));
}

/// Betweenness is the one expensive stage; cache it per graph fingerprint.
inline CentralityTable betweenness_cached(const Graph& g, const std::string& out_dir, bool* from_cache) {
    std::string cache_dir = (std::filesystem::path(out_dir) / "cache").string();
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    std::string key = graph_fingerprint(g);
    std::string path = (std::filesystem::path(cache_dir) / ("betweenness_" + key + ".csv")).string();

    if (std::filesystem::exists(path)) {
        CentralityTable table;
        table.metric = CentralityMetric::betweenness;
        table.normalized = true;
        DelimitedReader reader(path);
        auto cn = reader.column("node");
        auto cv = reader.column("value");
        std::vector<std::string> row;
        bool complete = true;
        while (reader.next(row)) table.values[row[cn]] = parse_double(row[cv], reader.line());
        for (const auto& id : g.nodes())
            if (!table.values.count(id)) complete = false;
        if (complete && table.values.size() == g.n()) {
            if (from_cache) *from_cache = true;
            return table;
        }
    }

    CentralityTable table = betweenness_all(g, /*normalized=*/true);
    std::string csv = "node,value\n";
    for (const auto& [id, v] : table.values) csv += csv_quote(id) + "," + format_double(v) + "\n";
    write_file(path, csv);
    if (from_cache) *from_cache = false;
    return table;
}

}  // namespace detail

/// Run the requested stages and write their outputs under config.out_dir.
/// Any failure removes the files written by this invocation and rethrows with
/// the stage name attached.
inline PipelineResult run_pipeline(const PipelineConfig& config, unsigned stages = kStageAll) {
    config.validate();
    PipelineResult r;
    detail::OutputTracker out(config.out_dir);
    using detail::csv_row;
    using detail::num;
    using detail::q;

    try {
        // ---- ingest -------------------------------------------------------
        detail::run_stage("ingest", [&] {
            r.corpus = parse_corpus(config.citations_path, config.studies_path, config.publications_path);
            r.stats = r.corpus.stats;
            if (r.corpus.links.empty()) throw ValidationError("no links in " + config.citations_path);
            if (!config.taxonomy_path.empty()) r.taxonomy = Taxonomy::load(config.taxonomy_path);
            if (r.taxonomy) {
                for (const auto& p : r.corpus.publications)
                    for (const auto& code : p.for_codes)
                        if (!r.taxonomy->has(code))
                            throw ValidationError("publication '" + p.publication_id +
                                                  "' carries field code '" + code + "' absent from the taxonomy");
            }
            r.filtered = filter_by_year(r.corpus.links, r.corpus.publications, config.min_year);
            if (r.filtered.links.empty())
                throw ValidationError("no links remain after the year filter");
            r.datasets = group_into_datasets(r.corpus.studies);
        });
        if (stages & kStageIngest) {
            nlohmann::json j;
            j["studies"] = r.corpus.studies.size();
            j["publications"] = r.corpus.publications.size();
            j["citation_rows"] = r.stats.citation_rows;
            j["duplicate_links"] = r.stats.duplicate_links;
            j["links"] = r.corpus.links.size();
            j["links_after_year_filter"] = r.filtered.links.size();
            j["links_dropped_by_year"] = r.filtered.dropped;
            j["links_year_unknown"] = r.filtered.year_unknown;
            j["datasets"] = r.datasets.datasets.size();
            std::size_t series = 0;
            for (const auto& d : r.datasets.datasets)
                if (d.kind == DatasetKind::series) ++series;
            j["series"] = series;
            j["publications_without_fields"] = r.stats.publications_without_fields;
            j["unknown_publication_types"] = r.stats.unknown_pub_types;
            out.write("ingest_summary.json", j.dump(2) + "\n");

            std::string ds = "dataset,kind,members,display_name\n";
            for (const auto& d : r.datasets.datasets)
                ds += csv_row({q(d.dataset_id), d.kind == DatasetKind::series ? "series" : "standalone-study",
                               num(d.member_study_ids.size()), q(d.display_name)});
            out.write("datasets.csv", ds);
        }

        // ---- build --------------------------------------------------------
        detail::run_stage("build", [&] {
            r.citation_network = build_citation_network(r.filtered.links, r.datasets);
            r.cocitation_pre = project_cocitation(r.citation_network);
            r.cocitation = threshold_edges(r.cocitation_pre, config.s_min_weight, /*drop_isolated=*/true);
            r.field_bipartite = build_field_network(r.corpus.publications);
            r.field_network_pre = project_fields(r.corpus.publications, r.filtered.links);
            r.field_network = threshold_edges(r.field_network_pre, config.f_min_weight, /*drop_isolated=*/true);
        });
        if (stages & kStageBuild) {
            out.write("b_edges.csv", bipartite_csv_string(r.citation_network));
            out.write("bprime_edges.csv", bipartite_csv_string(r.field_bipartite));
            out.write("s_pre_edges.csv", edge_csv_string(r.cocitation_pre));
            out.write("s_edges.csv", edge_csv_string(r.cocitation));
            out.write("f_pre_edges.csv", edge_csv_string(r.field_network_pre));
            out.write("f_edges.csv", edge_csv_string(r.field_network));

            NodeAttrs s_attrs;
            for (const auto& id : r.cocitation.nodes()) {
                const DatasetNode& d = r.datasets.at(id);
                s_attrs[id]["display_name"] = d.display_name;
                s_attrs[id]["kind"] = std::string(d.kind == DatasetKind::series ? "series" : "standalone-study");
                s_attrs[id]["citations"] = static_cast<double>(r.citation_network.right_degree(id));
            }
            out.write("s.graphml", graphml_string(r.cocitation, s_attrs));

            std::map<NodeId, double> papers_per_field;
            for (const auto& p : r.corpus.publications)
                for (const auto& code : p.for_codes) papers_per_field[code] += 1.0;
            NodeAttrs f_attrs;
            for (const auto& id : r.field_network.nodes()) {
                double papers = papers_per_field.count(id) ? papers_per_field[id] : 0.0;
                f_attrs[id]["size"] = std::log(1.0 + papers);  // display size: ln(1 + n_papers)
                f_attrs[id]["n_papers"] = papers;
                if (r.taxonomy && r.taxonomy->has(id)) {
                    f_attrs[id]["name"] = r.taxonomy->at(id).name;
                    f_attrs[id]["division"] = r.taxonomy->parent_division(id).name;
                }
            }
            out.write("f.graphml", graphml_string(r.field_network, f_attrs));
        }

        // ---- metrics ------------------------------------------------------
        bool need_metrics = (stages & (kStageMetrics | kStageRoles | kStageReport)) != 0;
        if (need_metrics) {
            detail::run_stage("metrics", [&] {
                r.betweenness_s = detail::betweenness_cached(r.cocitation, config.out_dir, &r.betweenness_from_cache);
                r.hubs = classify_hubs(r.cocitation, config.jenks_classes, &r.betweenness_s);
            });
        }
        if (stages & kStageMetrics) {
            auto metric_or_na = [](auto&& fn) -> std::string {
                try {
                    return detail::num(fn());
                } catch (const UndefinedMetricError&) {
                    return "n/a";
                }
            };
            std::string table =
                "network,nodes,left_nodes,right_nodes,edges,components,density,density_union,mean_degree,"
                "transitivity,degree_assortativity\n";
            const auto& b = r.citation_network;
            table += csv_row({"B", num(b.left().size() + b.right().size()), num(b.left().size()),
                              num(b.right().size()), num(b.m()), num(connected_components(b).size()),
                              metric_or_na([&] { return density(b); }),
                              metric_or_na([&] { return density_union(b); }),
                              num(2.0 * static_cast<double>(b.m()) /
                                  static_cast<double>(b.left().size() + b.right().size())),
                              "n/a", "n/a"});
            for (const auto& [name, graph] : {std::pair<std::string, const Graph*>{"S", &r.cocitation},
                                              {"F", &r.field_network}}) {
                const Graph& g = *graph;
                table += csv_row({name, num(g.n()), "n/a", "n/a", num(g.m()), num(connected_components(g).size()),
                                  metric_or_na([&] { return density(g); }), "n/a",
                                  num(mean_degree(g)), metric_or_na([&] { return transitivity(g); }),
                                  metric_or_na([&] { return degree_assortativity(g); })});
            }
            out.write("metrics_table.csv", table);

            std::string centrality = "node,metric,value\n";
            CentralityTable deg = degree_table(r.cocitation);
            CentralityTable str = strength_table(r.cocitation);
            for (const CentralityTable* t : {&deg, &str, &r.betweenness_s})
                for (const auto& [id, v] : t->values)
                    centrality += csv_row({q(id), to_string(t->metric), num(v)});
            out.write("s_centrality.csv", centrality);

            std::vector<NodeId> hub_rows(r.hubs.high_degree.begin(), r.hubs.high_degree.end());
            for (const auto& id : r.hubs.high_betweenness)
                if (!r.hubs.high_degree.count(id)) hub_rows.push_back(id);
            std::sort(hub_rows.begin(), hub_rows.end(), [&](const NodeId& a, const NodeId& b) {
                double ba = r.betweenness_s.values.at(a), bb = r.betweenness_s.values.at(b);
                if (ba != bb) return ba > bb;
                return a < b;
            });
            std::string hubs = "node,degree,betweenness,citations,members,in_high_degree,in_high_betweenness,"
                               "in_high_both\n";
            for (const auto& id : hub_rows) {
                const DatasetNode& d = r.datasets.at(id);
                hubs += csv_row({q(id), num(r.cocitation.degree(id)), num(r.betweenness_s.values.at(id)),
                                 num(r.citation_network.right_degree(id)), num(d.member_study_ids.size()),
                                 num(static_cast<int>(r.hubs.high_degree.count(id))),
                                 num(static_cast<int>(r.hubs.high_betweenness.count(id))),
                                 num(static_cast<int>(r.hubs.high_both.count(id)))});
            }
            out.write("hubs.csv", hubs);

            std::map<NodeId, double> citations;
            for (const auto& id : r.citation_network.right())
                citations[id] = static_cast<double>(r.citation_network.right_degree(id));
            std::vector<double> vals;
            for (const auto& [_, v] : citations) vals.push_back(v);
            auto breaks = jenks_breaks(vals, config.jenks_classes);
            std::vector<std::pair<NodeId, double>> ranked(citations.begin(), citations.end());
            std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            std::string cites = "dataset,citations,class,is_top\n";
            for (const auto& [id, v] : ranked) {
                int cls = breaks.class_of(v);
                cites += csv_row({q(id), num(static_cast<std::size_t>(v)), num(cls),
                                  num(static_cast<int>(cls == config.jenks_classes - 1))});
            }
            out.write("citation_counts.csv", cites);
        }

        // ---- communities ---------------------------------------------------
        bool need_comms = (stages & (kStageCommunities | kStageRoles | kStageReport)) != 0;
        if (need_comms) {
            detail::run_stage("communities", [&] {
                r.cover = k_clique_communities(r.cocitation, config.k);
                r.labels = label_communities(r.cover, r.datasets);
                r.field_partition = louvain_best_of(r.field_network, config.louvain_seed, config.louvain_runs);
            });
        }
        if (stages & kStageCommunities) {
            std::string comms = "node,community_index\n";
            for (std::size_t i = 0; i < r.cover.communities.size(); ++i)
                for (const auto& id : r.cover.communities[i]) comms += csv_row({q(id), num(i)});
            out.write("s_communities.csv", comms);

            std::string labels = "community_index,size,label\n";
            for (std::size_t i = 0; i < r.cover.communities.size(); ++i)
                labels += csv_row({num(i), num(r.cover.communities[i].size()), q(r.labels[i].label)});
            out.write("s_community_labels.csv", labels);

            std::string partition = "node,community_index\n";
            for (const auto& [id, c] : r.field_partition.assignment) partition += csv_row({q(id), num(c)});
            out.write("f_partition.csv", partition);
        }

        // ---- roles ----------------------------------------------------------
        bool need_roles = (stages & (kStageRoles | kStageReport)) != 0;
        if (need_roles) {
            detail::run_stage("roles", [&] {
                r.subdivisions = identify_subdivisions(r.cocitation, r.cover);
                r.crossroads = identify_crossroads(r.cover, r.hubs, r.cocitation, r.betweenness_s);
                if (r.taxonomy)
                    r.histogram = field_cocitation_histogram(r.filtered.links, r.corpus.publications, *r.taxonomy);
                r.spread = community_cocitation_spread(r.filtered.links, r.corpus.publications, r.field_partition);
                r.field_report = core_periphery(r.field_network, r.field_partition, config.jenks_classes,
                                                r.taxonomy ? &*r.taxonomy : nullptr);
            });
        }
        if (stages & kStageRoles) {
            std::string cross = "dataset,membership_count,degree,in_high_both\n";
            for (const auto& ev : r.crossroads)
                cross += csv_row({q(ev.dataset), num(ev.membership_count), num(ev.degree),
                                  num(static_cast<int>(ev.in_high_both))});
            out.write("crossroads.csv", cross);

            std::string subs = "community_index,size,label,component_isolated,exclusivity_ratio\n";
            for (const auto& ev : r.subdivisions) {
                if (!ev.is_subdivision) continue;
                subs += csv_row({num(ev.community_index),
                                 num(r.cover.communities[static_cast<std::size_t>(ev.community_index)].size()),
                                 q(r.labels[static_cast<std::size_t>(ev.community_index)].label),
                                 num(static_cast<int>(ev.is_component_isolated)), num(ev.exclusivity_ratio)});
            }
            out.write("subdivisions.csv", subs);

            if (r.taxonomy) {
                std::string hist = "divisions,datasets\n";
                for (const auto& [k_, v] : r.histogram.counts) hist += csv_row({num(k_), num(v)});
                hist += csv_row({"untagged", num(r.histogram.untagged)});
                out.write("histogram_divisions.csv", hist);
            }

            std::string spread = "communities,datasets\n";
            for (const auto& [k_, v] : r.spread) spread += csv_row({num(k_), num(v)});
            out.write("community_spread.csv", spread);

            nlohmann::json report;
            report["communities"] = nlohmann::json::array();
            for (std::size_t i = 0; i < r.cover.communities.size(); ++i)
                report["communities"].push_back(
                    {{"index", i}, {"size", r.cover.communities[i].size()}, {"members", r.cover.communities[i]}});
            report["labels"] = nlohmann::json::array();
            for (const auto& l : r.labels)
                report["labels"].push_back({{"index", l.community_index}, {"label", l.label}, {"terms", l.terms}});
            report["crossroads"] = nlohmann::json::array();
            for (const auto& ev : r.crossroads)
                report["crossroads"].push_back({{"dataset", ev.dataset},
                                                {"membership_count", ev.membership_count},
                                                {"degree", ev.degree},
                                                {"betweenness", ev.betweenness},
                                                {"in_high_both", ev.in_high_both}});
            report["subdivisions"] = nlohmann::json::array();
            for (const auto& ev : r.subdivisions)
                report["subdivisions"].push_back({{"index", ev.community_index},
                                                  {"component_isolated", ev.is_component_isolated},
                                                  {"exclusivity_ratio", ev.exclusivity_ratio},
                                                  {"is_subdivision", ev.is_subdivision}});
            report["histograms"] = nlohmann::json::object();
            if (r.taxonomy) {
                nlohmann::json h;
                for (const auto& [k_, v] : r.histogram.counts) h[std::to_string(k_)] = v;
                report["histograms"]["divisions"] = {{"counts", h},
                                                     {"untagged", r.histogram.untagged},
                                                     {"lambda_mle", r.histogram.lambda_mle}};
            }
            nlohmann::json sp;
            for (const auto& [k_, v] : r.spread) sp[std::to_string(k_)] = v;
            report["histograms"]["community_spread"] = sp;
            report["field_communities"] = nlohmann::json::array();
            for (const auto& c : r.field_report.communities) {
                nlohmann::json jc;
                jc["index"] = c.index;
                jc["members"] = c.members;
                jc["core"] = nlohmann::json::array();
                for (const auto& [id, s] : c.core) jc["core"].push_back({{"field", id}, {"strength", s}});
                jc["periphery"] = nlohmann::json::array();
                for (const auto& [id, s] : c.periphery) jc["periphery"].push_back({{"field", id}, {"strength", s}});
                jc["dominant_divisions"] = nlohmann::json::array();
                for (const auto& [name, count] : c.dominant_divisions)
                    jc["dominant_divisions"].push_back({{"division", name}, {"fields", count}});
                report["field_communities"].push_back(jc);
            }
            report["field_partition_modularity"] = r.field_partition.modularity;
            out.write("role_report.json", report.dump(2) + "\n");
        }

        // ---- layout ---------------------------------------------------------
        if (stages & kStageLayout) {
            detail::run_stage("layout", [&] {
                for (const auto& [name, graph] : {std::pair<std::string, const Graph*>{"s_layout.csv", &r.cocitation},
                                                  {"f_layout.csv", &r.field_network}}) {
                    LayoutResult layout = spring_layout(*graph, config.layout_iterations, config.layout_seed);
                    std::string csv = "node,x,y\n";
                    for (const auto& [id, xy] : layout.coordinates)
                        csv += csv_row({q(id), num(xy.first), num(xy.second)});
                    out.write(name, csv);
                }
            });
        }

        // ---- report ---------------------------------------------------------
        if (stages & kStageReport) {
            detail::run_stage("report", [&] {
                std::ostringstream s;
                s << "Data-citation network analysis\n"
                  << "==============================\n\n"
                  << "Corpus: " << r.corpus.studies.size() << " studies, " << r.corpus.publications.size()
                  << " publications, " << r.corpus.links.size() << " citation links ("
                  << r.stats.duplicate_links << " duplicate rows collapsed, " << r.filtered.dropped
                  << " links dropped before year " << config.min_year << ", " << r.filtered.year_unknown
                  << " with unknown year retained)\n"
                  << "Datasets: " << r.datasets.datasets.size() << " (series grouped)\n\n"
                  << "Networks\n"
                  << "  B  publications x datasets: " << r.citation_network.left().size() << " x "
                  << r.citation_network.right().size() << ", " << r.citation_network.m() << " edges\n"
                  << "  S  dataset co-citation: " << r.cocitation_pre.n() << " nodes / " << r.cocitation_pre.m()
                  << " edges before threshold; " << r.cocitation.n() << " / " << r.cocitation.m()
                  << " at weight >= " << format_double(config.s_min_weight) << "\n"
                  << "  F  field co-citation: " << r.field_network_pre.n() << " nodes / "
                  << r.field_network_pre.m() << " edges before threshold; " << r.field_network.n() << " / "
                  << r.field_network.m() << " at weight >= " << format_double(config.f_min_weight) << "\n\n";
                s << "Dataset communities (k-clique, k=" << config.k << "): " << r.cover.communities.size()
                  << " communities covering "
                  << (r.cocitation.n() - r.cover.uncovered.size()) << " of " << r.cocitation.n() << " datasets\n";
                for (std::size_t i = 0; i < r.cover.communities.size(); ++i)
                    s << "  [" << i << "] size " << r.cover.communities[i].size() << ": " << r.labels[i].label
                      << "\n";
                s << "\nField communities (Louvain, seed " << config.louvain_seed
                  << "): " << r.field_partition.community_count << ", Q = "
                  << format_double(r.field_partition.modularity) << "\n";
                s << "\nCrossroads datasets (" << r.crossroads.size() << "):\n";
                for (const auto& ev : r.crossroads)
                    s << "  " << ev.dataset << " (communities: " << ev.membership_count
                      << ", degree: " << ev.degree << ", betweenness: " << format_double(ev.betweenness)
                      << (ev.in_high_both ? ", high degree+betweenness" : "") << ")\n";
                std::size_t n_subs = 0;
                for (const auto& ev : r.subdivisions) n_subs += ev.is_subdivision ? 1 : 0;
                s << "\nSubdivision communities (" << n_subs << "):\n";
                for (const auto& ev : r.subdivisions)
                    if (ev.is_subdivision)
                        s << "  [" << ev.community_index << "] "
                          << r.labels[static_cast<std::size_t>(ev.community_index)].label
                          << " (exclusivity " << format_double(ev.exclusivity_ratio) << ")\n";
                if (r.taxonomy) {
                    s << "\nDatasets by number of citing parent divisions:\n";
                    for (const auto& [k_, v] : r.histogram.counts) s << "  " << k_ << ": " << v << "\n";
                    s << "  untagged: " << r.histogram.untagged << "\n"
                      << "  lambda (mean divisions): " << format_double(r.histogram.lambda_mle) << "\n";
                }
                out.write("summary.txt", s.str());
            });
        }

        // ---- manifest (always) ----------------------------------------------
        {
            nlohmann::json m;
            m["tool"] = {{"name", "cocite"}, {"version", "0.1.0"}};
            m["config"] = {{"citations", config.citations_path},
                           {"studies", config.studies_path},
                           {"publications", config.publications_path},
                           {"taxonomy", config.taxonomy_path},
                           {"min_year", config.min_year},
                           {"s_min_weight", config.s_min_weight},
                           {"f_min_weight", config.f_min_weight},
                           {"k", config.k},
                           {"louvain_seed", config.louvain_seed},
                           {"louvain_runs", config.louvain_runs},
                           {"jenks_classes", config.jenks_classes},
                           {"layout_iterations", config.layout_iterations},
                           {"layout_seed", config.layout_seed}};
            nlohmann::json inputs;
            for (const auto& [name, path] :
                 {std::pair<std::string, std::string>{"citations", config.citations_path},
                  {"studies", config.studies_path},
                  {"publications", config.publications_path},
                  {"taxonomy", config.taxonomy_path}}) {
                if (path.empty()) continue;
                inputs[name] = {{"path", path}, {"fnv1a64", hex64(fnv1a64(read_file(path)))}};
            }
            m["inputs"] = inputs;
            m["assumptions"] = {{"betweenness_network", "S(thresholded)"},
                                {"shortest_paths", "unweighted"},
                                {"node_size", "ln(1 + n_papers)"},
                                {"bipartite_density", "edges / (left * right); density_union is 2m/n(n-1)"}};
            m["networks"] = {{"S_pre", {{"nodes", r.cocitation_pre.n()}, {"edges", r.cocitation_pre.m()}}},
                             {"S", {{"nodes", r.cocitation.n()}, {"edges", r.cocitation.m()}}},
                             {"F_pre", {{"nodes", r.field_network_pre.n()}, {"edges", r.field_network_pre.m()}}},
                             {"F", {{"nodes", r.field_network.n()}, {"edges", r.field_network.m()}}}};
            m["betweenness_from_cache"] = r.betweenness_from_cache;
            out.write("manifest.json", m.dump(2) + "\n");
        }
    } catch (...) {
        out.remove_written();
        throw;
    }
    return r;
}

}  // namespace cocite
