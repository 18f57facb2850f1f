// cocite: build and analyze data-citation co-citation networks from
// study/publication/citation extracts.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cocite/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitInfeasible = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"co-citation network analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string citations, studies, publications, taxonomy, out_dir;
    int min_year = -1, k = -1, jenks_classes = -1, layout_iterations = -1;
    double s_min_weight = -1, f_min_weight = -1;
    long long seed = -1, layout_seed = -1, louvain_runs = -1;

    const char* subcommands[] = {"ingest", "build", "metrics", "communities", "roles", "report", "layout", "all"};
    const char* descriptions[] = {
        "parse and validate the corpus",
        "construct the citation and co-citation networks",
        "whole-graph metrics, centralities and hub classes",
        "overlapping dataset communities and the field partition",
        "crossroads / subdivision roles, histograms",
        "everything plus the text summary",
        "deterministic force-directed coordinates",
        "the full pipeline"};
    std::string chosen;
    for (std::size_t i = 0; i < std::size(subcommands); ++i) {
        auto* sub = app.add_subcommand(subcommands[i], descriptions[i]);
        sub->callback([&chosen, name = std::string(subcommands[i])] { chosen = name; });
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--citations", citations, "citations file (publication_id,study_id)");
        sub->add_option("--studies", studies, "studies file");
        sub->add_option("--publications", publications, "publications file");
        sub->add_option("--taxonomy", taxonomy, "field-of-research taxonomy file");
        sub->add_option("--min-year", min_year, "drop links published before this year");
        sub->add_option("--s-min-weight", s_min_weight, "minimum co-citation weight kept in S");
        sub->add_option("--f-min-weight", f_min_weight, "minimum co-citation weight kept in F");
        sub->add_option("--k", k, "clique size for percolation communities");
        sub->add_option("--seed", seed, "community-detection seed");
        sub->add_option("--louvain-runs", louvain_runs, "keep the best of this many seeded runs");
        sub->add_option("--jenks-classes", jenks_classes, "natural-breaks class count");
        sub->add_option("--layout-iterations", layout_iterations, "force-directed iterations");
        sub->add_option("--layout-seed", layout_seed, "layout placement seed");
        sub->add_option("--out", out_dir, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInfeasible;
    }

    try {
        cocite::PipelineConfig config;
        if (!config_path.empty()) config = cocite::load_config(config_path);
        if (!citations.empty()) config.citations_path = citations;
        if (!studies.empty()) config.studies_path = studies;
        if (!publications.empty()) config.publications_path = publications;
        if (!taxonomy.empty()) config.taxonomy_path = taxonomy;
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (min_year >= 0) config.min_year = min_year;
        if (s_min_weight >= 0) config.s_min_weight = s_min_weight;
        if (f_min_weight >= 0) config.f_min_weight = f_min_weight;
        if (k >= 0) config.k = k;
        if (seed >= 0) config.louvain_seed = static_cast<unsigned>(seed);
        if (louvain_runs >= 0) config.louvain_runs = static_cast<unsigned>(louvain_runs);
        if (jenks_classes >= 0) config.jenks_classes = jenks_classes;
        if (layout_iterations >= 0) config.layout_iterations = layout_iterations;
        if (layout_seed >= 0) config.layout_seed = static_cast<unsigned>(layout_seed);

        cocite::run_pipeline(config, cocite::stages_for_command(chosen));
        std::cout << "wrote " << config.out_dir << "\n";
        return kExitOk;
    } catch (const cocite::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const cocite::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const cocite::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
