// linkbox: summarize a knowledge-graph article's linked entities into labeled
// (property, value-set) facts.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "linkbox/config.hpp"
#include "linkbox/kg.hpp"
#include "linkbox/metrics.hpp"
#include "linkbox/pipeline.hpp"
#include "linkbox/relatedness.hpp"

using nlohmann::ordered_json;

namespace {

struct CommonArgs {
    std::string data_dir;
    std::string entities_path;
    std::string links_path;
    std::string categories_path;
    std::string config_path;
    bool lax = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--data", args.data_dir,
                    "Directory holding entities.tsv, links.tsv, categories.tsv");
    cmd->add_option("--entities", args.entities_path, "Entities file (id<TAB>kind)");
    cmd->add_option("--links", args.links_path, "Links file (source<TAB>target)");
    cmd->add_option("--categories", args.categories_path, "Categories file (node<TAB>category)");
    cmd->add_option("--config", args.config_path, "Pipeline config file (INI sections)");
    cmd->add_flag("--lax", args.lax, "Skip bad records with a warning instead of failing");
}

linkbox::KnowledgeGraph load(const CommonArgs& args) {
    std::string entities = args.entities_path;
    std::string links = args.links_path;
    std::string categories = args.categories_path;
    if (!args.data_dir.empty()) {
        if (entities.empty()) entities = args.data_dir + "/entities.tsv";
        if (links.empty()) links = args.data_dir + "/links.tsv";
        if (categories.empty()) categories = args.data_dir + "/categories.tsv";
    }
    if (entities.empty() || links.empty() || categories.empty())
        throw CLI::ValidationError("provide --data or all of --entities/--links/--categories");

    std::vector<std::string> warnings;
    linkbox::LoadOptions options;
    options.strict = !args.lax;
    linkbox::KnowledgeGraph g =
        linkbox::load_graph_files(entities, links, categories, options, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    return g;
}

linkbox::PipelineConfig effective_config(const CommonArgs& args) {
    if (args.config_path.empty()) return {};
    return linkbox::load_config_file(args.config_path);
}

std::unique_ptr<std::ostream> open_out(const std::string& path, std::ostream*& out) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open " + path);
    out = file.get();
    return file;
}

ordered_json filter_line(const std::string& article, const linkbox::FilterResult& result) {
    ordered_json line;
    line["article"] = article;
    line["related"] = result.related;
    line["noise"] = result.noise;
    ordered_json scores = ordered_json::object();
    for (const auto& [entity, score] : result.scores) scores[entity] = score;
    line["scores"] = scores;
    return line;
}

// truth rows: article<TAB>entity<TAB>related|unrelated
std::map<std::string, std::set<std::string>> load_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::set<std::string>> related;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string article, entity, verdict;
        if (!std::getline(row, article, '\t') || !std::getline(row, entity, '\t') ||
            !std::getline(row, verdict)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad truth row");
        }
        if (verdict == "related") {
            related[article].insert(entity);
        } else if (verdict != "unrelated") {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": verdict must be related|unrelated");
        } else {
            related.try_emplace(article);
        }
    }
    return related;
}

// judgment rows: cluster_id<TAB>entity<TAB>0|1
linkbox::JudgmentMap load_judgments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    linkbox::JudgmentMap judgments;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string cluster, entity, verdict;
        if (!std::getline(row, cluster, '\t') || !std::getline(row, entity, '\t') ||
            !std::getline(row, verdict) || (verdict != "0" && verdict != "1")) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": bad judgment row");
        }
        judgments[{cluster, entity}] = verdict == "1";
    }
    return judgments;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infobox-style fact extraction over linked entities"};
    app.require_subcommand(1);

    // ---- ingest ----------------------------------------------------------
    CommonArgs ingest_args;
    std::string normalize_dir;
    CLI::App* ingest = app.add_subcommand("ingest", "Load, validate and summarize a graph");
    add_common(ingest, ingest_args);
    ingest->add_option("--normalize", normalize_dir,
                       "Write canonical entities/links/categories files into this directory");
    ingest->callback([&] {
        const linkbox::KnowledgeGraph g = load(ingest_args);
        const linkbox::CoocStats stats = linkbox::cooccurrence_stats(g);
        std::size_t category_nodes = 0;
        std::size_t link_records = 0;
        for (const auto& [id, kind] : g.nodes) {
            if (kind == linkbox::NodeKind::Category) ++category_nodes;
        }
        for (const auto& [article, targets] : g.links) link_records += targets.size();
        ordered_json summary;
        summary["articles"] = g.article_count;
        summary["categories"] = category_nodes;
        summary["links"] = link_records;
        summary["articles_with_links"] = g.links.size();
        summary["cooccurrence_pairs"] = stats.total_pairs;
        std::cout << summary.dump() << '\n';
        if (!normalize_dir.empty()) {
            std::ofstream ent(normalize_dir + "/entities.tsv");
            std::ofstream lnk(normalize_dir + "/links.tsv");
            std::ofstream cat(normalize_dir + "/categories.tsv");
            if (!ent || !lnk || !cat)
                throw std::runtime_error("cannot write into " + normalize_dir);
            linkbox::serialize_graph(g, ent, lnk, cat);
        }
    });

    // ---- filter ----------------------------------------------------------
    CommonArgs filter_args;
    std::string filter_article;
    bool filter_all = false;
    double beta_flag = 0.0, threshold_flag = 0.0;
    CLI::App* filter = app.add_subcommand("filter", "Split linked entities into related/noise");
    add_common(filter, filter_args);
    filter->add_option("--article", filter_article, "Article to filter");
    filter->add_flag("--all", filter_all, "Filter every article");
    CLI::Option* beta_opt = filter->add_option("--beta", beta_flag, "Sigmoid steepness");
    CLI::Option* threshold_opt =
        filter->add_option("--threshold", threshold_flag, "Noise cutoff in [0,1]");
    filter->callback([&] {
        if (filter_article.empty() == !filter_all)
            throw CLI::ValidationError("pass exactly one of --article or --all");
        const linkbox::KnowledgeGraph g = load(filter_args);
        const linkbox::CoocStats stats = linkbox::cooccurrence_stats(g);
        linkbox::PipelineConfig config = effective_config(filter_args);
        if (beta_opt->count()) config.aggregation.beta = beta_flag;
        if (threshold_opt->count()) config.aggregation.threshold = threshold_flag;
        config.validate();
        if (filter_all) {
            for (const std::string& article : g.entity_ids()) {
                if (g.linked_entities(article).empty()) continue;
                const auto result = linkbox::filter_noise(g, stats, article, config.aggregation);
                std::cout << filter_line(article, result).dump() << '\n';
            }
        } else {
            const auto result =
                linkbox::filter_noise(g, stats, filter_article, config.aggregation);
            std::cout << filter_line(filter_article, result).dump() << '\n';
        }
    });

    // ---- taxonomy --------------------------------------------------------
    CommonArgs taxonomy_args;
    std::string taxonomy_entity;
    double alpha_flag = 0.0;
    std::size_t depth_flag = 0;
    CLI::App* taxonomy = app.add_subcommand("taxonomy", "Dump an entity's IsA taxonomy DAG");
    add_common(taxonomy, taxonomy_args);
    taxonomy->add_option("--entity", taxonomy_entity, "Entity id")->required();
    CLI::Option* alpha_opt =
        taxonomy->add_option("--alpha-edge", alpha_flag, "Edge acceptance threshold");
    CLI::Option* depth_opt = taxonomy->add_option("--max-depth", depth_flag, "Level limit");
    taxonomy->callback([&] {
        const linkbox::KnowledgeGraph g = load(taxonomy_args);
        linkbox::PipelineConfig config = effective_config(taxonomy_args);
        if (alpha_opt->count()) config.taxonomy.alpha_edge = alpha_flag;
        if (depth_opt->count()) config.taxonomy.max_depth = depth_flag;
        config.validate();
        const linkbox::IsaTaxonomy tax = linkbox::build_isa(g, taxonomy_entity, config.taxonomy);
        ordered_json out;
        out["root"] = tax.root;
        ordered_json edges = ordered_json::array();
        for (const linkbox::IsaEdge& edge : tax.edges)
            edges.push_back({edge.child, edge.parent, edge.weight});
        out["edges"] = edges;
        ordered_json confidence = ordered_json::object();
        for (const auto& [category, value] : tax.confidence) confidence[category] = value;
        out["confidence"] = confidence;
        std::cout << out.dump() << '\n';
    });

    // ---- cluster ---------------------------------------------------------
    CommonArgs cluster_args;
    std::string cluster_article;
    std::uint64_t seed_flag = 0;
    double significance_flag = 0.0;
    std::size_t iter_flag = 0;
    CLI::App* cluster = app.add_subcommand("cluster", "Cluster an article's related entities");
    add_common(cluster, cluster_args);
    cluster->add_option("--article", cluster_article, "Article id")->required();
    CLI::Option* seed_opt = cluster->add_option("--seed", seed_flag, "RNG seed");
    CLI::Option* sig_opt =
        cluster->add_option("--significance", significance_flag, "Split-test significance");
    CLI::Option* iter_opt = cluster->add_option("--max-iter", iter_flag, "2-means iterations");
    cluster->callback([&] {
        const linkbox::KnowledgeGraph g = load(cluster_args);
        linkbox::PipelineConfig config = effective_config(cluster_args);
        if (seed_opt->count()) config.cluster.rng_seed = seed_flag;
        if (sig_opt->count()) config.cluster.significance = significance_flag;
        if (iter_opt->count()) config.cluster.max_iter = iter_flag;
        config.validate();
        const linkbox::PipelineState state = linkbox::prepare_pipeline(g, config);
        const linkbox::ExtractContext ctx = linkbox::make_context(g, state, config);
        const linkbox::ArticleResult result =
            linkbox::cluster_article_direct(ctx, cluster_article);
        for (std::size_t i = 0; i < result.labeled_clusters.size(); ++i) {
            ordered_json line;
            line["article"] = cluster_article;
            line["cluster_id"] = cluster_article + "#" + std::to_string(i);
            line["members"] = result.labeled_clusters[i].cluster.members;
            std::cout << line.dump() << '\n';
        }
    });

    // ---- label -----------------------------------------------------------
    CommonArgs label_args;
    std::string label_article;
    bool label_all = false;
    std::string strategy_name = "zlca";
    double zeta_flag = 0.0;
    std::size_t level_flag = 0;
    CLI::App* label = app.add_subcommand("label", "Cluster and label an article");
    add_common(label, label_args);
    label->add_option("--article", label_article, "Article id");
    label->add_flag("--all", label_all, "Label every article");
    label->add_option("--strategy", strategy_name, "mf|mfi|zlca")
        ->check(CLI::IsMember({"mf", "mfi", "zlca"}));
    CLI::Option* zeta_opt = label->add_option("--zeta", zeta_flag, "Coverage bound");
    CLI::Option* level_opt = label->add_option("--max-level", level_flag, "Search level cap");
    label->callback([&] {
        if (label_article.empty() == !label_all)
            throw CLI::ValidationError("pass exactly one of --article or --all");
        const linkbox::KnowledgeGraph g = load(label_args);
        linkbox::PipelineConfig config = effective_config(label_args);
        if (zeta_opt->count()) config.label.zeta = zeta_flag;
        if (level_opt->count()) config.label.max_level = level_flag;
        config.validate();
        const linkbox::PipelineState state = linkbox::prepare_pipeline(g, config);
        const linkbox::ExtractContext ctx = linkbox::make_context(g, state, config);

        std::vector<std::string> articles;
        if (label_all) {
            articles = g.entity_ids();
        } else {
            articles.push_back(label_article);
        }
        for (const std::string& article : articles) {
            const linkbox::ArticleResult result = linkbox::cluster_article_direct(ctx, article);
            for (std::size_t i = 0; i < result.labeled_clusters.size(); ++i) {
                const linkbox::LabeledCluster& zlca = result.labeled_clusters[i];
                std::string chosen = zlca.label;
                double cov = zlca.coverage;
                linkbox::LabelStrategy strategy = linkbox::LabelStrategy::Zlca;
                if (strategy_name != "zlca") {
                    std::vector<const linkbox::IsaTaxonomy*> taxes;
                    for (const std::string& member : zlca.cluster.members)
                        taxes.push_back(state.corpus.find(member));
                    const linkbox::ClusterTaxonomy ct = linkbox::union_taxonomy(taxes);
                    chosen = strategy_name == "mf" ? linkbox::label_mf(ct)
                                                   : linkbox::label_mfi(ct, state.corpus);
                    strategy = strategy_name == "mf" ? linkbox::LabelStrategy::Mf
                                                     : linkbox::LabelStrategy::Mfi;
                    cov = linkbox::coverage(ct, chosen);
                }
                ordered_json line;
                line["cluster_id"] = article + "#" + std::to_string(i);
                line["label"] = chosen;
                line["coverage"] = cov;
                line["strategy"] = linkbox::label_strategy_name(strategy);
                std::cout << line.dump() << '\n';
            }
        }
    });

    // ---- extract ---------------------------------------------------------
    CommonArgs extract_args;
    bool extract_all = false;
    double tau_flag = 0.0;
    std::string reuse_flag;
    std::uint64_t extract_seed = 0;
    std::string facts_path;
    std::string stats_path;
    CLI::App* extract = app.add_subcommand("extract", "Batch fact extraction over all articles");
    add_common(extract, extract_args);
    extract->add_flag("--all", extract_all, "Extract every article")->required();
    CLI::Option* tau_opt = extract->add_option("--tau", tau_flag, "ECG overlap bound");
    extract->add_option("--reuse", reuse_flag, "on|off")->check(CLI::IsMember({"on", "off"}));
    CLI::Option* extract_seed_opt = extract->add_option("--seed", extract_seed, "RNG seed");
    extract->add_option("--out", facts_path, "Facts file (JSON-lines), default stdout");
    extract->add_option("--stats", stats_path, "Per-node timing and reuse-ratio CSV");
    extract->callback([&] {
        const linkbox::KnowledgeGraph g = load(extract_args);
        linkbox::PipelineConfig config = effective_config(extract_args);
        if (tau_opt->count()) config.ecg.tau = tau_flag;
        if (!reuse_flag.empty()) config.reuse = reuse_flag == "on";
        if (extract_seed_opt->count()) config.cluster.rng_seed = extract_seed;
        config.validate();

        linkbox::BatchStats stats;
        stats.measure_direct = !stats_path.empty();
        const linkbox::PipelineResult result =
            linkbox::run_pipeline(g, config, stats_path.empty() ? nullptr : &stats);

        std::ostream* out = nullptr;
        auto holder = open_out(facts_path, out);
        linkbox::write_facts(*out, result.results);
        std::cerr << "extracted " << linkbox::count_fact_triples(result.results)
                  << " facts over " << result.articles_with_clusters << " articles\n";

        if (!stats_path.empty()) {
            std::ofstream csv(stats_path);
            if (!csv) throw std::runtime_error("cannot open " + stats_path);
            linkbox::write_batch_stats_csv(stats, csv);
        }
    });

    // ---- eval ------------------------------------------------------------
    CommonArgs eval_args;
    std::string eval_article;
    std::string truth_path;
    std::string judgments_path;
    std::string measure_name = "agg";
    CLI::App* eval = app.add_subcommand("eval", "Clustering/labeling/ranking metrics");
    add_common(eval, eval_args);
    eval->add_option("--article", eval_article, "Restrict ranking metrics to one article");
    eval->add_option("--truth", truth_path,
                     "Ground-truth relatedness TSV: article<TAB>entity<TAB>related|unrelated");
    eval->add_option("--judgments", judgments_path,
                     "Label judgments TSV: cluster_id<TAB>entity<TAB>0|1");
    eval->add_option("--measure", measure_name, "Ordering to score: agg|pmi|wjc")
        ->check(CLI::IsMember({"agg", "pmi", "wjc"}));
    eval->callback([&] {
        const linkbox::KnowledgeGraph g = load(eval_args);
        linkbox::PipelineConfig config = effective_config(eval_args);
        config.validate();
        const linkbox::PipelineResult pipeline = linkbox::run_pipeline(g, config);
        linkbox::EvalReport report;
        report.inter = pipeline.report.inter;
        report.intra = pipeline.report.intra;
        report.valid = pipeline.report.valid;

        if (!truth_path.empty()) {
            const auto truth = load_truth(truth_path);
            const linkbox::CoocStats stats = linkbox::cooccurrence_stats(g);
            double closeness_sum = 0.0;
            std::size_t closeness_count = 0;
            for (const auto& [article, related] : truth) {
                if (!eval_article.empty() && article != eval_article) continue;
                if (related.empty()) continue;
                const std::vector<std::string>& linked = g.linked_entities(article);
                if (linked.size() < 2) continue;

                std::map<std::string, double> values;
                for (const std::string& e : linked) {
                    if (measure_name == "pmi") {
                        values[e] = linkbox::pmi(stats, article, e).value;
                    } else if (measure_name == "wjc") {
                        values[e] = linkbox::wjc(g, article, e).value;
                    }
                }
                linkbox::Ranking ordering;
                if (measure_name == "agg") {
                    const auto filtered =
                        linkbox::filter_noise(g, stats, article, config.aggregation);
                    ordering = linkbox::rank_by(filtered.scores, /*higher_is_better=*/false);
                } else {
                    ordering = linkbox::rank_by(values, /*higher_is_better=*/true);
                }
                const auto curve = linkbox::m_at_k_curve(ordering, related);
                const auto ideal = linkbox::ideal_m_at_k_curve(linked.size(), related.size());
                closeness_sum += linkbox::closeness(curve, ideal, 1, linked.size());
                ++closeness_count;
                if (!eval_article.empty()) {
                    for (std::size_t k = 1; k <= curve.size(); ++k)
                        report.m_at_k[k] = curve[k - 1];
                }
            }
            if (closeness_count > 0)
                report.closeness = closeness_sum / static_cast<double>(closeness_count);
        }

        if (!judgments_path.empty()) {
            const linkbox::JudgmentMap judgments = load_judgments(judgments_path);
            std::set<std::string> judged_ids;
            for (const auto& [key, verdict] : judgments) judged_ids.insert(key.first);
            std::vector<linkbox::LabeledCluster> clusters;
            std::vector<std::string> ids;
            for (const auto& [id, cluster] : linkbox::enumerate_clusters(pipeline.results)) {
                if (!judged_ids.count(id)) continue;
                clusters.push_back(*cluster);
                ids.push_back(id);
            }
            if (clusters.empty())
                throw std::runtime_error("judgments reference no extracted cluster id");
            report.precision = linkbox::precision_pcl(clusters, ids, judgments);
        }

        std::cout << linkbox::report_to_json(report).dump() << '\n';
    });

    // ---- stats -----------------------------------------------------------
    CommonArgs stats_args;
    std::string noise_path;
    std::string max_overlap_path;
    std::string khop_path;
    double sr_threshold_flag = 0.0;
    std::size_t bins = 10;
    std::size_t max_hops = 5;
    CLI::App* stats_cmd = app.add_subcommand("stats", "Noise and overlap distributions");
    add_common(stats_cmd, stats_args);
    stats_cmd->add_option("--noise", noise_path, "Noisy-link percentage histogram CSV ('-' = stdout)");
    stats_cmd->add_option("--max-overlap", max_overlap_path,
                          "Maximal neighbor overlap CDF CSV ('-' = stdout)");
    stats_cmd->add_option("--khop", khop_path, "k-hop mean overlap CSV ('-' = stdout)");
    CLI::Option* sr_opt =
        stats_cmd->add_option("--sr-threshold", sr_threshold_flag, "sr noise threshold");
    stats_cmd->add_option("--bins", bins, "Histogram bins");
    stats_cmd->add_option("--max-hops", max_hops, "k-hop curve depth");
    stats_cmd->callback([&] {
        if (noise_path.empty() && max_overlap_path.empty() && khop_path.empty())
            throw CLI::ValidationError("pass at least one of --noise/--max-overlap/--khop");
        const linkbox::KnowledgeGraph g = load(stats_args);
        linkbox::PipelineConfig config = effective_config(stats_args);
        if (sr_opt->count()) config.relatedness.sr_noise_threshold = sr_threshold_flag;
        if (!noise_path.empty()) {
            const auto hist = linkbox::noise_distribution(
                g, config.relatedness.sr_noise_threshold, bins);
            std::ostream* out = nullptr;
            auto holder = open_out(noise_path, out);
            linkbox::write_noise_csv(hist, *out);
        }
        if (!max_overlap_path.empty() || !khop_path.empty()) {
            const auto dist =
                linkbox::overlap_distributions(g, max_hops, bins, config.ecg.neighbor_mode);
            if (!max_overlap_path.empty()) {
                std::ostream* out = nullptr;
                auto holder = open_out(max_overlap_path, out);
                linkbox::write_max_overlap_csv(dist, *out);
            }
            if (!khop_path.empty()) {
                std::ostream* out = nullptr;
                auto holder = open_out(khop_path, out);
                linkbox::write_khop_csv(dist, *out);
            }
        }
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
