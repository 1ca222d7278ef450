#include "linkbox/pipeline.hpp"

#include <cmath>
#include <ostream>

namespace linkbox {

PipelineState prepare_pipeline(const KnowledgeGraph& g, const PipelineConfig& config) {
    config.validate();
    PipelineState state;
    state.stats = cooccurrence_stats(g);

    std::vector<std::string> categorized;
    for (const std::string& e : g.entity_ids()) {
        if (!g.categories(e).empty()) categorized.push_back(e);
    }
    state.corpus = build_corpus(g, config.taxonomy, categorized);
    for (const auto& [entity, tax] : state.corpus.by_entity) {
        state.features[entity] = feature_vector(tax, state.corpus);
    }
    return state;
}

ExtractContext make_context(const KnowledgeGraph& g, const PipelineState& state,
                            const PipelineConfig& config) {
    ExtractContext ctx;
    ctx.graph = &g;
    ctx.stats = &state.stats;
    ctx.corpus = &state.corpus;
    ctx.features = &state.features;
    ctx.aggregation = config.aggregation;
    ctx.cluster = config.cluster;
    ctx.label = config.label;
    return ctx;
}

PipelineResult run_pipeline(const KnowledgeGraph& g, const PipelineConfig& config,
                            BatchStats* stats) {
    const PipelineState state = prepare_pipeline(g, config);
    const ExtractContext ctx = make_context(g, state, config);

    PipelineResult out;
    out.results = batch_extract(ctx, config.ecg, config.reuse, stats);

    double inter = 0.0, intra = 0.0, valid = 0.0;
    std::size_t measured = 0;
    for (const auto& [article, result] : out.results) {
        if (result.labeled_clusters.size() < 2) continue;
        std::vector<Cluster> clusters;
        clusters.reserve(result.labeled_clusters.size());
        for (const LabeledCluster& lc : result.labeled_clusters) clusters.push_back(lc.cluster);
        const ValidIndex vi = valid_index(clusters, state.features);
        if (!std::isfinite(vi.valid)) continue;
        inter += vi.inter;
        intra += vi.intra;
        valid += vi.valid;
        ++measured;
    }
    if (measured > 0) {
        out.report.inter = inter / static_cast<double>(measured);
        out.report.intra = intra / static_cast<double>(measured);
        out.report.valid = valid / static_cast<double>(measured);
    }
    for (const auto& [article, result] : out.results) {
        if (!result.labeled_clusters.empty()) ++out.articles_with_clusters;
    }
    return out;
}

void write_facts(std::ostream& out, const std::map<std::string, ArticleResult>& results) {
    for (const auto& [article, result] : results) {
        for (const LabeledCluster& lc : result.labeled_clusters) {
            nlohmann::ordered_json line;
            line["article"] = article;
            line["property"] = lc.label;
            line["values"] = lc.cluster.members;
            out << line.dump() << '\n';
        }
    }
}

std::vector<std::pair<std::string, const LabeledCluster*>> enumerate_clusters(
    const std::map<std::string, ArticleResult>& results) {
    std::vector<std::pair<std::string, const LabeledCluster*>> out;
    for (const auto& [article, result] : results) {
        for (std::size_t i = 0; i < result.labeled_clusters.size(); ++i) {
            out.emplace_back(article + "#" + std::to_string(i), &result.labeled_clusters[i]);
        }
    }
    return out;
}

std::size_t count_fact_triples(const std::map<std::string, ArticleResult>& results) {
    std::size_t triples = 0;
    for (const auto& [article, result] : results) {
        for (const LabeledCluster& lc : result.labeled_clusters)
            triples += lc.cluster.members.size();
    }
    return triples;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["inter"] = report.inter;
    j["intra"] = report.intra;
    j["valid"] = report.valid;
    nlohmann::ordered_json curve = nlohmann::ordered_json::object();
    for (const auto& [k, value] : report.m_at_k) curve[std::to_string(k)] = value;
    j["m_at_k"] = curve;
    if (report.closeness) {
        j["closeness"] = *report.closeness;
    } else {
        j["closeness"] = nullptr;
    }
    if (report.precision) {
        j["precision"] = *report.precision;
    } else {
        j["precision"] = nullptr;
    }
    return j;
}

void write_batch_stats_csv(const BatchStats& stats, std::ostream& out) {
    out << "article,level,inherited,fresh,merged,t_reuse_us,t_direct_us,saved_ratio\n";
    for (const BatchNodeStats& row : stats.nodes) {
        double saved = 0.0;
        if (row.direct_micros > 0) {
            saved = static_cast<double>(row.direct_micros - row.reuse_micros) /
                    static_cast<double>(row.direct_micros);
        }
        out << row.article << ',' << row.level << ',' << row.inherited << ',' << row.fresh
            << ',' << row.merged << ',' << row.reuse_micros << ',' << row.direct_micros << ','
            << saved << '\n';
    }
}

}  // namespace linkbox
