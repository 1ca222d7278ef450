#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "linkbox/config.hpp"
#include "linkbox/kg.hpp"
#include "linkbox/metrics.hpp"
#include "linkbox/scheduler.hpp"

namespace linkbox {

struct EvalReport {
    double inter = 0.0;
    double intra = 0.0;
    double valid = 0.0;
    std::map<std::size_t, double> m_at_k;
    std::optional<double> closeness;
    std::optional<double> precision;
};

struct PipelineResult {
    std::map<std::string, ArticleResult> results;
    // inter/intra/valid averaged over articles with >= 2 clusters.
    EvalReport report;
    std::size_t articles_with_clusters = 0;
};

// Precomputed shared state: co-occurrence counts, taxonomies for every
// categorized entity, and their feature vectors.
struct PipelineState {
    CoocStats stats;
    TaxonomyCorpus corpus;
    std::map<std::string, SparseVector> features;
};

PipelineState prepare_pipeline(const KnowledgeGraph& g, const PipelineConfig& config);

ExtractContext make_context(const KnowledgeGraph& g, const PipelineState& state,
                            const PipelineConfig& config);

// load -> filter -> taxonomy + features -> (reuse-scheduled) cluster ->
// label. Deterministic for a fixed (input, seed, config).
PipelineResult run_pipeline(const KnowledgeGraph& g, const PipelineConfig& config,
                            BatchStats* stats = nullptr);

// Canonical JSON-lines facts: {"article": ..., "property": ..., "values": [...]};
// articles ascending, clusters by (property, members). Byte-stable.
void write_facts(std::ostream& out, const std::map<std::string, ArticleResult>& results);

// Cluster ids are "<article>#<index>" over the article's canonical order.
std::vector<std::pair<std::string, const LabeledCluster*>> enumerate_clusters(
    const std::map<std::string, ArticleResult>& results);

// Fact count treats every <article, property, value entity> triple as one fact.
std::size_t count_fact_triples(const std::map<std::string, ArticleResult>& results);

nlohmann::ordered_json report_to_json(const EvalReport& report);

void write_batch_stats_csv(const BatchStats& stats, std::ostream& out);

}  // namespace linkbox
