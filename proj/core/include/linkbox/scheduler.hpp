#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkbox/gmeans.hpp"
#include "linkbox/kg.hpp"
#include "linkbox/labeling.hpp"
#include "linkbox/rank_aggregation.hpp"
#include "linkbox/taxonomy.hpp"

namespace linkbox {

struct EcgConfig {
    double tau = 0.05;  // minimum directional overlap worth reusing
    NeighborMode neighbor_mode = NeighborMode::Out;
};

// J(u->v) = |N(u) ∩ N(v)| / |N(v)|; deliberately asymmetric. 0 when v has no
// neighbors.
double overlap_jaccard(const KnowledgeGraph& g, const std::string& u, const std::string& v,
                       NeighborMode mode = NeighborMode::Out);

struct EcgEdge {
    std::string from;  // parent candidate
    std::string to;    // may inherit from `from`
    double weight = 0.0;
};

struct Ecg {
    std::set<std::string> nodes;  // endpoints of kept edges
    std::vector<EcgEdge> edges;   // sorted by (from, to)
    std::map<std::string, std::vector<std::size_t>> out_edges;
    std::map<std::string, std::vector<std::size_t>> in_edges;

    std::size_t degree(const std::string& id) const;  // in + out
};

struct EcgBuildStats {
    std::size_t pairs_scanned = 0;
    std::size_t pruned_by_degree = 0;  // rejected by the O(1) bound alone
    std::size_t jaccard_evaluated = 0;
    std::size_t edges_kept = 0;
};

// One directed edge per hyperlink u->v with J(u->v) > tau. Pairs failing
// min(|N(u)|,|N(v)|)/|N(v)| > tau are dropped before any intersection work.
Ecg build_ecg(const KnowledgeGraph& g, const EcgConfig& config = {},
              EcgBuildStats* stats = nullptr);

struct InheritanceTree {
    std::string root;
    std::vector<std::string> order;  // Prim insertion order, root first
    std::map<std::string, std::string> parent;
    std::map<std::string, std::size_t> level;  // root = 0
    double weight = 0.0;
};

struct InheritanceForest {
    std::vector<InheritanceTree> trees;
    double total_weight = 0.0;
};

// Prim per weak component, rooted at the highest-degree node (ties by id),
// always taking the heaviest directed edge leaving the visited set. Nodes a
// component's directed edges cannot reach start trees of their own.
InheritanceForest prim_max_spanning(const Ecg& ecg);

// Best linear order weight by exhaustive permutation; reference oracle for
// instances of at most 10 nodes.
double bio_weight_bruteforce(const Ecg& ecg);

struct ArticleResult {
    std::string article;
    std::vector<LabeledCluster> labeled_clusters;
};

// Read-only bundle threaded through extraction.
struct ExtractContext {
    const KnowledgeGraph* graph = nullptr;
    const CoocStats* stats = nullptr;
    const TaxonomyCorpus* corpus = nullptr;
    const std::map<std::string, SparseVector>* features = nullptr;
    AggregationConfig aggregation;
    ClusterConfig cluster;
    LabelConfig label;
};

// Related (post-filter) linked entities that carry a nonempty taxonomy; the
// set every cluster result must partition.
std::vector<std::string> clusterable_entities(const ExtractContext& ctx,
                                              const std::string& article);

ArticleResult cluster_article_direct(const ExtractContext& ctx, const std::string& article);

struct InheritOutcome {
    ArticleResult result;
    std::size_t inherited = 0;  // entities taken over from the parent
    std::size_t fresh = 0;      // entities clustered from scratch
    std::size_t merged = 0;     // label-equal merges between the two parts
};

// Three steps: inherit the parent's assignments on the neighborhood overlap,
// cluster-then-label the remainder, merge clusters sharing a label. A null
// parent falls back to direct clustering.
InheritOutcome inherit_and_cluster(const ExtractContext& ctx, const ArticleResult* parent,
                                   const std::string& child);

struct BatchNodeStats {
    std::string article;
    std::size_t level = 0;
    std::size_t inherited = 0;
    std::size_t fresh = 0;
    std::size_t merged = 0;
    long long reuse_micros = 0;
    long long direct_micros = -1;  // measured only when requested
};

struct BatchStats {
    std::vector<BatchNodeStats> nodes;
    std::size_t peak_retained = 0;  // results held for pending inheritance
    // also time the direct path for inherited nodes (analysis only)
    bool measure_direct = false;
};

// Level-ordered extraction over the inheritance forest; roots and entities
// outside the ECG are clustered directly. Level h results stay retained
// until level h+1 completes.
std::map<std::string, ArticleResult> batch_extract(const ExtractContext& ctx,
                                                   const EcgConfig& ecg_config, bool reuse,
                                                   BatchStats* stats = nullptr);

}  // namespace linkbox
