#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkbox/gmeans.hpp"
#include "linkbox/taxonomy.hpp"

namespace linkbox {

struct LabelConfig {
    double zeta = 0.8;          // required member coverage
    std::size_t max_level = 5;  // search depth above the members
};

enum class LabelStrategy { Mf, Mfi, Zlca };

const char* label_strategy_name(LabelStrategy strategy);

struct NoLabelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Union of the members' IsA taxonomies with weights dropped.
struct ClusterTaxonomy {
    std::vector<std::string> members;  // sorted entity ids
    std::set<std::string> categories;
    std::map<std::string, std::set<std::string>> parents_of;  // node -> parents
    std::map<std::string, std::size_t> tf;  // #member taxonomies containing category
    // Ancestor categories per member (reverse reachability, precomputed).
    std::map<std::string, std::set<std::string>> member_ancestors;
    // Min BFS depth of each category above the member set; direct parents = 1.
    std::map<std::string, std::size_t> level;
};

ClusterTaxonomy union_taxonomy(const std::vector<const IsaTaxonomy*>& taxonomies);

// Fraction of members that have `category` as an ancestor.
double coverage(const ClusterTaxonomy& ct, const std::string& category);

// Most frequent category; ties broken by lexicographic id.
std::string label_mf(const ClusterTaxonomy& ct);

// argmax tf(c) * idf(c); ties broken by lexicographic id.
std::string label_mfi(const ClusterTaxonomy& ct, const TaxonomyCorpus& corpus);

struct ZlcaResult {
    std::string label;
    double coverage = 0.0;
    std::size_t level = 0;
    double zeta_effective = 0.0;  // the coverage bound that finally succeeded
};

// Level-wise bottom-up search for the max-idf category covering at least
// zeta of the members; on exhaustion zeta is relaxed in steps of 1/|X| down
// to 1/|X|. Throws NoLabelError when the union holds no category at all.
ZlcaResult zeta_lca_search(const ClusterTaxonomy& ct, const TaxonomyCorpus& corpus,
                           const LabelConfig& config = {});

struct LabeledCluster {
    Cluster cluster;
    std::string label;
    double coverage = 0.0;
    LabelStrategy strategy = LabelStrategy::Zlca;
};

LabeledCluster label_zeta_lca(const Cluster& cluster, const ClusterTaxonomy& ct,
                              const TaxonomyCorpus& corpus, const LabelConfig& config = {});

}  // namespace linkbox
