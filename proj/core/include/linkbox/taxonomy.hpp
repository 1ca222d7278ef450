#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "linkbox/kg.hpp"
#include "linkbox/sparse_vector.hpp"

namespace linkbox {

struct TaxonomyConfig {
    double alpha_edge = 0.2;    // edge enters only when its score exceeds this
    std::size_t max_depth = 4;  // hypernym levels above the entity
};

struct IsaEdge {
    std::string child;
    std::string parent;
    double weight = 0.0;  // p(parent | child)
};

// Per-entity DAG of hypernym categories. Edges point from child to parent.
struct IsaTaxonomy {
    std::string root;
    std::set<std::string> nodes;  // categories only; root excluded
    std::vector<IsaEdge> edges;   // sorted by (child, parent)
    std::map<std::string, double> confidence;  // p(c|e), max path product
    std::map<std::string, std::vector<std::string>> parents_of;

    bool contains(const std::string& category) const { return nodes.count(category) != 0; }
};

// Lowercased words of a category name, split on anything that is not an
// ASCII letter, digit or a multi-byte UTF-8 sequence. No stemming.
std::vector<std::string> tokenize_category(const std::string& name);

// p(s|e) = f(s) / |cat(e)| with f(s) the number of categories of e whose
// name contains word s.
double word_score(const KnowledgeGraph& g, const std::string& e, const std::string& word);

// p(c|e) = mean word score of the unique words in c's name.
double category_score(const KnowledgeGraph& g, const std::string& e,
                      const std::string& category);

// Level-wise hypernym expansion from e; edges that would close a cycle are
// refused, so the result is a DAG.
IsaTaxonomy build_isa(const KnowledgeGraph& g, const std::string& e,
                      const TaxonomyConfig& config = {});

// Max product of edge weights over all root-to-c paths (precomputed).
double path_confidence(const IsaTaxonomy& tax, const std::string& category);

struct TaxonomyCorpus {
    std::map<std::string, IsaTaxonomy> by_entity;
    std::map<std::string, std::size_t> doc_count;  // #taxonomies containing category

    std::size_t entity_count() const { return by_entity.size(); }
    const IsaTaxonomy* find(const std::string& entity) const;
};

// Taxonomies for the given entities (two-phase: build all, then count).
TaxonomyCorpus build_corpus(const KnowledgeGraph& g, const TaxonomyConfig& config,
                            const std::vector<std::string>& entities);

// log(N_entities / #taxonomies containing c); +inf when c appears nowhere.
double category_idf(const TaxonomyCorpus& corpus, const std::string& category);

// w(c) = path_confidence(c) * idf(c) over the taxonomy's categories.
SparseVector feature_vector(const IsaTaxonomy& tax, const TaxonomyCorpus& corpus);

}  // namespace linkbox
