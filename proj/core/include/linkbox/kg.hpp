#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace linkbox {

enum class NodeKind { Entity, Category };

// Out  = the article's own linked entities N(e)
// Total/Undirected additionally count articles linking to e
enum class DegreeMode { Out, Total };
enum class NeighborMode { Out, Undirected };

// Immutable once loaded; safe to share across concurrent readers.
struct KnowledgeGraph {
    std::map<std::string, NodeKind> nodes;
    // Linked entities per article in article order, duplicates collapsed to
    // their first occurrence.
    std::map<std::string, std::vector<std::string>> links;
    // Sorted copies for set algebra.
    std::map<std::string, std::vector<std::string>> out_sorted;
    std::map<std::string, std::vector<std::string>> in_sorted;
    std::map<std::string, std::set<std::string>> category_map;
    // n(e): number of distinct articles whose link set contains e.
    std::map<std::string, std::size_t> link_count;
    // N: total number of entity nodes (every entity is an article).
    std::size_t article_count = 0;

    bool has_node(const std::string& id) const { return nodes.count(id) != 0; }
    NodeKind kind(const std::string& id) const;

    // Article-order linked entities; empty for ids without links.
    const std::vector<std::string>& linked_entities(const std::string& id) const;
    // Sorted neighborhood. Out mode returns a reference-backed copy of N(e);
    // Undirected merges out-links with the articles linking to e.
    std::vector<std::string> neighbors(const std::string& id,
                                       NeighborMode mode = NeighborMode::Out) const;
    const std::vector<std::string>& neighbors_sorted(const std::string& id) const;

    std::size_t degree(const std::string& id, DegreeMode mode = DegreeMode::Out) const;
    std::size_t n_linking(const std::string& id) const;  // n(e)
    const std::set<std::string>& categories(const std::string& id) const;

    std::vector<std::string> entity_ids() const;  // sorted, kind == Entity
};

struct LoadOptions {
    // Strict mode rejects dangling references, self-loops and kind
    // mismatches; otherwise they are skipped and reported as warnings.
    bool strict = true;
};

KnowledgeGraph load_graph(std::istream& entities, std::istream& links,
                          std::istream& categories, const LoadOptions& options = {},
                          std::vector<std::string>* warnings = nullptr);

KnowledgeGraph load_graph_files(const std::string& entities_path,
                                const std::string& links_path,
                                const std::string& categories_path,
                                const LoadOptions& options = {},
                                std::vector<std::string>* warnings = nullptr);

// Canonical tab-separated form: nodes, links and category pairs each sorted,
// comments dropped. load(serialize(g)) == g.
void serialize_graph(const KnowledgeGraph& g, std::ostream& entities,
                     std::ostream& links, std::ostream& categories);

// Article-level co-occurrence counts over unordered pairs of linked entities.
struct CoocStats {
    std::map<std::pair<std::string, std::string>, std::size_t> pair_count;
    // occurrence_count(x) = sum of pair_count over pairs containing x
    std::map<std::string, std::size_t> occurrence_count;
    std::size_t total_pairs = 0;

    std::size_t pairs(const std::string& x, const std::string& y) const;
    std::size_t occurrences(const std::string& x) const;
};

CoocStats cooccurrence_stats(const KnowledgeGraph& g);

}  // namespace linkbox
