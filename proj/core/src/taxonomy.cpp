#include "linkbox/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace linkbox {

std::vector<std::string> tokenize_category(const std::string& name) {
    std::vector<std::string> words;
    std::string current;
    for (unsigned char c : name) {
        const bool word_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                               (c >= '0' && c <= '9') || c >= 0x80;
        if (word_char) {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                                   : static_cast<char>(c));
        } else if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

double word_score(const KnowledgeGraph& g, const std::string& e, const std::string& word) {
    const std::set<std::string>& cats = g.categories(e);
    if (cats.empty()) throw std::domain_error("word_score undefined: '" + e + "' has no categories");
    std::size_t containing = 0;
    for (const std::string& c : cats) {
        const std::vector<std::string> words = tokenize_category(c);
        if (std::find(words.begin(), words.end(), word) != words.end()) ++containing;
    }
    return static_cast<double>(containing) / static_cast<double>(cats.size());
}

double category_score(const KnowledgeGraph& g, const std::string& e,
                      const std::string& category) {
    std::vector<std::string> words = tokenize_category(category);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    if (words.empty()) throw std::invalid_argument("category name has no words: " + category);
    double sum = 0.0;
    for (const std::string& w : words) sum += word_score(g, e, w);
    return sum / static_cast<double>(words.size());
}

namespace {

// True when `target` is reachable from `from` over child->parent edges.
bool reaches(const std::map<std::string, std::vector<std::string>>& parents_of,
             const std::string& from, const std::string& target) {
    if (from == target) return true;
    std::set<std::string> seen{from};
    std::deque<std::string> frontier{from};
    while (!frontier.empty()) {
        const std::string node = frontier.front();
        frontier.pop_front();
        auto it = parents_of.find(node);
        if (it == parents_of.end()) continue;
        for (const std::string& parent : it->second) {
            if (parent == target) return true;
            if (seen.insert(parent).second) frontier.push_back(parent);
        }
    }
    return false;
}

}  // namespace

IsaTaxonomy build_isa(const KnowledgeGraph& g, const std::string& e,
                      const TaxonomyConfig& config) {
    if (config.alpha_edge <= 0.0) throw std::invalid_argument("alpha_edge must be positive");
    if (!g.has_node(e)) throw std::out_of_range("unknown node id: " + e);

    IsaTaxonomy tax;
    tax.root = e;

    std::set<std::string> seen{e};
    std::vector<std::string> level{e};
    for (std::size_t depth = 0; depth < config.max_depth && !level.empty(); ++depth) {
        std::vector<std::string> next;
        for (const std::string& child : level) {
            if (g.categories(child).empty()) continue;
            for (const std::string& parent : g.categories(child)) {
                if (parent == child) continue;
                const double score = category_score(g, child, parent);
                if (score <= config.alpha_edge) continue;
                if (reaches(tax.parents_of, parent, child)) continue;  // would close a cycle
                const bool fresh = seen.insert(parent).second;
                tax.parents_of[child].push_back(parent);
                tax.edges.push_back({child, parent, score});
                tax.nodes.insert(parent);
                if (fresh) next.push_back(parent);
            }
        }
        level = std::move(next);
    }

    std::sort(tax.edges.begin(), tax.edges.end(), [](const IsaEdge& a, const IsaEdge& b) {
        return a.child != b.child ? a.child < b.child : a.parent < b.parent;
    });
    for (auto& [child, parents] : tax.parents_of) std::sort(parents.begin(), parents.end());

    // Max path product, propagated outward from the root. The DAG is small;
    // relax until fixpoint instead of sorting topologically.
    std::map<std::string, double> conf;
    conf[e] = 1.0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const IsaEdge& edge : tax.edges) {
            auto it = conf.find(edge.child);
            if (it == conf.end()) continue;
            const double candidate = it->second * edge.weight;
            auto [pit, inserted] = conf.emplace(edge.parent, candidate);
            if (!inserted && candidate > pit->second) {
                pit->second = candidate;
                changed = true;
            } else if (inserted) {
                changed = true;
            }
        }
    }
    conf.erase(e);
    tax.confidence = std::move(conf);
    return tax;
}

double path_confidence(const IsaTaxonomy& tax, const std::string& category) {
    auto it = tax.confidence.find(category);
    if (it == tax.confidence.end())
        throw std::out_of_range("category not in taxonomy: " + category);
    return it->second;
}

const IsaTaxonomy* TaxonomyCorpus::find(const std::string& entity) const {
    auto it = by_entity.find(entity);
    return it == by_entity.end() ? nullptr : &it->second;
}

TaxonomyCorpus build_corpus(const KnowledgeGraph& g, const TaxonomyConfig& config,
                            const std::vector<std::string>& entities) {
    TaxonomyCorpus corpus;
    for (const std::string& e : entities) {
        corpus.by_entity.emplace(e, build_isa(g, e, config));
    }
    for (const auto& [entity, tax] : corpus.by_entity) {
        for (const std::string& c : tax.nodes) ++corpus.doc_count[c];
    }
    return corpus;
}

double category_idf(const TaxonomyCorpus& corpus, const std::string& category) {
    auto it = corpus.doc_count.find(category);
    if (it == corpus.doc_count.end()) return std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(corpus.entity_count()) /
                    static_cast<double>(it->second));
}

SparseVector feature_vector(const IsaTaxonomy& tax, const TaxonomyCorpus& corpus) {
    SparseVector features;
    for (const std::string& c : tax.nodes) {
        features.set(c, tax.confidence.at(c) * category_idf(corpus, c));
    }
    return features;
}

}  // namespace linkbox
