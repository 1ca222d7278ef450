#include "linkbox/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace linkbox {

const char* label_strategy_name(LabelStrategy strategy) {
    switch (strategy) {
        case LabelStrategy::Mf: return "mf";
        case LabelStrategy::Mfi: return "mfi";
        case LabelStrategy::Zlca: return "zlca";
    }
    return "?";
}

ClusterTaxonomy union_taxonomy(const std::vector<const IsaTaxonomy*>& taxonomies) {
    if (taxonomies.empty()) throw std::invalid_argument("union_taxonomy needs >= 1 taxonomy");

    ClusterTaxonomy ct;
    for (const IsaTaxonomy* tax : taxonomies) {
        ct.members.push_back(tax->root);
        for (const std::string& c : tax->nodes) {
            ct.categories.insert(c);
            ++ct.tf[c];
        }
        for (const IsaEdge& edge : tax->edges) {
            ct.parents_of[edge.child].insert(edge.parent);
        }
    }
    std::sort(ct.members.begin(), ct.members.end());
    ct.members.erase(std::unique(ct.members.begin(), ct.members.end()), ct.members.end());

    // Ancestors per member by upward reachability.
    for (const std::string& member : ct.members) {
        std::set<std::string>& ancestors = ct.member_ancestors[member];
        std::deque<std::string> frontier{member};
        std::set<std::string> seen{member};
        while (!frontier.empty()) {
            const std::string node = frontier.front();
            frontier.pop_front();
            auto it = ct.parents_of.find(node);
            if (it == ct.parents_of.end()) continue;
            for (const std::string& parent : it->second) {
                if (!seen.insert(parent).second) continue;
                ancestors.insert(parent);
                frontier.push_back(parent);
            }
        }
    }

    // Generational BFS depth, minimum over members.
    std::deque<std::string> frontier(ct.members.begin(), ct.members.end());
    std::map<std::string, std::size_t> depth;
    for (const std::string& member : ct.members) depth[member] = 0;
    while (!frontier.empty()) {
        const std::string node = frontier.front();
        frontier.pop_front();
        auto it = ct.parents_of.find(node);
        if (it == ct.parents_of.end()) continue;
        for (const std::string& parent : it->second) {
            if (depth.count(parent)) continue;
            depth[parent] = depth.at(node) + 1;
            frontier.push_back(parent);
        }
    }
    for (const std::string& c : ct.categories) {
        auto it = depth.find(c);
        if (it != depth.end()) ct.level[c] = it->second;
    }
    return ct;
}

double coverage(const ClusterTaxonomy& ct, const std::string& category) {
    if (!ct.categories.count(category))
        throw std::out_of_range("category not in cluster taxonomy: " + category);
    std::size_t covered = 0;
    for (const std::string& member : ct.members) {
        if (ct.member_ancestors.at(member).count(category)) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(ct.members.size());
}

std::string label_mf(const ClusterTaxonomy& ct) {
    if (ct.tf.empty()) throw NoLabelError("cluster taxonomy holds no category");
    const std::string* best = nullptr;
    std::size_t best_tf = 0;
    for (const auto& [category, count] : ct.tf) {
        if (!best || count > best_tf) {
            best = &category;
            best_tf = count;
        }
    }
    return *best;
}

std::string label_mfi(const ClusterTaxonomy& ct, const TaxonomyCorpus& corpus) {
    if (ct.tf.empty()) throw NoLabelError("cluster taxonomy holds no category");
    const std::string* best = nullptr;
    double best_score = 0.0;
    for (const auto& [category, count] : ct.tf) {
        const double idf = category_idf(corpus, category);
        if (std::isinf(idf)) continue;  // absent from the corpus: not a candidate
        const double score = static_cast<double>(count) * idf;
        if (!best || score > best_score) {
            best = &category;
            best_score = score;
        }
    }
    if (!best) throw NoLabelError("no category with corpus idf");
    return *best;
}

ZlcaResult zeta_lca_search(const ClusterTaxonomy& ct, const TaxonomyCorpus& corpus,
                           const LabelConfig& config) {
    if (config.zeta <= 0.0 || config.zeta > 1.0)
        throw std::invalid_argument("zeta must lie in (0,1]");
    if (ct.categories.empty()) throw NoLabelError("cluster taxonomy holds no category");

    const double member_count = static_cast<double>(ct.members.size());
    const double floor = 1.0 / member_count;
    constexpr double kEps = 1e-12;

    // Coverage is static; compute once.
    std::map<std::string, double> cover;
    for (const std::string& c : ct.categories) cover[c] = coverage(ct, c);

    double zeta = config.zeta;
    while (true) {
        for (std::size_t lvl = 1; lvl <= config.max_level; ++lvl) {
            const std::string* best = nullptr;
            double best_idf = 0.0;
            for (const auto& [category, depth] : ct.level) {
                if (depth != lvl) continue;
                if (cover.at(category) + kEps < zeta) continue;
                const double idf = category_idf(corpus, category);
                if (std::isinf(idf)) continue;
                // Max idf; ties by higher coverage, then lexicographic id.
                if (!best || idf > best_idf ||
                    (idf == best_idf && (cover.at(category) > cover.at(*best) ||
                                         (cover.at(category) == cover.at(*best) &&
                                          category < *best)))) {
                    best = &category;
                    best_idf = idf;
                }
            }
            if (best) {
                return {*best, cover.at(*best), lvl, zeta};
            }
        }
        if (zeta <= floor + kEps) break;
        zeta = std::max(zeta - floor, floor);
    }
    throw NoLabelError("no category reaches coverage 1/|X| within the level limit");
}

LabeledCluster label_zeta_lca(const Cluster& cluster, const ClusterTaxonomy& ct,
                              const TaxonomyCorpus& corpus, const LabelConfig& config) {
    const ZlcaResult found = zeta_lca_search(ct, corpus, config);
    return {cluster, found.label, found.coverage, LabelStrategy::Zlca};
}

}  // namespace linkbox
