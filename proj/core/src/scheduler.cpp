#include "linkbox/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "linkbox/rng.hpp"

namespace linkbox {

namespace {

std::size_t sorted_intersection_size(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace

double overlap_jaccard(const KnowledgeGraph& g, const std::string& u, const std::string& v,
                       NeighborMode mode) {
    const std::vector<std::string> nu = g.neighbors(u, mode);
    const std::vector<std::string> nv = g.neighbors(v, mode);
    if (nv.empty()) return 0.0;
    return static_cast<double>(sorted_intersection_size(nu, nv)) /
           static_cast<double>(nv.size());
}

std::size_t Ecg::degree(const std::string& id) const {
    std::size_t d = 0;
    if (auto it = out_edges.find(id); it != out_edges.end()) d += it->second.size();
    if (auto it = in_edges.find(id); it != in_edges.end()) d += it->second.size();
    return d;
}

Ecg build_ecg(const KnowledgeGraph& g, const EcgConfig& config, EcgBuildStats* stats) {
    if (config.tau < 0.0 || config.tau >= 1.0)
        throw std::invalid_argument("tau must lie in [0,1)");

    Ecg ecg;
    EcgBuildStats local;

    // Neighborhoods are materialized once; the inner loop only touches refs.
    std::map<std::string, std::vector<std::string>> hoods;
    auto hood = [&](const std::string& id) -> const std::vector<std::string>& {
        auto it = hoods.find(id);
        if (it == hoods.end())
            it = hoods.emplace(id, g.neighbors(id, config.neighbor_mode)).first;
        return it->second;
    };

    for (const auto& [u, targets] : g.links) {
        const std::vector<std::string>& nu = hood(u);
        for (const std::string& v : targets) {
            ++local.pairs_scanned;
            const std::vector<std::string>& nv = hood(v);
            if (nv.empty()) {
                ++local.pruned_by_degree;
                continue;
            }
            const double bound = static_cast<double>(std::min(nu.size(), nv.size())) /
                                 static_cast<double>(nv.size());
            if (bound <= config.tau) {
                ++local.pruned_by_degree;
                continue;
            }
            ++local.jaccard_evaluated;
            const double j = static_cast<double>(sorted_intersection_size(nu, nv)) /
                             static_cast<double>(nv.size());
            if (j > config.tau) {
                ecg.edges.push_back({u, v, j});
                ++local.edges_kept;
            }
        }
    }

    std::sort(ecg.edges.begin(), ecg.edges.end(), [](const EcgEdge& a, const EcgEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t i = 0; i < ecg.edges.size(); ++i) {
        ecg.nodes.insert(ecg.edges[i].from);
        ecg.nodes.insert(ecg.edges[i].to);
        ecg.out_edges[ecg.edges[i].from].push_back(i);
        ecg.in_edges[ecg.edges[i].to].push_back(i);
    }
    if (stats) *stats = local;
    return ecg;
}

namespace {

std::vector<std::set<std::string>> weak_components(const Ecg& ecg) {
    std::vector<std::set<std::string>> components;
    std::set<std::string> assigned;
    for (const std::string& start : ecg.nodes) {
        if (assigned.count(start)) continue;
        std::set<std::string> component;
        std::deque<std::string> frontier{start};
        component.insert(start);
        while (!frontier.empty()) {
            const std::string node = frontier.front();
            frontier.pop_front();
            auto visit = [&](const std::string& next) {
                if (component.insert(next).second) frontier.push_back(next);
            };
            if (auto it = ecg.out_edges.find(node); it != ecg.out_edges.end()) {
                for (std::size_t e : it->second) visit(ecg.edges[e].to);
            }
            if (auto it = ecg.in_edges.find(node); it != ecg.in_edges.end()) {
                for (std::size_t e : it->second) visit(ecg.edges[e].from);
            }
        }
        assigned.insert(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

std::string pick_root(const Ecg& ecg, const std::set<std::string>& candidates) {
    const std::string* best = nullptr;
    std::size_t best_degree = 0;
    for (const std::string& node : candidates) {
        const std::size_t d = ecg.degree(node);
        if (!best || d > best_degree) {
            best = &node;
            best_degree = d;
        }
    }
    return *best;  // set iteration is ascending, so ties fall to the smallest id
}

}  // namespace

InheritanceForest prim_max_spanning(const Ecg& ecg) {
    InheritanceForest forest;
    for (const std::set<std::string>& component : weak_components(ecg)) {
        std::set<std::string> remaining = component;
        while (!remaining.empty()) {
            InheritanceTree tree;
            tree.root = pick_root(ecg, remaining);
            tree.order.push_back(tree.root);
            tree.level[tree.root] = 0;
            remaining.erase(tree.root);

            std::set<std::string> visited{tree.root};
            while (true) {
                const EcgEdge* best = nullptr;
                for (const std::string& node : visited) {
                    auto it = ecg.out_edges.find(node);
                    if (it == ecg.out_edges.end()) continue;
                    for (std::size_t e : it->second) {
                        const EcgEdge& edge = ecg.edges[e];
                        if (!remaining.count(edge.to)) continue;
                        if (!best || edge.weight > best->weight ||
                            (edge.weight == best->weight &&
                             (edge.to < best->to ||
                              (edge.to == best->to && edge.from < best->from)))) {
                            best = &edge;
                        }
                    }
                }
                if (!best) break;  // no directed edge leaves the visited set
                visited.insert(best->to);
                remaining.erase(best->to);
                tree.order.push_back(best->to);
                tree.parent[best->to] = best->from;
                tree.level[best->to] = tree.level.at(best->from) + 1;
                tree.weight += best->weight;
            }
            forest.total_weight += tree.weight;
            forest.trees.push_back(std::move(tree));
        }
    }
    return forest;
}

double bio_weight_bruteforce(const Ecg& ecg) {
    if (ecg.nodes.size() > 10)
        throw std::invalid_argument("bio_weight_bruteforce limited to 10 nodes");
    std::vector<std::string> nodes(ecg.nodes.begin(), ecg.nodes.end());
    if (nodes.size() < 2) return 0.0;

    std::map<std::pair<std::string, std::string>, double> weight;
    for (const EcgEdge& edge : ecg.edges) weight[{edge.from, edge.to}] = edge.weight;
    auto edge_weight = [&](const std::string& a, const std::string& b) {
        auto it = weight.find({a, b});
        return it == weight.end() ? 0.0 : it->second;
    };

    double best = 0.0;
    std::sort(nodes.begin(), nodes.end());
    do {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            total += edge_weight(nodes[i], nodes[i + 1]);
        best = std::max(best, total);
    } while (std::next_permutation(nodes.begin(), nodes.end()));
    return best;
}

std::vector<std::string> clusterable_entities(const ExtractContext& ctx,
                                              const std::string& article) {
    const FilterResult filtered =
        filter_noise(*ctx.graph, *ctx.stats, article, ctx.aggregation);
    std::vector<std::string> out;
    for (const std::string& e : filtered.related) {
        const IsaTaxonomy* tax = ctx.corpus->find(e);
        if (tax && !tax->nodes.empty()) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::uint64_t article_seed(const ExtractContext& ctx, const std::string& article) {
    return Rng::mix(ctx.cluster.rng_seed, hash_id(article.c_str()));
}

ClusterTaxonomy cluster_union(const ExtractContext& ctx, const Cluster& cluster) {
    std::vector<const IsaTaxonomy*> taxonomies;
    taxonomies.reserve(cluster.members.size());
    for (const std::string& member : cluster.members)
        taxonomies.push_back(ctx.corpus->find(member));
    return union_taxonomy(taxonomies);
}

std::vector<LabeledCluster> cluster_and_label(const ExtractContext& ctx,
                                              const std::string& article,
                                              const std::vector<std::string>& entities) {
    std::vector<LabeledCluster> labeled;
    if (entities.empty()) return labeled;

    std::vector<DataPoint> points;
    points.reserve(entities.size());
    for (const std::string& e : entities) points.push_back({e, ctx.features->at(e)});

    ClusterConfig config = ctx.cluster;
    config.rng_seed = article_seed(ctx, article);
    for (const Cluster& cluster : gmeans_cluster(points, config)) {
        labeled.push_back(label_zeta_lca(cluster, cluster_union(ctx, cluster),
                                         *ctx.corpus, ctx.label));
    }
    return labeled;
}

void sort_result(ArticleResult& result) {
    for (LabeledCluster& lc : result.labeled_clusters)
        std::sort(lc.cluster.members.begin(), lc.cluster.members.end());
    std::sort(result.labeled_clusters.begin(), result.labeled_clusters.end(),
              [](const LabeledCluster& a, const LabeledCluster& b) {
                  if (a.label != b.label) return a.label < b.label;
                  return a.cluster.members < b.cluster.members;
              });
}

Cluster rebuild_cluster(const ExtractContext& ctx, std::vector<std::string> members) {
    Cluster c;
    std::sort(members.begin(), members.end());
    c.members = std::move(members);
    std::vector<const SparseVector*> vecs;
    vecs.reserve(c.members.size());
    for (const std::string& m : c.members) vecs.push_back(&ctx.features->at(m));
    c.centroid = mean_vector(vecs);
    return c;
}

}  // namespace

ArticleResult cluster_article_direct(const ExtractContext& ctx, const std::string& article) {
    ArticleResult result;
    result.article = article;
    result.labeled_clusters = cluster_and_label(ctx, article, clusterable_entities(ctx, article));
    sort_result(result);
    return result;
}

InheritOutcome inherit_and_cluster(const ExtractContext& ctx, const ArticleResult* parent,
                                   const std::string& child) {
    if (!parent) {
        return {cluster_article_direct(ctx, child), 0, 0, 0};
    }

    InheritOutcome outcome;
    outcome.result.article = child;

    const std::vector<std::string> clusterable = clusterable_entities(ctx, child);
    std::set<std::string> pending(clusterable.begin(), clusterable.end());

    // Step 1: adopt the parent's cluster assignment on the overlap.
    std::vector<LabeledCluster> inherited;
    for (const LabeledCluster& parent_cluster : parent->labeled_clusters) {
        std::vector<std::string> taken;
        for (const std::string& member : parent_cluster.cluster.members) {
            if (pending.erase(member)) taken.push_back(member);
        }
        if (taken.empty()) continue;
        outcome.inherited += taken.size();
        Cluster cluster = rebuild_cluster(ctx, std::move(taken));
        const ClusterTaxonomy ct = cluster_union(ctx, cluster);
        double cov = 0.0;
        if (ct.categories.count(parent_cluster.label)) cov = coverage(ct, parent_cluster.label);
        inherited.push_back({std::move(cluster), parent_cluster.label, cov,
                             parent_cluster.strategy});
    }

    // Step 2: cluster-then-label whatever could not be inherited.
    std::vector<std::string> remainder(pending.begin(), pending.end());
    outcome.fresh = remainder.size();
    std::vector<LabeledCluster> fresh = cluster_and_label(ctx, child, remainder);

    // Step 3: merge inherited and fresh clusters that share a label.
    std::set<std::string> inherited_labels;
    std::set<std::string> fresh_labels;
    for (const LabeledCluster& lc : inherited) inherited_labels.insert(lc.label);
    for (const LabeledCluster& lc : fresh) fresh_labels.insert(lc.label);

    std::map<std::string, std::vector<std::string>> merged_members;
    auto classify = [&](std::vector<LabeledCluster>& side) {
        for (LabeledCluster& lc : side) {
            if (inherited_labels.count(lc.label) && fresh_labels.count(lc.label)) {
                auto& members = merged_members[lc.label];
                members.insert(members.end(), lc.cluster.members.begin(),
                               lc.cluster.members.end());
            } else {
                outcome.result.labeled_clusters.push_back(std::move(lc));
            }
        }
    };
    classify(inherited);
    classify(fresh);
    for (auto& [label, members] : merged_members) {
        ++outcome.merged;
        Cluster cluster = rebuild_cluster(ctx, std::move(members));
        const ClusterTaxonomy ct = cluster_union(ctx, cluster);
        const double cov = ct.categories.count(label) ? coverage(ct, label) : 0.0;
        outcome.result.labeled_clusters.push_back(
            {std::move(cluster), label, cov, LabelStrategy::Zlca});
    }

    sort_result(outcome.result);
    return outcome;
}

std::map<std::string, ArticleResult> batch_extract(const ExtractContext& ctx,
                                                   const EcgConfig& ecg_config, bool reuse,
                                                   BatchStats* stats) {
    using Clock = std::chrono::steady_clock;
    std::map<std::string, ArticleResult> results;

    auto record = [&](const std::string& article, std::size_t level,
                      const InheritOutcome& outcome, long long micros) {
        if (!stats) return;
        BatchNodeStats row;
        row.article = article;
        row.level = level;
        row.inherited = outcome.inherited;
        row.fresh = outcome.fresh;
        row.merged = outcome.merged;
        row.reuse_micros = micros;
        if (stats->measure_direct && outcome.inherited > 0) {
            const auto start = Clock::now();
            cluster_article_direct(ctx, article);
            row.direct_micros =
                std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start)
                    .count();
        } else {
            row.direct_micros = micros;
        }
        stats->nodes.push_back(std::move(row));
    };

    std::set<std::string> scheduled;
    if (reuse) {
        const Ecg ecg = build_ecg(*ctx.graph, ecg_config);
        const InheritanceForest forest = prim_max_spanning(ecg);

        // Results a pending child still needs; level h is dropped once level
        // h+1 is complete.
        std::map<std::string, const ArticleResult*> retained;
        std::size_t peak_retained = 0;

        for (const InheritanceTree& tree : forest.trees) {
            std::map<std::size_t, std::vector<std::string>> by_level;
            for (const std::string& node : tree.order) by_level[tree.level.at(node)].push_back(node);

            retained.clear();
            for (const auto& [level, nodes] : by_level) {
                std::map<std::string, const ArticleResult*> current;
                for (const std::string& node : nodes) {
                    const ArticleResult* parent = nullptr;
                    if (auto it = tree.parent.find(node); it != tree.parent.end()) {
                        parent = retained.at(it->second);
                    }
                    const auto start = Clock::now();
                    InheritOutcome outcome = inherit_and_cluster(ctx, parent, node);
                    const long long micros =
                        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                                              start)
                            .count();
                    record(node, level, outcome, micros);
                    auto [it, inserted] = results.emplace(node, std::move(outcome.result));
                    (void)inserted;
                    current[node] = &it->second;
                    scheduled.insert(node);
                    peak_retained = std::max(peak_retained, retained.size() + current.size());
                }
                retained = std::move(current);
            }
        }
        if (stats) stats->peak_retained = std::max(stats->peak_retained, peak_retained);
    }

    for (const std::string& article : ctx.graph->entity_ids()) {
        if (scheduled.count(article)) continue;
        const auto start = Clock::now();
        InheritOutcome outcome{cluster_article_direct(ctx, article), 0, 0, 0};
        const long long micros =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
        record(article, 0, outcome, micros);
        results.emplace(article, std::move(outcome.result));
    }
    return results;
}

}  // namespace linkbox
