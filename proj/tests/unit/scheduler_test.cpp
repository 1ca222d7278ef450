#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "linkbox/config.hpp"
#include "linkbox/pipeline.hpp"
#include "linkbox/scheduler.hpp"

using namespace linkbox;
using testsupport::GraphBuilder;

namespace {

Ecg make_ecg(const std::vector<std::tuple<std::string, std::string, double>>& edges) {
    Ecg ecg;
    for (const auto& [from, to, weight] : edges) ecg.edges.push_back({from, to, weight});
    std::sort(ecg.edges.begin(), ecg.edges.end(), [](const EcgEdge& a, const EcgEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t i = 0; i < ecg.edges.size(); ++i) {
        ecg.nodes.insert(ecg.edges[i].from);
        ecg.nodes.insert(ecg.edges[i].to);
        ecg.out_edges[ecg.edges[i].from].push_back(i);
        ecg.in_edges[ecg.edges[i].to].push_back(i);
    }
    return ecg;
}

Ecg make_symmetric(const std::vector<std::tuple<std::string, std::string, double>>& edges) {
    std::vector<std::tuple<std::string, std::string, double>> both;
    for (const auto& [a, b, w] : edges) {
        both.emplace_back(a, b, w);
        both.emplace_back(b, a, w);
    }
    return make_ecg(both);
}

}  // namespace

TEST_CASE("overlap_jaccard is directional") {
    GraphBuilder b;
    b.entity("u").entity("v");
    for (const char* t : {"a", "b", "c", "d"}) b.entity(t);
    b.link("u", "a").link("u", "b").link("u", "c").link("u", "d");
    b.link("v", "a");
    const KnowledgeGraph g = b.build();

    CHECK(overlap_jaccard(g, "u", "v") == doctest::Approx(1.0));   // N(v) ⊆ N(u)
    CHECK(overlap_jaccard(g, "v", "u") == doctest::Approx(0.25));  // 1 of 4
    CHECK(overlap_jaccard(g, "u", "a") == 0.0);                    // |N(a)| = 0
    CHECK(overlap_jaccard(g, "u", "u") == doctest::Approx(1.0));

    GraphBuilder same;
    same.entity("x").entity("y").entity("m");
    same.link("x", "m").link("y", "m");
    CHECK(overlap_jaccard(same.build(), "x", "y") == doctest::Approx(1.0));
}

TEST_CASE("build_ecg prunes by degree without changing the result") {
    // the worked bound: tau=0.1, |N(u)| = 10, |N(v)| = 100 -> pruned
    GraphBuilder b;
    b.entity("u").entity("v");
    for (int i = 0; i < 120; ++i) b.entity("t" + std::to_string(i));
    for (int i = 0; i < 9; ++i) b.link("u", "t" + std::to_string(i));
    b.link("u", "v");
    for (int i = 0; i < 100; ++i) b.link("v", "t" + std::to_string(i));
    const KnowledgeGraph g = b.build();
    REQUIRE(g.neighbors("u").size() == 10);
    REQUIRE(g.neighbors("v").size() == 100);

    EcgConfig cfg;
    cfg.tau = 0.1;
    EcgBuildStats stats;
    const Ecg ecg = build_ecg(g, cfg, &stats);
    bool has_uv = false;
    for (const EcgEdge& e : ecg.edges) has_uv |= (e.from == "u" && e.to == "v");
    CHECK(!has_uv);
    CHECK(stats.pruned_by_degree >= 1);  // u->v never reaches the intersection

    // tau = 0: every linked pair with nonzero overlap is kept
    EcgConfig zero;
    zero.tau = 0.0;
    const Ecg all = build_ecg(g, zero);
    for (const EcgEdge& e : all.edges) CHECK(e.weight > 0.0);
    bool uv_at_zero = false;
    for (const EcgEdge& e : all.edges) uv_at_zero |= (e.from == "u" && e.to == "v");
    // u and v share t0..t8 -> J(u->v) = 9/100 > 0
    CHECK(uv_at_zero);
}

TEST_CASE("pruned construction equals the brute-force ECG on random graphs") {
    Rng rng(314);
    for (int trial = 0; trial < 10; ++trial) {
        GraphBuilder b;
        const std::size_t n = 50;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string pad = i < 10 ? "0" : "";
            ids.push_back("n" + pad + std::to_string(i));
            b.entity(ids.back());
        }
        for (const std::string& source : ids) {
            const std::size_t degree = rng.next_below(8);
            for (std::size_t j = 0; j < degree; ++j) {
                const std::string& target = ids[rng.next_below(n)];
                if (target != source) b.link(source, target);
            }
        }
        const KnowledgeGraph g = b.build();
        EcgConfig cfg;
        cfg.tau = 0.05 + 0.3 * rng.next_double();
        const Ecg pruned = build_ecg(g, cfg);

        // oracle: no degree bound, straight Jaccard on every link
        std::set<std::pair<std::string, std::string>> expected;
        for (const std::string& u : ids) {
            for (const std::string& v : g.linked_entities(u)) {
                if (overlap_jaccard(g, u, v) > cfg.tau) expected.insert({u, v});
            }
        }
        std::set<std::pair<std::string, std::string>> got;
        for (const EcgEdge& e : pruned.edges) got.insert({e.from, e.to});
        CHECK(got == expected);
    }
}

TEST_CASE("prim returns a spanning tree unchanged") {
    const Ecg tree = make_symmetric({{"a", "b", 0.3}, {"b", "c", 0.9}, {"c", "d", 0.1}});
    const InheritanceForest forest = prim_max_spanning(tree);
    REQUIRE(forest.trees.size() == 1);
    CHECK(forest.trees[0].parent.size() == 3);
    CHECK(forest.total_weight == doctest::Approx(0.3 + 0.9 + 0.1));
}

TEST_CASE("prim walk-through: root b, children a c d, then e f under d") {
    const Ecg ecg = make_symmetric({{"b", "a", 0.9},
                                    {"b", "c", 0.8},
                                    {"b", "d", 0.7},
                                    {"d", "f", 0.6},
                                    {"d", "e", 0.5},
                                    {"a", "c", 0.3},
                                    {"e", "f", 0.4}});
    const InheritanceForest forest = prim_max_spanning(ecg);
    REQUIRE(forest.trees.size() == 1);
    const InheritanceTree& tree = forest.trees[0];

    CHECK(tree.root == "b");  // degree 3, tie with d broken by id
    CHECK(tree.order == std::vector<std::string>{"b", "a", "c", "d", "f", "e"});
    CHECK(tree.parent.at("a") == "b");
    CHECK(tree.parent.at("c") == "b");
    CHECK(tree.parent.at("d") == "b");
    CHECK(tree.parent.at("e") == "d");
    CHECK(tree.parent.at("f") == "d");
    CHECK(tree.level.at("b") == 0);
    CHECK(tree.level.at("d") == 1);
    CHECK(tree.level.at("e") == 2);
    CHECK(forest.total_weight == doctest::Approx(0.9 + 0.8 + 0.7 + 0.6 + 0.5));
}

TEST_CASE("prim matches exhaustive max spanning weight on small graphs") {
    Rng rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.next_below(4);  // up to 6 nodes
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(1, char('a' + i)));
        std::vector<std::tuple<std::string, std::string, double>> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (rng.next_double() < 0.7)
                    edges.emplace_back(ids[i], ids[j],
                                       0.05 + 0.9 * rng.next_double());
            }
        }
        if (edges.empty()) continue;
        const Ecg ecg = make_symmetric(edges);
        const InheritanceForest forest = prim_max_spanning(ecg);

        // enumerate every edge subset of size |nodes in component| - 1 per
        // component via bitmask over all edges (small instances)
        const std::size_t m = edges.size();
        double best = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            // acyclic check by union-find; weight = sum of chosen edges
            std::map<std::string, std::string> parent;
            for (const std::string& id : ids) parent[id] = id;
            std::function<std::string(std::string)> find = [&](std::string x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            double weight = 0.0;
            bool acyclic = true;
            for (std::size_t e = 0; e < m && acyclic; ++e) {
                if (!((mask >> e) & 1)) continue;
                auto [a, b, w] = edges[e];
                const std::string ra = find(a), rb = find(b);
                if (ra == rb) {
                    acyclic = false;
                } else {
                    parent[ra] = rb;
                    weight += w;
                }
            }
            if (acyclic) best = std::max(best, weight);
        }
        CHECK(forest.total_weight == doctest::Approx(best));
    }
}

TEST_CASE("bio brute force: single edge, triangle, and the tree bound") {
    const Ecg one = make_symmetric({{"a", "b", 0.42}});
    CHECK(bio_weight_bruteforce(one) == doctest::Approx(0.42));

    const Ecg triangle =
        make_symmetric({{"a", "b", 3.0}, {"b", "c", 2.0}, {"a", "c", 1.0}});
    CHECK(bio_weight_bruteforce(triangle) == doctest::Approx(5.0));  // best Hamilton path

    std::vector<std::tuple<std::string, std::string, double>> big;
    for (char c = 'b'; c <= 'k'; ++c) big.emplace_back("a", std::string(1, c), 0.5);
    CHECK_THROWS_AS(bio_weight_bruteforce(make_symmetric(big)), std::invalid_argument);

    Rng rng(5050);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.next_below(6);  // up to 8 nodes
        std::vector<std::tuple<std::string, std::string, double>> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (rng.next_double() < 0.6)
                    edges.emplace_back(std::string(1, char('a' + i)),
                                       std::string(1, char('a' + j)), rng.next_double());
            }
        }
        if (edges.empty()) continue;
        const Ecg ecg = make_symmetric(edges);
        CHECK(bio_weight_bruteforce(ecg) <=
              prim_max_spanning(ecg).total_weight + 1e-9);
    }
}

namespace {

struct Prepared {
    KnowledgeGraph graph;
    PipelineConfig config;
    PipelineState state;
};

Prepared prepare_reuse_fixture() {
    Prepared p{testsupport::reuse_fixture().build(), {}, {}};
    p.config.aggregation.threshold = 1.0;  // keep every linked entity
    p.config.cluster.rng_seed = 7;
    p.state = prepare_pipeline(p.graph, p.config);
    return p;
}

std::map<std::string, std::set<std::string>> label_map(const ArticleResult& r) {
    std::map<std::string, std::set<std::string>> out;
    for (const LabeledCluster& lc : r.labeled_clusters)
        out[lc.label].insert(lc.cluster.members.begin(), lc.cluster.members.end());
    return out;
}

}  // namespace

TEST_CASE("inherit_and_cluster: full overlap, zero overlap, and label merge") {
    const Prepared p = prepare_reuse_fixture();
    const ExtractContext ctx = make_context(p.graph, p.state, p.config);

    // a02 links blocks 1,2; a03 links blocks 2,3: overlap = block 2.
    const ArticleResult parent = cluster_article_direct(ctx, "a02");
    REQUIRE(parent.labeled_clusters.size() == 2);

    // full overlap: a child seeing exactly block 2 entities inherits with no
    // fresh clustering. a02 vs itself is the exhaustive case:
    const InheritOutcome self = inherit_and_cluster(ctx, &parent, "a02");
    CHECK(self.fresh == 0);
    CHECK(self.inherited == 20);
    CHECK(label_map(self.result) == label_map(parent));

    // zero overlap: a05 links blocks 4,0 — nothing shared with a02's 1,2.
    const InheritOutcome disjoint = inherit_and_cluster(ctx, &parent, "a05");
    CHECK(disjoint.inherited == 0);
    CHECK(label_map(disjoint.result) == label_map(cluster_article_direct(ctx, "a05")));

    // merge: a16 inherits block 0 from a15 and freshly clusters block 5,
    // which carries the same label.
    const ArticleResult a15 = cluster_article_direct(ctx, "a15");
    const InheritOutcome merged = inherit_and_cluster(ctx, &a15, "a16");
    CHECK(merged.merged == 1);
    const auto labels = label_map(merged.result);
    const std::string topic0 = testsupport::block_category(0);
    REQUIRE(labels.count(topic0) == 1);
    CHECK(labels.at(topic0).size() == 20);  // blocks 0 and 5 together
    CHECK(label_map(merged.result) == label_map(cluster_article_direct(ctx, "a16")));

    // null parent falls back to direct clustering
    const InheritOutcome fallback = inherit_and_cluster(ctx, nullptr, "a07");
    CHECK(label_map(fallback.result) == label_map(cluster_article_direct(ctx, "a07")));
}

TEST_CASE("batch_extract with an empty ECG equals the per-article pipeline") {
    // A graph whose articles share nothing: two articles with disjoint blocks.
    GraphBuilder b;
    b.entity("p").entity("q");
    b.category("alpha things").category("beta things");
    for (int i = 0; i < 9; ++i) {
        b.entity("pa" + std::to_string(i)).entity("qa" + std::to_string(i));
        b.isa("pa" + std::to_string(i), "alpha things");
        b.isa("qa" + std::to_string(i), "beta things");
        b.link("p", "pa" + std::to_string(i)).link("q", "qa" + std::to_string(i));
    }
    const KnowledgeGraph g = b.build();
    PipelineConfig config;
    config.aggregation.threshold = 1.0;
    const PipelineState state = prepare_pipeline(g, config);
    const ExtractContext ctx = make_context(g, state, config);

    CHECK(build_ecg(g, config.ecg).edges.empty());
    const auto with_reuse = batch_extract(ctx, config.ecg, true);
    const auto without = batch_extract(ctx, config.ecg, false);
    REQUIRE(with_reuse.size() == without.size());
    for (const auto& [article, result] : with_reuse) {
        CHECK(label_map(result) == label_map(without.at(article)));
    }
}

TEST_CASE("batch_extract levels retain at most two generations") {
    const Prepared p = prepare_reuse_fixture();
    const ExtractContext ctx = make_context(p.graph, p.state, p.config);
    BatchStats stats;
    const auto results = batch_extract(ctx, p.config.ecg, true, &stats);
    CHECK(results.size() == p.graph.article_count);

    std::size_t widest = 0;
    std::map<std::size_t, std::size_t> level_width;
    for (const BatchNodeStats& row : stats.nodes) {
        if (row.inherited + row.fresh > 0 || row.level > 0) {
            ++level_width[row.level];
        }
    }
    for (const auto& [level, width] : level_width) widest = std::max(widest, width);
    CHECK(stats.peak_retained <= 2 * std::max<std::size_t>(widest, 1));

    std::size_t inherited_nodes = 0;
    for (const BatchNodeStats& row : stats.nodes)
        if (row.inherited > 0) ++inherited_nodes;
    CHECK(inherited_nodes >= 10);  // the chain actually reuses
}
