#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "linkbox/scheduler.hpp"

using namespace linkbox;

namespace {

KnowledgeGraph dense_graph(std::size_t nodes, std::size_t degree) {
    testsupport::GraphBuilder b;
    Rng rng(17);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < nodes; ++i) {
        ids.push_back("n" + std::to_string(i));
        b.entity(ids.back());
    }
    for (const std::string& source : ids) {
        for (std::size_t j = 0; j < degree; ++j) {
            const std::string& target = ids[rng.next_below(nodes)];
            if (target != source) b.link(source, target);
        }
    }
    return b.build();
}

}  // namespace

static void BM_BuildEcgPruned(benchmark::State& state) {
    const KnowledgeGraph g = dense_graph(static_cast<std::size_t>(state.range(0)), 12);
    EcgConfig cfg;
    cfg.tau = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_ecg(g, cfg));
    }
}
BENCHMARK(BM_BuildEcgPruned)->Arg(100)->Arg(400);

static void BM_BuildEcgBruteForce(benchmark::State& state) {
    const KnowledgeGraph g = dense_graph(static_cast<std::size_t>(state.range(0)), 12);
    const double tau = 0.2;
    for (auto _ : state) {
        std::size_t kept = 0;
        for (const std::string& u : g.entity_ids()) {
            for (const std::string& v : g.linked_entities(u)) {
                if (overlap_jaccard(g, u, v) > tau) ++kept;
            }
        }
        benchmark::DoNotOptimize(kept);
    }
}
BENCHMARK(BM_BuildEcgBruteForce)->Arg(100)->Arg(400);

static void BM_PrimForest(benchmark::State& state) {
    const KnowledgeGraph g = dense_graph(static_cast<std::size_t>(state.range(0)), 12);
    EcgConfig cfg;
    cfg.tau = 0.05;
    const Ecg ecg = build_ecg(g, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(prim_max_spanning(ecg));
    }
}
BENCHMARK(BM_PrimForest)->Arg(100)->Arg(400);
