#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "linkbox/rank_aggregation.hpp"
#include "linkbox/relatedness.hpp"

using namespace linkbox;

namespace {

const KnowledgeGraph& fixture_graph() {
    static KnowledgeGraph g = testsupport::reuse_fixture().build();
    return g;
}

}  // namespace

static void BM_Wjc(benchmark::State& state) {
    const KnowledgeGraph& g = fixture_graph();
    for (auto _ : state) {
        benchmark::DoNotOptimize(wjc(g, "a05", "a06"));
    }
}
BENCHMARK(BM_Wjc);

static void BM_FilterArticle(benchmark::State& state) {
    const KnowledgeGraph& g = fixture_graph();
    const CoocStats stats = cooccurrence_stats(g);
    AggregationConfig cfg;
    cfg.threshold = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(filter_noise(g, stats, "a05", cfg));
    }
}
BENCHMARK(BM_FilterArticle);
