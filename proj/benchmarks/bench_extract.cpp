#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "linkbox/pipeline.hpp"

using namespace linkbox;

namespace {

struct Fixture {
    KnowledgeGraph graph;
    PipelineConfig config;
    PipelineState state;

    Fixture() : graph(testsupport::reuse_fixture().build()) {
        config.aggregation.threshold = 1.0;
        config.cluster.rng_seed = 5;
        state = prepare_pipeline(graph, config);
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

static void BM_ExtractReuse(benchmark::State& state) {
    const Fixture& f = fixture();
    const ExtractContext ctx = make_context(f.graph, f.state, f.config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch_extract(ctx, f.config.ecg, true));
    }
}
BENCHMARK(BM_ExtractReuse);

static void BM_ExtractDirect(benchmark::State& state) {
    const Fixture& f = fixture();
    const ExtractContext ctx = make_context(f.graph, f.state, f.config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch_extract(ctx, f.config.ecg, false));
    }
}
BENCHMARK(BM_ExtractDirect);

static void BM_PreparePipeline(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(prepare_pipeline(f.graph, f.config));
    }
}
BENCHMARK(BM_PreparePipeline);
