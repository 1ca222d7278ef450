#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "linkbox/gmeans.hpp"

using namespace linkbox;

static void BM_GmeansTwoBlobs(benchmark::State& state) {
    Rng rng(3);
    auto pts = testsupport::gaussian_line_blob(rng, state.range(0) / 2, 10.0, 0.0, 1.0, "lo");
    const auto hi =
        testsupport::gaussian_line_blob(rng, state.range(0) / 2, 10.0, 20.0, 1.0, "hi");
    pts.insert(pts.end(), hi.begin(), hi.end());
    ClusterConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gmeans_cluster(pts, cfg));
    }
}
BENCHMARK(BM_GmeansTwoBlobs)->Arg(200)->Arg(1000);

static void BM_AndersonDarling(benchmark::State& state) {
    Rng rng(4);
    std::vector<double> sample;
    for (int i = 0; i < state.range(0); ++i)
        sample.push_back(testsupport::normal_sample(rng));
    for (auto _ : state) {
        auto copy = sample;
        benchmark::DoNotOptimize(anderson_darling_a2star(std::move(copy)));
    }
}
BENCHMARK(BM_AndersonDarling)->Arg(500)->Arg(5000);
