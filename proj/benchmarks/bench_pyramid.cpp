#include "maskreg/pyramid.h"
#include "maskreg/phantom.h"

#include <benchmark/benchmark.h>

using namespace maskreg;

namespace {

void BM_GaussianDownsample(benchmark::State& state)
{
    PhantomSpec spec;
    spec.dims = {int(state.range(0)), int(state.range(1)), int(state.range(2))};
    const Phantom ph = make_reference(spec);
    const ScalarVolume& ff = ph.stack[0].volume;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_downsample(ff));
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(ff.size()));
}
BENCHMARK(BM_GaussianDownsample)->Args({96, 64, 64})->Args({181, 87, 112})->Unit(benchmark::kMillisecond);

void BM_BuildPyramid(benchmark::State& state)
{
    PhantomSpec spec;
    spec.dims = {96, 64, 64};
    const Phantom ph = make_reference(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_pyramid(ph.stack, 6));
    }
}
BENCHMARK(BM_BuildPyramid)->Unit(benchmark::kMillisecond);

} // namespace
