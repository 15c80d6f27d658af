#include "maskreg/phantom.h"
#include "maskreg/pyramid.h"
#include "maskreg/registration.h"
#include "maskreg/thread_pool.h"
#include "maskreg/warp.h"

#include <benchmark/benchmark.h>

using namespace maskreg;

namespace {

struct Pair
{
    ChannelStack fixed;
    ChannelStack moving;
    LabelVolume labels;
};

Pair translated_pair(Int3 dims)
{
    PhantomSpec spec;
    spec.dims = dims;
    spec.seed = 7;
    spec.deformation.translation = {3.0, -2.0, 4.0};
    const Phantom ref = make_reference(spec);
    const PhantomSubject sub = make_subject(ref, spec);
    const RegistrationConfig cfg;
    return {prepare_stack(ref.stack, cfg), prepare_stack(sub.stack, cfg), sub.labels};
}

void BM_BlockMove(benchmark::State& state)
{
    const Pair p = translated_pair({48, 48, 48});
    const RegistrationConfig cfg;
    const Block block{{18, 18, 18}, {30, 30, 30}};
    const auto steps = move_steps(cfg.step_size);
    DisplacementField field(p.fixed.meta());
    int k = 0;
    for (auto _ : state) {
        state.PauseTiming();
        field = DisplacementField(p.fixed.meta());
        state.ResumeTiming();
        benchmark::DoNotOptimize(block_move(field, p.fixed, p.moving, cfg.energy_params(), block, steps[k++ % 6],
                                            cfg.block_energy_epsilon));
    }
}
BENCHMARK(BM_BlockMove)->Unit(benchmark::kMicrosecond);

// One pyramid level from a zero field, the unit of work the optimizer repeats.
void BM_RegisterLevel(benchmark::State& state)
{
    const Pair p = translated_pair({96, 64, 64});
    const int level = int(state.range(0));
    const Pyramid fixed = build_pyramid(p.fixed, level + 1);
    const Pyramid moving = build_pyramid(p.moving, level + 1);
    const RegistrationConfig cfg;
    ThreadPool pool(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(register_level(DisplacementField(fixed.levels[std::size_t(level)].meta()),
                                                fixed.levels[std::size_t(level)], moving.levels[std::size_t(level)],
                                                cfg, level, pool));
    }
}
BENCHMARK(BM_RegisterLevel)->Arg(2)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_WarpAndJacobian(benchmark::State& state)
{
    const Pair p = translated_pair({96, 64, 64});
    const DisplacementField field(p.fixed.meta(), Vec3f{3.0f, -2.0f, 4.0f});
    for (auto _ : state) {
        benchmark::DoNotOptimize(warp_labels(p.labels, field));
        benchmark::DoNotOptimize(warp_scalar(p.moving[0].volume, field));
        benchmark::DoNotOptimize(jacobian_determinant(field));
    }
}
BENCHMARK(BM_WarpAndJacobian)->Unit(benchmark::kMillisecond);

} // namespace
