#include "maskreg/binary_solver.h"
#include "maskreg/maxflow.h"

#include <benchmark/benchmark.h>

#include <random>

using namespace maskreg;

namespace {

// 6-connected n^3 grid with random terminal and edge capacities, the shape a
// block move produces.
void fill_grid(FlowGraph& g, int n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> cap(0.0, 1.0);
    g.clear();
    g.add_nodes(n * n * n);
    auto id = [n](int x, int y, int z) { return x + n * (y + n * z); };
    for (int z = 0; z < n; ++z) {
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                g.add_terminal_weights(id(x, y, z), cap(rng), cap(rng));
                if (x + 1 < n) g.add_edge(id(x, y, z), id(x + 1, y, z), 0.3 * cap(rng), 0.3 * cap(rng));
                if (y + 1 < n) g.add_edge(id(x, y, z), id(x, y + 1, z), 0.3 * cap(rng), 0.3 * cap(rng));
                if (z + 1 < n) g.add_edge(id(x, y, z), id(x, y, z + 1), 0.3 * cap(rng), 0.3 * cap(rng));
            }
        }
    }
}

void BM_MaxflowGrid(benchmark::State& state)
{
    const int n = int(state.range(0));
    std::mt19937_64 rng(1);
    FlowGraph g;
    for (auto _ : state) {
        state.PauseTiming();
        fill_grid(g, n, rng);
        state.ResumeTiming();
        benchmark::DoNotOptimize(g.maxflow());
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_MaxflowGrid)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_BinarySolverGrid(benchmark::State& state)
{
    const int n = int(state.range(0));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BinaryProblem prob;
    for (int i = 0; i < n * n * n; ++i) {
        prob.add_node(u(rng), u(rng));
    }
    auto id = [n](int x, int y, int z) { return x + n * (y + n * z); };
    for (int z = 0; z < n; ++z) {
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x + 1 < n; ++x) {
                // Squared-difference style pairwise term: submodular by construction.
                prob.add_edge(id(x, y, z), id(x + 1, y, z), 0.0, 0.25, 0.25, 0.0);
                if (y + 1 < n) prob.add_edge(id(x, y, z), id(x, y + 1, z), 0.0, 0.25, 0.25, 0.0);
                if (z + 1 < n) prob.add_edge(id(x, y, z), id(x, y, z + 1), 0.0, 0.25, 0.25, 0.0);
            }
        }
    }
    BinarySolver solver;
    BinarySolution sol;
    for (auto _ : state) {
        solver.solve(prob, sol);
        benchmark::DoNotOptimize(sol.energy);
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_BinarySolverGrid)->Arg(12)->Unit(benchmark::kMicrosecond);

} // namespace
