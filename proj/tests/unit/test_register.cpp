#include "test_util.h"

#include <maskreg/config.h>
#include <maskreg/phantom.h>
#include <maskreg/registration.h>
#include <maskreg/thread_pool.h>

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>

namespace maskreg {
namespace {

ChannelStack single(const ScalarVolume& v)
{
    ChannelStack s;
    s.add("ff", v, 1.0);
    return s;
}

TEST(Config, DefaultsMatchPublishedTable)
{
    const RegistrationConfig c;
    EXPECT_EQ(c.pyramid_levels, 6);
    EXPECT_EQ(c.pyramid_stop_level, 0);
    EXPECT_EQ(c.block_size, (Int3{12, 12, 12}));
    EXPECT_EQ(c.block_energy_epsilon, 1e-7);
    EXPECT_EQ(c.max_iteration_count, 100);
    EXPECT_EQ(c.step_size, 0.5);
    EXPECT_EQ(c.regularization_scale, 1.0);
    EXPECT_EQ(c.regularization_exponent, 2.0);
    EXPECT_EQ(c.regularization_weight, 0.1);
    EXPECT_EQ(c.image_resampler, "gaussian");
    EXPECT_EQ(c.cost_function, "ssd");
    EXPECT_EQ(c.update_rule, "additive");
    EXPECT_TRUE(c.image_normalization);
    EXPECT_EQ(c.intensity_weight, 1.0);
    EXPECT_EQ(c.mask_weight, 0.6);
}

TEST(Config, ParseAndEcho)
{
    EXPECT_EQ(parse_config("{}"), RegistrationConfig{});
    const RegistrationConfig c = parse_config(R"({"regularization_weight": 0.25, "block_size": [8, 6, 4]})");
    EXPECT_EQ(c.regularization_weight, 0.25);
    EXPECT_EQ(c.block_size, (Int3{8, 6, 4}));
    EXPECT_EQ(c.step_size, 0.5);
    EXPECT_EQ(parse_config(config_to_json(c)), c);
}

TEST(Config, RejectsInvalidInput)
{
    EXPECT_THROW(parse_config(R"({"regularisation_weight": 0.1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"step_size": "big"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"pyramid_levels": 2.5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"block_size": [1, 12, 12]})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"step_size": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"block_energy_epsilon": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"regularization_exponent": 0.5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"cost_function": "ncc"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"pyramid_stop_level": 6})"), ConfigError);
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
    EXPECT_THROW(parse_config("{"), ConfigError);
}

TEST(MoveSteps, SixAxisSteps)
{
    const auto steps = move_steps(0.5);
    for (const auto& s : steps) {
        EXPECT_FLOAT_EQ(std::sqrt(dot(s, s)), 0.5f);
        EXPECT_EQ(int(s.x != 0.0f) + int(s.y != 0.0f) + int(s.z != 0.0f), 1);
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        for (std::size_t j = i + 1; j < steps.size(); ++j) {
            EXPECT_NE(steps[i], steps[j]);
        }
    }
}

TEST(PhaseBlocks, EachPhasePartitionsTheGrid)
{
    const Int3 dims{29, 12, 7};
    for (int phase = 0; phase < 2; ++phase) {
        std::vector<int> hits(std::size_t(dims.x * dims.y * dims.z), 0);
        for (const Block& b : phase_blocks(dims, {12, 12, 12}, phase)) {
            for (int a = 0; a < 3; ++a) {
                EXPECT_GE(b.begin[a], 0);
                EXPECT_LE(b.end[a], dims[a]);
                EXPECT_LE(b.end[a] - b.begin[a], 12);
            }
            for (int z = b.begin.z; z < b.end.z; ++z) {
                for (int y = b.begin.y; y < b.end.y; ++y) {
                    for (int x = b.begin.x; x < b.end.x; ++x) {
                        ++hits[std::size_t(x + dims.x * (y + dims.y * z))];
                    }
                }
            }
        }
        for (int h : hits) {
            EXPECT_EQ(h, 1);
        }
    }
    const auto shifted = phase_blocks({24, 24, 24}, {12, 12, 12}, 1);
    EXPECT_EQ(shifted.front().end, (Int3{6, 6, 6}));
}

TEST(BlockMove, IdentityIsRejected)
{
    std::mt19937_64 rng(1);
    const GridMeta meta = make_grid({6, 6, 6});
    const ChannelStack s = single(test::random_scalar(meta, rng));
    DisplacementField f(meta);
    for (const auto& d : move_steps(0.5)) {
        const BlockMoveResult r = block_move(f, s, s, EnergyParams{}, {{0, 0, 0}, {6, 6, 6}}, d, 1e-7);
        EXPECT_FALSE(r.accepted);
        EXPECT_EQ(r.energy_delta, 0.0);
    }
    EXPECT_EQ(f, DisplacementField(meta));
}

/// Smallest total-energy change over every labeling of `block`.
double enumerated_best_delta(const DisplacementField& field, const ChannelStack& fixed, const ChannelStack& moving,
                             const EnergyParams& params, const Block& block, const Vec3f& delta)
{
    std::vector<std::size_t> voxels;
    for (int z = block.begin.z; z < block.end.z; ++z) {
        for (int y = block.begin.y; y < block.end.y; ++y) {
            for (int x = block.begin.x; x < block.end.x; ++x) {
                voxels.push_back(field.index(x, y, z));
            }
        }
    }
    const double base = total_energy(field, fixed, moving, params).total;
    double best = 0.0;
    for (unsigned m = 1; m < (1u << voxels.size()); ++m) {
        DisplacementField trial = field;
        for (std::size_t i = 0; i < voxels.size(); ++i) {
            if ((m >> i) & 1u) {
                trial[voxels[i]] += delta;
            }
        }
        best = std::min(best, total_energy(trial, fixed, moving, params).total - base);
    }
    return best;
}

TEST(BlockMove, TwoVoxelBlockMatchesEnumeration)
{
    const GridMeta meta = make_grid({4, 1, 1});
    // Voxel 0 matches after half a step; voxel 1 already matches.
    const ChannelStack fixed = single(ScalarVolume(meta, std::vector<float>{0.5f, 1.0f, 1.0f, 1.0f}));
    const ChannelStack moving = single(ScalarVolume(meta, std::vector<float>{0.0f, 1.0f, 1.0f, 1.0f}));
    const EnergyParams params;
    const Block block{{0, 0, 0}, {2, 1, 1}};
    const Vec3f delta{0.5f, 0.0f, 0.0f};
    DisplacementField f(meta);
    const double oracle = enumerated_best_delta(f, fixed, moving, params, block, delta);
    ASSERT_NEAR(oracle, -0.25 + 0.1 * 0.25, 1e-12);

    const double before = total_energy(f, fixed, moving, params).total;
    const BlockMoveResult r = block_move(f, fixed, moving, params, block, delta, 1e-7);
    EXPECT_TRUE(r.accepted);
    EXPECT_NEAR(r.energy_delta, oracle, 1e-9);
    EXPECT_NEAR(total_energy(f, fixed, moving, params).total - before, r.energy_delta, 1e-9);
    EXPECT_EQ(f[2], (Vec3f{}));
    EXPECT_EQ(f[3], (Vec3f{}));

    DisplacementField g(meta);
    const BlockMoveResult gated = block_move(g, fixed, moving, params, block, delta, -2.0 * oracle);
    EXPECT_FALSE(gated.accepted);
    EXPECT_EQ(gated.energy_delta, 0.0);
    EXPECT_EQ(g, DisplacementField(meta));
}

TEST(BlockMove, RandomBlocksMatchEnumeration)
{
    std::mt19937_64 rng(7);
    const GridMeta meta = make_grid({4, 3, 3});
    const EnergyParams params{0.3, 1.0, 2.0};
    for (int trial = 0; trial < 40; ++trial) {
        const ChannelStack fixed = single(test::random_scalar(meta, rng));
        const ChannelStack moving = single(test::random_scalar(meta, rng));
        DisplacementField f(meta);
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] = {0.5f * float(int(rng() % 5) - 2), 0.5f * float(int(rng() % 3) - 1), 0.0f};
        }
        const Int3 begin{int(rng() % 2), int(rng() % 2), int(rng() % 2)};
        const Block block{begin, {begin.x + 2, begin.y + 2, begin.z + 2}};
        const Vec3f delta = move_steps(0.5)[std::size_t(rng() % 6)];
        const double oracle = enumerated_best_delta(f, fixed, moving, params, block, delta);
        const double before = total_energy(f, fixed, moving, params).total;
        const BlockMoveResult r = block_move(f, fixed, moving, params, block, delta, 1e-9);
        if (oracle < -1e-6) {
            EXPECT_TRUE(r.accepted);
            EXPECT_NEAR(r.energy_delta, oracle, 1e-8);
        }
        if (r.accepted) {
            EXPECT_LT(r.energy_delta, -1e-9);
        }
        EXPECT_NEAR(total_energy(f, fixed, moving, params).total - before, r.energy_delta, 1e-8);
    }
}

TEST(BlockMove, RejectsBlockOutsideGrid)
{
    const GridMeta meta = make_grid({4, 4, 4});
    const ChannelStack s = single(ScalarVolume(meta));
    DisplacementField f(meta);
    EXPECT_THROW(block_move(f, s, s, EnergyParams{}, {{2, 0, 0}, {5, 4, 4}}, {0.5f, 0.0f, 0.0f}, 1e-7),
                 std::invalid_argument);
}

TEST(RegisterLevel, IdentityStopsAfterOneSweep)
{
    std::mt19937_64 rng(2);
    const GridMeta meta = make_grid({14, 13, 12});
    const ChannelStack s = single(test::random_scalar(meta, rng));
    ThreadPool pool(1);
    LevelReport rep;
    const DisplacementField out = register_level(DisplacementField(meta), s, s, RegistrationConfig{}, 0, pool, &rep);
    EXPECT_EQ(out, DisplacementField(meta));
    EXPECT_EQ(rep.sweeps, 1);
    EXPECT_EQ(rep.accepted_moves, 0);
    EXPECT_GT(rep.attempted_moves, 0);
}

/// Single-channel image dominated by an x-sinusoid: every voxel carries
/// enough data term to outweigh the regularizer for a half-voxel move.
double textured(double x, double y, double z)
{
    return std::sin(2.0 * std::numbers::pi * x / 6.0) + 0.3 * std::sin(2.0 * std::numbers::pi * y / 13.0) +
        0.3 * std::sin(2.0 * std::numbers::pi * z / 17.0);
}

TEST(RegisterLevel, RecoversHalfStepTranslation)
{
    const GridMeta meta = make_grid({24, 24, 24});
    ScalarVolume f(meta), m(meta);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Int3 p = f.coord(i);
        f[i] = float(textured(p.x, p.y, p.z));
        m[i] = float(textured(p.x - 0.5, p.y, p.z));
    }
    const RegistrationConfig cfg;
    const ChannelStack fixed = prepare_stack(single(f), cfg);
    const ChannelStack moving = prepare_stack(single(m), cfg);
    ThreadPool pool(1);
    LevelReport rep;
    const DisplacementField u = register_level(DisplacementField(meta), fixed, moving, cfg, 0, pool, &rep);

    double err = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.coord(i).x == meta.dims.x - 1) {
            continue; // clamped samples
        }
        const Vec3f d = u[i] - Vec3f{0.5f, 0.0f, 0.0f};
        err += std::sqrt(double(dot(d, d)));
        ++n;
    }
    EXPECT_LT(err / double(n), 0.25);
    ASSERT_GE(rep.energy_trace.size(), 2u);
    for (std::size_t k = 1; k < rep.energy_trace.size(); ++k) {
        EXPECT_LE(rep.energy_trace[k], rep.energy_trace[k - 1]);
    }
    EXPECT_LT(rep.energy_trace.back(), rep.energy_trace.front());
    EXPECT_NEAR(rep.energy_trace.back(), total_energy(u, fixed, moving, cfg.energy_params()).total,
                1e-9 * rep.energy_trace.front());
}

TEST(Register, SelfRegistrationIsAFixedPoint)
{
    PhantomSpec spec;
    spec.dims = {24, 24, 24};
    const Phantom ref = make_reference(spec);
    const RegistrationResult r = register_stacks(ref.stack, ref.stack, RegistrationConfig{});
    EXPECT_EQ(r.field, DisplacementField(ref.stack.meta()));
    EXPECT_EQ(r.final_energy.total, 0.0);
    EXPECT_EQ(r.levels.size(), 6u);
}

TEST(Register, DecreasesEnergyAndIsWorkerIndependent)
{
    PhantomSpec spec;
    spec.dims = {28, 24, 24};
    spec.seed = 4;
    const Phantom ref = make_reference(spec);
    spec.deformation = random_deformation(99, spec.dims);
    const PhantomSubject sub = make_subject(ref, spec);

    const RegistrationResult one = register_stacks(ref.stack, sub.stack, RegistrationConfig{}, {1, {}});
    const RegistrationResult three = register_stacks(ref.stack, sub.stack, RegistrationConfig{}, {3, {}});
    EXPECT_LT(one.final_energy.total, one.initial_energy.total);
    EXPECT_EQ(one.field, three.field);
    EXPECT_EQ(one.final_energy.total, three.final_energy.total);

    const RegistrationConfig cfg;
    const EnergyReport recomputed = total_energy(one.field, prepare_stack(ref.stack, cfg),
                                                 prepare_stack(sub.stack, cfg), cfg.energy_params());
    EXPECT_NEAR(recomputed.total, one.final_energy.total, 1e-9 * one.final_energy.total);

    for (const LevelReport& l : one.levels) {
        for (std::size_t k = 1; k < l.energy_trace.size(); ++k) {
            EXPECT_LE(l.energy_trace[k], l.energy_trace[k - 1]);
        }
    }
}

TEST(Register, StopLevelSkipsFineLevels)
{
    PhantomSpec spec;
    spec.dims = {24, 24, 24};
    const Phantom ref = make_reference(spec);
    RegistrationConfig cfg;
    cfg.pyramid_levels = 3;
    cfg.pyramid_stop_level = 1;
    const RegistrationResult r = register_stacks(ref.stack, ref.stack, cfg);
    EXPECT_EQ(r.levels.size(), 2u);
    EXPECT_EQ(r.field.dims(), (Int3{24, 24, 24}));
}

TEST(Register, RejectsMismatchedStacks)
{
    PhantomSpec spec;
    spec.dims = {16, 16, 16};
    const Phantom ref = make_reference(spec);
    spec.dims = {16, 16, 18};
    const Phantom other = make_reference(spec);
    EXPECT_THROW(register_stacks(ref.stack, other.stack, RegistrationConfig{}), std::invalid_argument);
    EXPECT_THROW(register_stacks(ref.stack, ref.stack.without_masks(), RegistrationConfig{}), std::invalid_argument);
}

TEST(PrepareStack, AppliesConfigWeights)
{
    PhantomSpec spec;
    spec.dims = {16, 16, 16};
    RegistrationConfig cfg;
    cfg.intensity_weight = 2.0;
    cfg.mask_weight = 0.25;
    const ChannelStack s = prepare_stack(make_reference(spec).stack, cfg);
    for (const Channel& c : s) {
        EXPECT_EQ(c.weight, c.kind == ChannelKind::Mask ? 0.25 : 2.0);
    }
}

TEST(ThreadPool, RunsEveryIndexOnceAndRethrows)
{
    for (int workers : {1, 4}) {
        ThreadPool pool(workers);
        std::vector<std::atomic<int>> hits(1000);
        pool.parallel_for(hits.size(), [&](std::size_t i, int w) {
            EXPECT_GE(w, 0);
            EXPECT_LT(w, workers);
            ++hits[i];
        });
        for (const auto& h : hits) {
            EXPECT_EQ(h.load(), 1);
        }
        EXPECT_THROW(pool.parallel_for(10,
                                       [](std::size_t i, int) {
                                           if (i == 7) {
                                               throw std::runtime_error("boom");
                                           }
                                       }),
                     std::runtime_error);
        std::atomic<int> after{0};
        pool.parallel_for(5, [&](std::size_t, int) { ++after; });
        EXPECT_EQ(after.load(), 5);
    }
}

} // namespace
} // namespace maskreg
