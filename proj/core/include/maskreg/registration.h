#pragma once

#include "maskreg/binary_solver.h"
#include "maskreg/channels.h"
#include "maskreg/config.h"
#include "maskreg/energy.h"
#include "maskreg/thread_pool.h"
#include "maskreg/volume.h"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace maskreg {

/// Half-open voxel range [begin, end).
struct Block
{
    Int3 begin;
    Int3 end;

    int voxel_count() const { return (end.x - begin.x) * (end.y - begin.y) * (end.z - begin.z); }
};

/// The six axis-aligned candidate steps: +x, -x, +y, -y, +z, -z.
std::array<Vec3f, 6> move_steps(double step_size);

struct BlockMoveResult
{
    bool accepted = false;
    /// Change of the total energy; 0 when rejected, < -epsilon when accepted.
    double energy_delta = 0.0;
};

/// One binary move on one block: every voxel either keeps u(p) or takes
/// u(p) + delta. Pairs crossing the block boundary are folded into the
/// unaries with the outside displacement held fixed, the block problem is
/// solved exactly, and the labeling is applied only if the energy drops by
/// more than `epsilon`.
BlockMoveResult block_move(DisplacementField& field, const ChannelStack& fixed, const ChannelStack& moving,
                           const EnergyParams& params, const Block& block, const Vec3f& delta,
                           double epsilon);

/// Blocks of one phase of the block grid. Phase 0 starts at the origin,
/// phase 1 is shifted by half a block; border blocks are truncated.
std::vector<Block> phase_blocks(const Int3& dims, const Int3& block_size, int phase);

struct LevelReport
{
    int level = 0;
    Int3 dims;
    int sweeps = 0;
    long accepted_moves = 0;
    long attempted_moves = 0;
    /// Total energy before the first sweep and after every sweep.
    std::vector<double> energy_trace;
};

struct RegistrationOptions
{
    int workers = 1;
    std::function<void(const std::string&)> log;
};

struct RegistrationResult
{
    DisplacementField field;
    std::vector<LevelReport> levels;
    EnergyReport initial_energy;
    EnergyReport final_energy;
};

/// Sweeps of block moves on one pyramid level until a sweep accepts nothing
/// or max_iteration_count sweeps ran. Blocks are visited per move step, per
/// phase and per checkerboard colour; blocks sharing a colour never touch,
/// so they are optimized concurrently and the result does not depend on the
/// number of workers.
DisplacementField register_level(DisplacementField field, const ChannelStack& fixed, const ChannelStack& moving,
                                 const RegistrationConfig& config, int level, ThreadPool& pool,
                                 LevelReport* report = nullptr);

/// Full multi-resolution registration of `moving` onto `fixed`. Channel
/// weights come from the config (intensity_weight / mask_weight). Returns
/// a field on the fixed grid: warped(p) = moving(p + u(p)).
RegistrationResult register_stacks(const ChannelStack& fixed, const ChannelStack& moving,
                                   const RegistrationConfig& config, const RegistrationOptions& options = {});

/// Applies the config weights and optional min-max normalization; this is
/// the level-0 image pair the optimizer sees.
ChannelStack prepare_stack(const ChannelStack& stack, const RegistrationConfig& config);

} // namespace maskreg
