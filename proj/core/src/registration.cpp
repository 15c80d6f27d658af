#include "maskreg/registration.h"
#include "maskreg/pyramid.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace maskreg {

namespace {

constexpr Int3 kNeighbours[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

bool inside(const Int3& p, const Int3& lo, const Int3& hi)
{
    return p.x >= lo.x && p.y >= lo.y && p.z >= lo.z && p.x < hi.x && p.y < hi.y && p.z < hi.z;
}

struct Scratch
{
    BinaryProblem problem;
    BinarySolver solver;
    BinarySolution solution;
    std::vector<Vec3f> candidate;
    std::vector<double> raw_cost1;
};

/// Block moves over one field. Caches the data term of the current
/// displacement and of each of the six candidate steps per voxel; entries
/// are refreshed when a voxel's displacement changes.
class BlockOptimizer
{
public:
    static constexpr int kUncached = -1;

    BlockOptimizer(DisplacementField& field, const ChannelStack& fixed, const ChannelStack& moving,
                   const EnergyParams& params, double epsilon, bool use_step_cache)
        : _field(field), _unary(fixed, moving), _params(params), _epsilon(epsilon)
    {
        require_same_grid(field.meta(), fixed.meta(), "block optimizer");
        _cost0.resize(field.size());
        for (std::size_t i = 0; i < field.size(); ++i) {
            _cost0[i] = _unary(field.coord(i), vec_cast<double>(field[i]));
        }
        if (use_step_cache) {
            _cost1.assign(field.size() * 6, std::numeric_limits<double>::quiet_NaN());
        }
    }

    BlockMoveResult try_block(const Block& b, int step, const Vec3f& delta, Scratch& s)
    {
        const Int3 ext = b.end - b.begin;
        const int n = b.voxel_count();
        const Int3 dims = _field.dims();
        const bool cached = step >= 0 && !_cost1.empty();

        s.problem.clear();
        s.problem.unary.reserve(std::size_t(n));
        s.candidate.resize(std::size_t(n));
        s.raw_cost1.resize(std::size_t(n));

        int k = 0;
        for (int z = b.begin.z; z < b.end.z; ++z) {
            for (int y = b.begin.y; y < b.end.y; ++y) {
                for (int x = b.begin.x; x < b.end.x; ++x, ++k) {
                    const Int3 p{x, y, z};
                    const std::size_t idx = _field.index(p);
                    const Vec3f u = _field[idx];
                    const Vec3f c = u + delta;
                    const Vec3d ud = vec_cast<double>(u);
                    const Vec3d cd = vec_cast<double>(c);

                    double c0 = _cost0[idx];
                    double c1;
                    if (cached) {
                        double& slot = _cost1[idx * 6 + std::size_t(step)];
                        if (std::isnan(slot)) {
                            slot = _unary(p, cd);
                        }
                        c1 = slot;
                    }
                    else {
                        c1 = _unary(p, cd);
                    }
                    s.raw_cost1[std::size_t(k)] = c1;
                    s.candidate[std::size_t(k)] = c;

                    for (const auto& off : kNeighbours) {
                        const Int3 q = p + off;
                        if (!inside(q, {0, 0, 0}, dims) || inside(q, b.begin, b.end)) {
                            continue;
                        }
                        const Vec3d uq = vec_cast<double>(_field(q));
                        c0 += pairwise_cost(ud, uq, _params);
                        c1 += pairwise_cost(cd, uq, _params);
                    }
                    s.problem.add_node(c0, c1);
                }
            }
        }

        double e0 = 0.0;
        for (const auto& u : s.problem.unary) {
            e0 += u[0];
        }

        const int sx = 1;
        const int sy = ext.x;
        const int sz = ext.x * ext.y;
        k = 0;
        for (int z = b.begin.z; z < b.end.z; ++z) {
            for (int y = b.begin.y; y < b.end.y; ++y) {
                for (int x = b.begin.x; x < b.end.x; ++x, ++k) {
                    const Vec3d up = vec_cast<double>(_field(x, y, z));
                    const Vec3d cp = vec_cast<double>(s.candidate[std::size_t(k)]);
                    auto couple = [&](int kq, const Int3& q) {
                        const Vec3d uq = vec_cast<double>(_field(q));
                        const Vec3d cq = vec_cast<double>(s.candidate[std::size_t(kq)]);
                        const double v00 = pairwise_cost(up, uq, _params);
                        s.problem.add_edge(k, kq, v00, pairwise_cost(up, cq, _params),
                                           pairwise_cost(cp, uq, _params), pairwise_cost(cp, cq, _params));
                        e0 += v00;
                    };
                    if (x + 1 < b.end.x) {
                        couple(k + sx, {x + 1, y, z});
                    }
                    if (y + 1 < b.end.y) {
                        couple(k + sy, {x, y + 1, z});
                    }
                    if (z + 1 < b.end.z) {
                        couple(k + sz, {x, y, z + 1});
                    }
                }
            }
        }

        s.solver.solve(s.problem, s.solution);
        const double decrease = e0 - s.solution.energy;
        if (!(decrease > _epsilon)) {
            return {};
        }

        k = 0;
        for (int z = b.begin.z; z < b.end.z; ++z) {
            for (int y = b.begin.y; y < b.end.y; ++y) {
                for (int x = b.begin.x; x < b.end.x; ++x, ++k) {
                    if (!s.solution.labels[std::size_t(k)]) {
                        continue;
                    }
                    const std::size_t idx = _field.index(x, y, z);
                    _field[idx] = s.candidate[std::size_t(k)];
                    _cost0[idx] = s.raw_cost1[std::size_t(k)];
                    if (!_cost1.empty()) {
                        std::fill_n(_cost1.begin() + std::ptrdiff_t(idx * 6), 6,
                                    std::numeric_limits<double>::quiet_NaN());
                    }
                }
            }
        }
        return {true, -decrease};
    }

private:
    DisplacementField& _field;
    UnaryCost _unary;
    EnergyParams _params;
    double _epsilon;
    std::vector<double> _cost0;
    std::vector<double> _cost1;
};

struct PhaseGrid
{
    std::vector<Block> blocks;
    std::vector<int> colour;
};

PhaseGrid make_phase_grid(const Int3& dims, const Int3& block_size, int phase)
{
    Int3 start{0, 0, 0};
    Int3 count;
    for (int a = 0; a < 3; ++a) {
        if (phase == 1) {
            start[a] = -(block_size[a] / 2);
        }
        count[a] = (dims[a] - start[a] + block_size[a] - 1) / block_size[a];
    }
    PhaseGrid g;
    for (int bz = 0; bz < count.z; ++bz) {
        for (int by = 0; by < count.y; ++by) {
            for (int bx = 0; bx < count.x; ++bx) {
                const Int3 bi{bx, by, bz};
                Block b;
                for (int a = 0; a < 3; ++a) {
                    const int lo = start[a] + bi[a] * block_size[a];
                    b.begin[a] = std::max(lo, 0);
                    b.end[a] = std::min(lo + block_size[a], dims[a]);
                }
                if (b.voxel_count() <= 0) {
                    continue;
                }
                g.blocks.push_back(b);
                g.colour.push_back((bx + by + bz) % 2);
            }
        }
    }
    return g;
}

/// Change stamps on a coarse cell grid aligned with both block phases. A
/// block whose last attempt with a given step was rejected, and whose
/// cells plus one-voxel halo have not changed since, would be rejected
/// again and is skipped.
class ChangeTracker
{
public:
    ChangeTracker(const Int3& dims, const Int3& block_size) : _dims(dims)
    {
        for (int a = 0; a < 3; ++a) {
            _cell[a] = std::gcd(block_size[a], block_size[a] / 2);
            _cells[a] = (dims[a] + _cell[a] - 1) / _cell[a];
        }
        _stamp.assign(std::size_t(_cells.x) * _cells.y * _cells.z, 0);
    }

    long latest_change(const Block& b) const
    {
        Int3 lo, hi;
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::max(b.begin[a] - 1, 0) / _cell[a];
            hi[a] = std::min(b.end[a], _dims[a] - 1) / _cell[a];
        }
        long latest = 0;
        for (int z = lo.z; z <= hi.z; ++z) {
            for (int y = lo.y; y <= hi.y; ++y) {
                for (int x = lo.x; x <= hi.x; ++x) {
                    latest = std::max(latest, _stamp[cell_index(x, y, z)]);
                }
            }
        }
        return latest;
    }

    void mark(const Block& b, long pass)
    {
        Int3 lo, hi;
        for (int a = 0; a < 3; ++a) {
            lo[a] = b.begin[a] / _cell[a];
            hi[a] = (b.end[a] - 1) / _cell[a];
        }
        for (int z = lo.z; z <= hi.z; ++z) {
            for (int y = lo.y; y <= hi.y; ++y) {
                for (int x = lo.x; x <= hi.x; ++x) {
                    _stamp[cell_index(x, y, z)] = pass;
                }
            }
        }
    }

private:
    std::size_t cell_index(int x, int y, int z) const
    {
        return std::size_t(x) + std::size_t(_cells.x) * (std::size_t(y) + std::size_t(_cells.y) * std::size_t(z));
    }

    Int3 _dims;
    Int3 _cell;
    Int3 _cells;
    std::vector<long> _stamp;
};

} // namespace

std::array<Vec3f, 6> move_steps(double step_size)
{
    const float s = float(step_size);
    return {Vec3f{s, 0, 0}, Vec3f{-s, 0, 0}, Vec3f{0, s, 0}, Vec3f{0, -s, 0}, Vec3f{0, 0, s}, Vec3f{0, 0, -s}};
}

std::vector<Block> phase_blocks(const Int3& dims, const Int3& block_size, int phase)
{
    return make_phase_grid(dims, block_size, phase).blocks;
}

BlockMoveResult block_move(DisplacementField& field, const ChannelStack& fixed, const ChannelStack& moving,
                           const EnergyParams& params, const Block& block, const Vec3f& delta, double epsilon)
{
    for (int a = 0; a < 3; ++a) {
        if (block.begin[a] < 0 || block.end[a] > field.dims()[a] || block.begin[a] >= block.end[a]) {
            throw std::invalid_argument("block_move: block outside the grid");
        }
    }
    BlockOptimizer opt(field, fixed, moving, params, epsilon, false);
    Scratch scratch;
    return opt.try_block(block, BlockOptimizer::kUncached, delta, scratch);
}

DisplacementField register_level(DisplacementField field, const ChannelStack& fixed, const ChannelStack& moving,
                                 const RegistrationConfig& config, int level, ThreadPool& pool,
                                 LevelReport* report)
{
    const EnergyParams params = config.energy_params();
    const Int3 dims = field.dims();
    const auto steps = move_steps(config.step_size);

    BlockOptimizer opt(field, fixed, moving, params, config.block_energy_epsilon, true);
    std::vector<Scratch> scratch(std::size_t(pool.size()));

    PhaseGrid phases[2] = {make_phase_grid(dims, config.block_size, 0),
                           make_phase_grid(dims, config.block_size, 1)};
    std::vector<int> by_colour[2][2];
    for (int ph = 0; ph < 2; ++ph) {
        for (int i = 0; i < int(phases[ph].blocks.size()); ++i) {
            by_colour[ph][phases[ph].colour[std::size_t(i)]].push_back(i);
        }
    }

    ChangeTracker tracker(dims, config.block_size);
    std::vector<long> last_rejected[6][2];
    for (auto& per_step : last_rejected) {
        for (int ph = 0; ph < 2; ++ph) {
            per_step[ph].assign(phases[ph].blocks.size(), 0);
        }
    }

    LevelReport local;
    LevelReport& rep = report ? *report : local;
    rep = LevelReport{};
    rep.level = level;
    rep.dims = dims;
    rep.energy_trace.push_back(total_energy(field, fixed, moving, params).total);

    struct Outcome
    {
        bool attempted = false;
        BlockMoveResult result;
    };
    std::vector<Outcome> outcomes;

    long pass = 0;
    for (int sweep = 0; sweep < config.max_iteration_count; ++sweep) {
        long accepted = 0;
        for (int step = 0; step < 6; ++step) {
            for (int ph = 0; ph < 2; ++ph) {
                for (int colour = 0; colour < 2; ++colour) {
                    ++pass;
                    const auto& list = by_colour[ph][colour];
                    const auto& blocks = phases[ph].blocks;
                    auto& rejected = last_rejected[step][ph];
                    outcomes.assign(list.size(), Outcome{});

                    pool.parallel_for(list.size(), [&](std::size_t i, int worker) {
                        const int bi = list[i];
                        const Block& b = blocks[std::size_t(bi)];
                        const long seen = rejected[std::size_t(bi)];
                        if (seen > 0 && tracker.latest_change(b) < seen) {
                            return;
                        }
                        outcomes[i].attempted = true;
                        outcomes[i].result = opt.try_block(b, step, steps[std::size_t(step)],
                                                           scratch[std::size_t(worker)]);
                    });

                    for (std::size_t i = 0; i < list.size(); ++i) {
                        if (!outcomes[i].attempted) {
                            continue;
                        }
                        ++rep.attempted_moves;
                        const int bi = list[i];
                        if (outcomes[i].result.accepted) {
                            ++accepted;
                            tracker.mark(blocks[std::size_t(bi)], pass);
                        }
                        else {
                            rejected[std::size_t(bi)] = pass;
                        }
                    }
                }
            }
        }
        rep.accepted_moves += accepted;
        ++rep.sweeps;
        rep.energy_trace.push_back(total_energy(field, fixed, moving, params).total);
        if (accepted == 0) {
            break;
        }
    }
    return field;
}

ChannelStack prepare_stack(const ChannelStack& stack, const RegistrationConfig& config)
{
    ChannelStack out = stack;
    out.set_weight(ChannelKind::Intensity, config.intensity_weight);
    out.set_weight(ChannelKind::Mask, config.mask_weight);
    if (config.image_normalization) {
        out = normalize_channels(out);
    }
    return out;
}

RegistrationResult register_stacks(const ChannelStack& fixed, const ChannelStack& moving,
                                   const RegistrationConfig& config, const RegistrationOptions& options)
{
    config.validate();
    require_compatible(fixed, moving);
    if (fixed.empty()) {
        throw std::invalid_argument("register: no channels");
    }
    fixed.require_binary_masks();
    moving.require_binary_masks();

    const ChannelStack f0 = prepare_stack(fixed, config);
    const ChannelStack m0 = prepare_stack(moving, config);
    const Pyramid fp = build_pyramid(f0, config.pyramid_levels);
    const Pyramid mp = build_pyramid(m0, config.pyramid_levels);

    ThreadPool pool(options.workers);
    RegistrationResult result;

    DisplacementField field(fp.level(fp.size() - 1).meta());
    for (int l = config.pyramid_levels - 1; l >= 0; --l) {
        if (l >= config.pyramid_stop_level) {
            LevelReport rep;
            field = register_level(std::move(field), fp.level(std::size_t(l)), mp.level(std::size_t(l)), config,
                                   l, pool, &rep);
            if (options.log) {
                std::ostringstream msg;
                msg << "level " << l << " (" << rep.dims.x << "x" << rep.dims.y << "x" << rep.dims.z
                    << "): " << rep.sweeps << " sweeps, " << rep.accepted_moves << "/" << rep.attempted_moves
                    << " moves accepted, energy " << rep.energy_trace.front() << " -> "
                    << rep.energy_trace.back();
                options.log(msg.str());
            }
            result.levels.push_back(std::move(rep));
        }
        if (l > 0) {
            field = upsample_field(field, fp.level(std::size_t(l - 1)).meta());
        }
    }

    const EnergyParams params = config.energy_params();
    result.initial_energy = total_energy(DisplacementField(f0.meta()), f0, m0, params);
    result.final_energy = total_energy(field, f0, m0, params);
    result.field = std::move(field);
    return result;
}

} // namespace maskreg
