#pragma once

#include "maskreg/channels.h"
#include "maskreg/interpolate.h"
#include "maskreg/volume.h"

#include <cmath>
#include <vector>

namespace maskreg {

struct EnergyParams
{
    double regularization_weight = 0.1;
    double regularization_scale = 1.0;
    double regularization_exponent = 2.0;

    void validate() const;
};

struct EnergyReport
{
    double data_term = 0.0;
    double regularization_term = 0.0;
    double total = 0.0;
};

/// Per-channel min-max rescale to [0, 1]; constant channels become all zero.
ChannelStack normalize_channels(const ChannelStack& stack);

/// Weighted multi-channel SSD between the fixed image at voxel p and the
/// moving image sampled at p + u. Holds raw pointers into both stacks, so
/// the stacks must outlive it.
class UnaryCost
{
public:
    UnaryCost(const ChannelStack& fixed, const ChannelStack& moving);

    double operator()(const Int3& p, const Vec3d& u) const
    {
        const auto s = make_stencil(_dims, Vec3d{p.x + u.x, p.y + u.y, p.z + u.z});
        const std::size_t i = std::size_t(p.x) + _nx * (std::size_t(p.y) + _ny * std::size_t(p.z));
        double cost = 0.0;
        for (const auto& c : _channels) {
            const double d = blend(c.moving, s) - double(c.fixed[i]);
            cost += c.weight * d * d;
        }
        return cost;
    }

    const Int3& dims() const { return _dims; }

private:
    struct Term
    {
        const float* fixed;
        const float* moving;
        double weight;
    };
    Int3 _dims;
    std::size_t _nx;
    std::size_t _ny;
    std::vector<Term> _channels;
};

double unary_cost(const ChannelStack& fixed, const ChannelStack& moving, const Int3& p, const Vec3d& u);

/// weight * (|u_p - u_q| / scale)^exponent.
inline double pairwise_cost(const Vec3d& up, const Vec3d& uq, const EnergyParams& params)
{
    const Vec3d d = up - uq;
    const double sq = dot(d, d) / (params.regularization_scale * params.regularization_scale);
    if (params.regularization_exponent == 2.0) {
        return params.regularization_weight * sq;
    }
    return params.regularization_weight * std::pow(sq, 0.5 * params.regularization_exponent);
}

/// Data term over every voxel plus the regularizer over unordered
/// 6-neighbour pairs.
EnergyReport total_energy(const DisplacementField& field, const ChannelStack& fixed,
                          const ChannelStack& moving, const EnergyParams& params);

} // namespace maskreg
