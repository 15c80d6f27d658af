#include "maskreg/energy.h"

#include <algorithm>
#include <stdexcept>

namespace maskreg {

void EnergyParams::validate() const
{
    if (!std::isfinite(regularization_weight) || regularization_weight < 0.0) {
        throw std::invalid_argument("regularization_weight must be finite and >= 0");
    }
    if (!std::isfinite(regularization_scale) || regularization_scale <= 0.0) {
        throw std::invalid_argument("regularization_scale must be finite and > 0");
    }
    if (!std::isfinite(regularization_exponent) || regularization_exponent <= 0.0) {
        throw std::invalid_argument("regularization_exponent must be finite and > 0");
    }
}

ChannelStack normalize_channels(const ChannelStack& stack)
{
    ChannelStack out(stack.meta());
    for (const auto& c : stack) {
        const auto values = c.volume.data();
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        ScalarVolume v(c.volume.meta());
        if (*hi > *lo) {
            const double min = *lo;
            const double range = double(*hi) - min;
            for (std::size_t i = 0; i < values.size(); ++i) {
                v[i] = float((double(values[i]) - min) / range);
            }
        }
        out.add(c.name, std::move(v), c.weight, c.kind);
    }
    return out;
}

UnaryCost::UnaryCost(const ChannelStack& fixed, const ChannelStack& moving)
    : _dims(fixed.meta().dims), _nx(std::size_t(_dims.x)), _ny(std::size_t(_dims.y))
{
    if (fixed.size() != moving.size()) {
        throw std::invalid_argument("unary cost: channel count mismatch");
    }
    require_same_grid(fixed.meta(), moving.meta(), "unary cost");
    for (std::size_t c = 0; c < fixed.size(); ++c) {
        _channels.push_back({fixed[c].volume.data().data(), moving[c].volume.data().data(), fixed[c].weight});
    }
}

double unary_cost(const ChannelStack& fixed, const ChannelStack& moving, const Int3& p, const Vec3d& u)
{
    return UnaryCost(fixed, moving)(p, u);
}

EnergyReport total_energy(const DisplacementField& field, const ChannelStack& fixed,
                          const ChannelStack& moving, const EnergyParams& params)
{
    require_same_grid(field.meta(), fixed.meta(), "total_energy");
    const UnaryCost unary(fixed, moving);
    const Int3 d = field.dims();

    EnergyReport r;
    for (int z = 0; z < d.z; ++z) {
        for (int y = 0; y < d.y; ++y) {
            for (int x = 0; x < d.x; ++x) {
                const Vec3d u = vec_cast<double>(field(x, y, z));
                r.data_term += unary({x, y, z}, u);
                if (x + 1 < d.x) {
                    r.regularization_term += pairwise_cost(u, vec_cast<double>(field(x + 1, y, z)), params);
                }
                if (y + 1 < d.y) {
                    r.regularization_term += pairwise_cost(u, vec_cast<double>(field(x, y + 1, z)), params);
                }
                if (z + 1 < d.z) {
                    r.regularization_term += pairwise_cost(u, vec_cast<double>(field(x, y, z + 1)), params);
                }
            }
        }
    }
    r.total = r.data_term + r.regularization_term;
    return r;
}

} // namespace maskreg
