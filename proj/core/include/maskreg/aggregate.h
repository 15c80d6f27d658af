#pragma once

#include "maskreg/volume.h"

#include <span>
#include <vector>

namespace maskreg {

struct MeanStd
{
    ScalarVolume mean;
    ScalarVolume std; ///< population (divide by n)
};

/// One-pass per-voxel mean and standard deviation (Welford, double precision).
class MeanStdAccumulator
{
public:
    /// The first volume fixes the grid; later ones must match.
    void add(const ScalarVolume& v);

    std::size_t count() const { return _n; }

    /// Throws std::logic_error if nothing was added.
    MeanStd result() const;

private:
    GridMeta _meta;
    std::vector<double> _mean;
    std::vector<double> _m2;
    std::size_t _n = 0;
};

MeanStd aggregate_mean_std(std::span<const ScalarVolume> volumes);

} // namespace maskreg
