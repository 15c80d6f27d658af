#pragma once

#include "maskreg/volume.h"

#include <cstdint>
#include <span>
#include <vector>

namespace maskreg {

/// Streaming label error frequency: per voxel, 100 * (subjects whose label
/// differs from the reference, background included) / subjects.
class LefmAccumulator
{
public:
    explicit LefmAccumulator(LabelVolume reference);

    /// Throws std::invalid_argument on grid mismatch.
    void add(const LabelVolume& warped);

    std::size_t count() const { return _n; }

    /// Percentages in [0, 100]; throws std::logic_error if nothing was added.
    ScalarVolume result() const;

private:
    LabelVolume _reference;
    std::vector<std::uint32_t> _mismatches;
    std::size_t _n = 0;
};

ScalarVolume lefm(const LabelVolume& reference, std::span<const LabelVolume> warped);

} // namespace maskreg
