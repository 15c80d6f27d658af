#pragma once

#include "maskreg/channels.h"
#include "maskreg/volume.h"

#include <array>
#include <vector>

namespace maskreg {

/// Anti-alias sigma for factor-2 decimation, in voxels of the finer grid.
inline constexpr double kDownsampleSigma = 0.86602540378443865;  // sqrt(3)/2
inline constexpr int kDownsampleRadius = 2;

/// The 5-tap Gaussian, renormalized to unit sum. Index 0 is offset -2.
std::array<double, 2 * kDownsampleRadius + 1> downsample_kernel();

/// ceil(dims / 2) per axis, doubled spacing, same origin.
GridMeta downsampled_meta(const GridMeta& meta);

/// dims after `level` successive ceil-halvings.
Int3 level_dims(Int3 dims, int level);

/// Separable Gaussian prefilter (clamped borders) followed by keeping the
/// even-indexed samples on every axis.
ScalarVolume gaussian_downsample(const ScalarVolume& vol);

/// Level 0 is the input, level L is the downsampled level L-1. Every channel,
/// masks included, goes through the same resampler; weights are carried over.
struct Pyramid
{
    std::vector<ChannelStack> levels;

    std::size_t size() const { return levels.size(); }
    const ChannelStack& level(std::size_t l) const { return levels[l]; }
};

Pyramid build_pyramid(const ChannelStack& stack, int levels);

/// Trilinear resampling of a coarse field at (fine voxel) / 2, scaled by 2
/// because displacements are stored in voxel units of their own grid.
/// Throws std::invalid_argument unless ceil(target.dims / 2) == field dims.
DisplacementField upsample_field(const DisplacementField& field, const GridMeta& target);

} // namespace maskreg
