#pragma once

#include "maskreg/volume.h"

#include <cstddef>

namespace maskreg {

/// out(p) = vol(p + u(p)), trilinear with border clamp. The field grid is
/// the output grid.
ScalarVolume warp_scalar(const ScalarVolume& vol, const DisplacementField& field);

/// out(p) = labels(round(p + u(p))), nearest neighbour with border clamp.
/// Keeps the input's dictionary and storage type.
LabelVolume warp_labels(const LabelVolume& labels, const DisplacementField& field);

/// det(I + grad u) in voxel units: central differences inside, one-sided
/// differences on the faces. Requires at least 2 voxels per axis.
ScalarVolume jacobian_determinant(const DisplacementField& field);

/// Number of voxels with a non-positive Jacobian determinant.
std::size_t count_folds(const ScalarVolume& jacobian);

} // namespace maskreg
