#pragma once

#include "maskreg/volume.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace maskreg {

/// Corner offsets and fractional weights for one trilinear lookup.
/// Coordinates are clamped to [0, n-1] per axis, so out-of-range samples
/// take the border value.
struct TrilinearStencil
{
    std::size_t base = 0;
    std::size_t step[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
};

inline TrilinearStencil make_stencil(const Int3& dims, const Vec3d& coord)
{
    TrilinearStencil s;
    std::size_t stride = 1;
    for (int a = 0; a < 3; ++a) {
        const double hi = double(dims[a] - 1);
        const double c = std::clamp(coord[a], 0.0, hi);
        const int i0 = int(c);
        if (i0 >= dims[a] - 1) {
            s.base += std::size_t(dims[a] - 1) * stride;
        }
        else {
            s.base += std::size_t(i0) * stride;
            s.step[a] = stride;
            s.frac[a] = c - double(i0);
        }
        stride *= std::size_t(dims[a]);
    }
    return s;
}

/// Nested linear blends; exact at grid nodes and bounded by the corner values.
template<typename T>
inline double blend(const T* v, const TrilinearStencil& s)
{
    const std::size_t b = s.base;
    const std::size_t dx = s.step[0], dy = s.step[1], dz = s.step[2];
    const double fx = s.frac[0], fy = s.frac[1], fz = s.frac[2];

    const double c00 = std::lerp(double(v[b]), double(v[b + dx]), fx);
    const double c10 = std::lerp(double(v[b + dy]), double(v[b + dy + dx]), fx);
    const double c01 = std::lerp(double(v[b + dz]), double(v[b + dz + dx]), fx);
    const double c11 = std::lerp(double(v[b + dz + dy]), double(v[b + dz + dy + dx]), fx);
    const double c0 = std::lerp(c00, c10, fy);
    const double c1 = std::lerp(c01, c11, fy);
    return std::lerp(c0, c1, fz);
}

inline double trilinear_sample(const ScalarVolume& vol, const Vec3d& coord)
{
    return blend(vol.data().data(), make_stencil(vol.dims(), coord));
}

Vec3d trilinear_sample(const DisplacementField& field, const Vec3d& coord);

/// Round half away from zero per axis, then clamp to the grid.
inline Int3 nearest_voxel(const Int3& dims, const Vec3d& coord)
{
    Int3 p;
    for (int a = 0; a < 3; ++a) {
        const double hi = double(dims[a] - 1);
        p[a] = int(std::round(std::clamp(coord[a], 0.0, hi)));
    }
    return p;
}

inline std::uint16_t nearest_sample(const LabelVolume& labels, const Vec3d& coord)
{
    return labels(nearest_voxel(labels.dims(), coord));
}

} // namespace maskreg
