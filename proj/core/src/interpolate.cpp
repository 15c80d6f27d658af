#include "maskreg/interpolate.h"

namespace maskreg {

Vec3d trilinear_sample(const DisplacementField& field, const Vec3d& coord)
{
    const auto s = make_stencil(field.dims(), coord);
    const Vec3f* v = field.data().data();
    Vec3d out;
    for (int a = 0; a < 3; ++a) {
        const std::size_t b = s.base;
        const std::size_t dx = s.step[0], dy = s.step[1], dz = s.step[2];
        const double c00 = std::lerp(double(v[b][a]), double(v[b + dx][a]), s.frac[0]);
        const double c10 = std::lerp(double(v[b + dy][a]), double(v[b + dy + dx][a]), s.frac[0]);
        const double c01 = std::lerp(double(v[b + dz][a]), double(v[b + dz + dx][a]), s.frac[0]);
        const double c11 =
            std::lerp(double(v[b + dz + dy][a]), double(v[b + dz + dy + dx][a]), s.frac[0]);
        out[a] = std::lerp(std::lerp(c00, c10, s.frac[1]), std::lerp(c01, c11, s.frac[1]), s.frac[2]);
    }
    return out;
}

} // namespace maskreg
