#include "maskreg/warp.h"
#include "maskreg/interpolate.h"

#include <stdexcept>

namespace maskreg {

namespace {

Vec3d sample_point(const DisplacementField& field, std::size_t i)
{
    const Int3 p = field.coord(i);
    const Vec3f& u = field[i];
    return {p.x + double(u.x), p.y + double(u.y), p.z + double(u.z)};
}

// d u / d axis at p, in voxel units.
Vec3d derivative(const DisplacementField& f, const Int3& p, int axis)
{
    const int n = f.dims()[axis];
    Int3 lo = p;
    Int3 hi = p;
    double h = 2.0;
    if (p[axis] == 0) {
        hi[axis] += 1;
        h = 1.0;
    }
    else if (p[axis] == n - 1) {
        lo[axis] -= 1;
        h = 1.0;
    }
    else {
        lo[axis] -= 1;
        hi[axis] += 1;
    }
    const Vec3d a = vec_cast<double>(f(lo));
    const Vec3d b = vec_cast<double>(f(hi));
    return (b - a) * (1.0 / h);
}

} // namespace

ScalarVolume warp_scalar(const ScalarVolume& vol, const DisplacementField& field)
{
    ScalarVolume out(field.meta());
    for (std::size_t i = 0; i < field.size(); ++i) {
        out[i] = float(trilinear_sample(vol, sample_point(field, i)));
    }
    return out;
}

LabelVolume warp_labels(const LabelVolume& labels, const DisplacementField& field)
{
    LabelVolume out(field.meta());
    out.names() = labels.names();
    out.set_storage(labels.storage());
    for (std::size_t i = 0; i < field.size(); ++i) {
        out[i] = nearest_sample(labels, sample_point(field, i));
    }
    return out;
}

ScalarVolume jacobian_determinant(const DisplacementField& field)
{
    const Int3 d = field.dims();
    if (d.x < 2 || d.y < 2 || d.z < 2) {
        throw std::invalid_argument("jacobian_determinant: need at least 2 voxels per axis");
    }
    ScalarVolume out(field.meta());
    for (int z = 0; z < d.z; ++z) {
        for (int y = 0; y < d.y; ++y) {
            for (int x = 0; x < d.x; ++x) {
                const Int3 p{x, y, z};
                const Vec3d dx = derivative(field, p, 0);
                const Vec3d dy = derivative(field, p, 1);
                const Vec3d dz = derivative(field, p, 2);
                // Rows are components of u, columns the differentiation axis.
                const double a = 1.0 + dx.x, b = dy.x, c = dz.x;
                const double e = dx.y, f = 1.0 + dy.y, g = dz.y;
                const double h = dx.z, i = dy.z, j = 1.0 + dz.z;
                out(p) = float(a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h));
            }
        }
    }
    return out;
}

std::size_t count_folds(const ScalarVolume& jacobian)
{
    std::size_t n = 0;
    for (float v : jacobian.data()) {
        if (v <= 0.0f) {
            ++n;
        }
    }
    return n;
}

} // namespace maskreg
