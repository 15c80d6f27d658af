#include "maskreg/pyramid.h"
#include "maskreg/interpolate.h"

#include <cmath>
#include <stdexcept>

namespace maskreg {

std::array<double, 2 * kDownsampleRadius + 1> downsample_kernel()
{
    std::array<double, 2 * kDownsampleRadius + 1> k{};
    double sum = 0.0;
    for (int i = -kDownsampleRadius; i <= kDownsampleRadius; ++i) {
        k[i + kDownsampleRadius] = std::exp(-double(i * i) / (2.0 * kDownsampleSigma * kDownsampleSigma));
        sum += k[i + kDownsampleRadius];
    }
    for (auto& w : k) {
        w /= sum;
    }
    return k;
}

GridMeta downsampled_meta(const GridMeta& meta)
{
    GridMeta out = meta;
    for (int a = 0; a < 3; ++a) {
        out.dims[a] = (meta.dims[a] + 1) / 2;
        out.spacing[a] = meta.spacing[a] * 2.0;
    }
    return out;
}

Int3 level_dims(Int3 dims, int level)
{
    for (int l = 0; l < level; ++l) {
        for (int a = 0; a < 3; ++a) {
            dims[a] = (dims[a] + 1) / 2;
        }
    }
    return dims;
}

namespace {

// Filters along `axis` and keeps even samples on that axis only.
std::vector<double> filter_axis(const std::vector<double>& in, Int3 dims, int axis, Int3& out_dims)
{
    static const auto kernel = downsample_kernel();

    out_dims = dims;
    out_dims[axis] = (dims[axis] + 1) / 2;

    const std::size_t stride[3] = {1, std::size_t(dims.x), std::size_t(dims.x) * std::size_t(dims.y)};
    const int n = dims[axis];

    std::vector<double> out(std::size_t(out_dims.x) * out_dims.y * out_dims.z);
    std::size_t o = 0;
    for (int z = 0; z < out_dims.z; ++z) {
        for (int y = 0; y < out_dims.y; ++y) {
            for (int x = 0; x < out_dims.x; ++x, ++o) {
                Int3 src{x, y, z};
                src[axis] *= 2;
                const int centre = src[axis];
                src[axis] = 0;
                const std::size_t row = std::size_t(src.x) * stride[0] + std::size_t(src.y) * stride[1] +
                                        std::size_t(src.z) * stride[2];
                double acc = 0.0;
                for (int k = -kDownsampleRadius; k <= kDownsampleRadius; ++k) {
                    const int i = std::clamp(centre + k, 0, n - 1);
                    acc += kernel[k + kDownsampleRadius] * in[row + std::size_t(i) * stride[axis]];
                }
                out[o] = acc;
            }
        }
    }
    return out;
}

} // namespace

ScalarVolume gaussian_downsample(const ScalarVolume& vol)
{
    std::vector<double> buf(vol.data().begin(), vol.data().end());
    Int3 dims = vol.dims();
    for (int axis = 0; axis < 3; ++axis) {
        Int3 next;
        buf = filter_axis(buf, dims, axis, next);
        dims = next;
    }
    std::vector<float> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) {
        out[i] = float(buf[i]);
    }
    return ScalarVolume(downsampled_meta(vol.meta()), std::move(out));
}

Pyramid build_pyramid(const ChannelStack& stack, int levels)
{
    if (levels < 1) {
        throw std::invalid_argument("build_pyramid: levels must be >= 1");
    }
    Pyramid p;
    p.levels.reserve(std::size_t(levels));
    p.levels.push_back(stack);
    for (int l = 1; l < levels; ++l) {
        const ChannelStack& prev = p.levels.back();
        ChannelStack next(downsampled_meta(prev.meta()));
        for (const auto& c : prev) {
            next.add(c.name, gaussian_downsample(c.volume), c.weight, c.kind);
        }
        p.levels.push_back(std::move(next));
    }
    return p;
}

DisplacementField upsample_field(const DisplacementField& field, const GridMeta& target)
{
    target.validate();
    for (int a = 0; a < 3; ++a) {
        if ((target.dims[a] + 1) / 2 != field.dims()[a]) {
            throw std::invalid_argument("upsample_field: target dims are not the finer level of the field");
        }
    }
    DisplacementField out(target);
    for (int z = 0; z < target.dims.z; ++z) {
        for (int y = 0; y < target.dims.y; ++y) {
            for (int x = 0; x < target.dims.x; ++x) {
                const Vec3d u = trilinear_sample(field, Vec3d{0.5 * x, 0.5 * y, 0.5 * z});
                out(x, y, z) = vec_cast<float>(u * 2.0);
            }
        }
    }
    return out;
}

} // namespace maskreg
