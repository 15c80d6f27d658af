#pragma once

#include "maskreg/channels.h"
#include "maskreg/volume.h"

#include <array>
#include <cstdint>
#include <vector>

namespace maskreg {

/// u_axis += amplitude * sin(2 pi p_along / period + phase), all in voxels.
struct SinusoidTerm
{
    int axis = 0;
    int along = 0;
    double amplitude = 0.0;
    double period = 32.0;
    double phase = 0.0;
};

/// Generating displacement d(p) = translation + linear (p - centre) + sinusoids,
/// in voxel units. The subject is built so that subject(p + d(p)) = reference(p).
struct DeformationSpec
{
    Vec3d translation{};
    std::array<std::array<double, 3>, 3> linear{};
    std::vector<SinusoidTerm> sinusoids;

    Vec3d displacement(const Vec3d& p, const Vec3d& centre) const;
    /// Analytic det(I + grad d) at p.
    double jacobian(const Vec3d& p) const;
};

/// Sampling ranges for random_deformation. Periods are fractions of the
/// grid extent along the sinusoid's `along` axis.
struct DeformationRange
{
    double max_translation = 2.0;
    double max_linear = 0.03;
    double min_amplitude = 0.75;
    double max_amplitude = 1.5;
    double min_period = 0.6;
    double max_period = 1.0;
};

/// Seeded smooth deformation: a translation, a mild linear part and one
/// sinusoid per axis.
DeformationSpec random_deformation(std::uint64_t seed, Int3 dims, const DeformationRange& range = {});

struct PhantomSpec
{
    Int3 dims{64, 64, 64};
    std::uint64_t seed = 1;
    /// Interior organs: two wall organs along the inner muscle wall, then blobs.
    int organ_count = 4;
    DeformationSpec deformation;
    /// Wall organs take the muscle's fat fraction, so only the muscle mask
    /// separates them from the muscle layer.
    bool ambiguous = false;
};

namespace phantom_labels {
inline constexpr std::uint16_t kBackground = 0;
inline constexpr std::uint16_t kSat = 1;
inline constexpr std::uint16_t kMuscle = 2;
inline constexpr std::uint16_t kVat = 3;
inline constexpr std::uint16_t kWallLeft = 4;
inline constexpr std::uint16_t kWallRight = 5;
inline constexpr std::uint16_t kFirstBlob = 6;
} // namespace phantom_labels

inline constexpr double kPhantomIntensityWeight = 1.0;
inline constexpr double kPhantomMaskWeight = 0.6;

/// Channels ff, wf (intensity) and sat, muscle (mask) plus the label map.
struct Phantom
{
    ChannelStack stack;
    LabelVolume labels;
};

struct PhantomSubject
{
    ChannelStack stack;
    LabelVolume labels;
    DisplacementField truth;
};

/// Nested-ellipsoid body: SAT shell, muscle layer, VAT-filled interior with
/// organs. Throws std::invalid_argument for dims < 8 or organ_count < 2.
Phantom make_reference(const PhantomSpec& spec);

/// Warps the reference channels (trilinear) and labels (nearest) by the
/// inverse of p -> p + d(p); masks are the indicators of the warped labels.
/// Throws std::invalid_argument if d is not invertible on the grid.
PhantomSubject make_subject(const Phantom& reference, const PhantomSpec& spec);

/// Labels >= kVat.
std::vector<int> interior_labels(const LabelVolume& labels);

} // namespace maskreg
