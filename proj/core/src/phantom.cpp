#include "maskreg/phantom.h"
#include "maskreg/interpolate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace maskreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double kSatInner = 0.80;
constexpr double kMuscleInner = 0.62;
constexpr double kWallInner = 0.44;

constexpr float kFatSat = 0.60f;
constexpr float kFatMuscle = 0.08f;
constexpr float kFatVat = 0.60f;
constexpr float kFatWall = 0.30f;
constexpr double kTextureAmplitude = 0.18;
constexpr double kTextureWavelengthMin = 10.0;
constexpr double kTextureWavelengthMax = 20.0;

// Portable uniform draws from the raw 64-bit stream.
class Draw
{
public:
    explicit Draw(std::uint64_t seed) : _gen(seed) {}
    double unit() { return double(_gen() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 _gen;
};

struct Blob
{
    Vec3d centre;
    Vec3d radii;
};

Vec3d grid_centre(const Int3& dims)
{
    return {0.5 * (dims.x - 1), 0.5 * (dims.y - 1), 0.5 * (dims.z - 1)};
}

Vec3d body_radii(const Int3& dims)
{
    return {0.40 * dims.x, 0.40 * dims.y, 0.40 * dims.z};
}

// Smooth seeded modulation of the fat fraction inside fatty tissue so that
// sliding along uniform shells is observable.
class Texture
{
public:
    explicit Texture(Draw& draw)
    {
        for (std::size_t i = 0; i < _waves.size(); ++i) {
            const int a = int(i % 3);
            Vec3d dir{draw.range(-0.4, 0.4), draw.range(-0.4, 0.4), draw.range(-0.4, 0.4)};
            dir[a] = 1.0;
            const double wavelength = draw.range(kTextureWavelengthMin, kTextureWavelengthMax);
            _waves[i].k = dir * (kTwoPi / (wavelength * std::sqrt(dot(dir, dir))));
            _waves[i].phase = draw.range(0.0, kTwoPi);
        }
    }

    double operator()(const Vec3d& p) const
    {
        double sum = 0.0;
        for (const auto& w : _waves) {
            sum += std::sin(dot(w.k, p) + w.phase);
        }
        return kTextureAmplitude * sum;
    }

private:
    struct Wave
    {
        Vec3d k;
        double phase = 0.0;
    };
    std::array<Wave, 3> _waves{};
};

float blob_fat(int k)
{
    static constexpr float values[] = {0.04f, 0.55f, 0.18f, 0.65f, 0.12f, 0.45f};
    return values[std::size_t(k) % std::size(values)];
}

} // namespace

Vec3d DeformationSpec::displacement(const Vec3d& p, const Vec3d& centre) const
{
    const Vec3d r = p - centre;
    Vec3d d = translation;
    for (int i = 0; i < 3; ++i) {
        d[i] += linear[std::size_t(i)][0] * r.x + linear[std::size_t(i)][1] * r.y + linear[std::size_t(i)][2] * r.z;
    }
    for (const auto& s : sinusoids) {
        d[s.axis] += s.amplitude * std::sin(kTwoPi * p[s.along] / s.period + s.phase);
    }
    return d;
}

double DeformationSpec::jacobian(const Vec3d& p) const
{
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m[i][j] = (i == j ? 1.0 : 0.0) + linear[std::size_t(i)][std::size_t(j)];
        }
    }
    for (const auto& s : sinusoids) {
        m[s.axis][s.along] += s.amplitude * kTwoPi / s.period * std::cos(kTwoPi * p[s.along] / s.period + s.phase);
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

DeformationSpec random_deformation(std::uint64_t seed, Int3 dims, const DeformationRange& range)
{
    Draw draw(seed ^ 0x9e3779b97f4a7c15ULL);
    DeformationSpec d;
    for (int i = 0; i < 3; ++i) {
        d.translation[i] = draw.range(-range.max_translation, range.max_translation);
        for (int j = 0; j < 3; ++j) {
            d.linear[std::size_t(i)][std::size_t(j)] = draw.range(-range.max_linear, range.max_linear);
        }
    }
    for (int k = 0; k < 3; ++k) {
        SinusoidTerm s;
        s.axis = k;
        s.along = draw.unit() < 0.5 ? k : (k + 1) % 3;
        s.amplitude = draw.range(range.min_amplitude, range.max_amplitude);
        s.period = draw.range(range.min_period, range.max_period) * dims[s.along];
        s.phase = draw.range(0.0, kTwoPi);
        d.sinusoids.push_back(s);
    }
    return d;
}

Phantom make_reference(const PhantomSpec& spec)
{
    using namespace phantom_labels;
    const Int3 dims = spec.dims;
    if (dims.x < 8 || dims.y < 8 || dims.z < 8) {
        throw std::invalid_argument("phantom: dims must be at least 8 per axis");
    }
    if (spec.organ_count < 2) {
        throw std::invalid_argument("phantom: organ_count must be at least 2");
    }
    const GridMeta meta = make_grid(dims);
    const Vec3d c = grid_centre(dims);
    const Vec3d rb = body_radii(dims);

    Draw draw(spec.seed);
    std::vector<Blob> blobs;
    for (int k = 0; k < spec.organ_count - 2; ++k) {
        Blob b;
        for (int a = 0; a < 3; ++a) {
            b.centre[a] = draw.range(-0.25, 0.25);
            b.radii[a] = draw.range(0.16, 0.24);
        }
        blobs.push_back(b);
    }

    const Texture texture(draw);

    LabelVolume labels(meta);
    ScalarVolume ff(meta), wf(meta), sat(meta), muscle(meta);
    const float wall_fat = spec.ambiguous ? kFatMuscle : kFatWall;
    for (int z = 0; z < dims.z; ++z) {
        for (int y = 0; y < dims.y; ++y) {
            for (int x = 0; x < dims.x; ++x) {
                const Vec3d q{(x - c.x) / rb.x, (y - c.y) / rb.y, (z - c.z) / rb.z};
                const double rho = std::sqrt(dot(q, q));
                std::uint16_t id = kBackground;
                float fat = 0.0f;
                if (rho <= 1.0) {
                    if (rho > kSatInner) {
                        id = kSat;
                        fat = kFatSat;
                    }
                    else if (rho > kMuscleInner) {
                        id = kMuscle;
                        fat = kFatMuscle;
                    }
                    else if (rho > kWallInner && std::abs(q.z) < 0.45 && std::abs(q.x) > 0.5 * rho) {
                        id = q.x < 0.0 ? kWallLeft : kWallRight;
                        fat = wall_fat;
                    }
                    else {
                        id = kVat;
                        fat = kFatVat;
                        for (std::size_t k = 0; k < blobs.size(); ++k) {
                            const Vec3d e{(q.x - blobs[k].centre.x) / blobs[k].radii.x,
                                          (q.y - blobs[k].centre.y) / blobs[k].radii.y,
                                          (q.z - blobs[k].centre.z) / blobs[k].radii.z};
                            if (dot(e, e) <= 1.0) {
                                id = std::uint16_t(kFirstBlob + k);
                                fat = blob_fat(int(k));
                                break;
                            }
                        }
                    }
                }
                const std::size_t i = labels.index(x, y, z);
                labels[i] = id;
                if (id != kBackground) {
                    if (id != kMuscle && id != kWallLeft && id != kWallRight) {
                        fat = std::clamp(fat + float(texture(Vec3d{double(x), double(y), double(z)})), 0.0f, 1.0f);
                    }
                    ff[i] = fat;
                    wf[i] = 1.0f - fat;
                }
                sat[i] = id == kSat ? 1.0f : 0.0f;
                muscle[i] = id == kMuscle ? 1.0f : 0.0f;
            }
        }
    }

    labels.names() = {{kSat, "sat"}, {kMuscle, "muscle"}, {kVat, "vat"}, {kWallLeft, "wall_left"},
                      {kWallRight, "wall_right"}};
    for (std::size_t k = 0; k < blobs.size(); ++k) {
        labels.names()[int(kFirstBlob + k)] = "organ_" + std::to_string(k + 1);
    }

    Phantom out{ChannelStack(meta), std::move(labels)};
    out.stack.add("ff", std::move(ff), kPhantomIntensityWeight);
    out.stack.add("wf", std::move(wf), kPhantomIntensityWeight);
    out.stack.add("sat", std::move(sat), kPhantomMaskWeight, ChannelKind::Mask);
    out.stack.add("muscle", std::move(muscle), kPhantomMaskWeight, ChannelKind::Mask);
    return out;
}

PhantomSubject make_subject(const Phantom& reference, const PhantomSpec& spec)
{
    using namespace phantom_labels;
    const GridMeta& meta = reference.labels.meta();
    const Int3 dims = meta.dims;
    const Vec3d c = grid_centre(dims);
    const DeformationSpec& def = spec.deformation;

    DisplacementField truth(meta);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const Vec3d p = vec_cast<double>(truth.coord(i));
        if (!(def.jacobian(p) > 0.0)) {
            throw std::invalid_argument("phantom: deformation folds at a grid point");
        }
        truth[i] = vec_cast<float>(def.displacement(p, c));
    }

    const Channel* ff_ref = reference.stack.find("ff");
    const Channel* wf_ref = reference.stack.find("wf");
    if (!ff_ref || !wf_ref) {
        throw std::invalid_argument("phantom: reference lacks ff/wf channels");
    }

    LabelVolume labels(meta);
    labels.names() = reference.labels.names();
    labels.set_storage(reference.labels.storage());
    ScalarVolume ff(meta), wf(meta), sat(meta), muscle(meta);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        // Solve p + d(p) = q by fixed-point iteration.
        const Vec3d q = vec_cast<double>(labels.coord(i));
        Vec3d p = q;
        bool converged = false;
        for (int it = 0; it < 500; ++it) {
            const Vec3d next = q - def.displacement(p, c);
            const Vec3d diff = next - p;
            p = next;
            if (dot(diff, diff) < 1e-20) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw std::invalid_argument("phantom: deformation is not invertible on the grid");
        }
        ff[i] = float(trilinear_sample(ff_ref->volume, p));
        wf[i] = float(trilinear_sample(wf_ref->volume, p));
        const std::uint16_t id = nearest_sample(reference.labels, p);
        labels[i] = id;
        sat[i] = id == kSat ? 1.0f : 0.0f;
        muscle[i] = id == kMuscle ? 1.0f : 0.0f;
    }

    PhantomSubject out{ChannelStack(meta), std::move(labels), std::move(truth)};
    out.stack.add("ff", std::move(ff), ff_ref->weight);
    out.stack.add("wf", std::move(wf), wf_ref->weight);
    const Channel* sat_ref = reference.stack.find("sat");
    const Channel* muscle_ref = reference.stack.find("muscle");
    out.stack.add("sat", std::move(sat), sat_ref ? sat_ref->weight : kPhantomMaskWeight, ChannelKind::Mask);
    out.stack.add("muscle", std::move(muscle), muscle_ref ? muscle_ref->weight : kPhantomMaskWeight,
                  ChannelKind::Mask);
    return out;
}

std::vector<int> interior_labels(const LabelVolume& labels)
{
    std::vector<int> out;
    for (int id : labels.foreground_labels()) {
        if (id >= phantom_labels::kVat) {
            out.push_back(id);
        }
    }
    return out;
}

} // namespace maskreg
