#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maskreg {

template<typename T>
struct Vec3
{
    T x{};
    T y{};
    T z{};

    constexpr T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(T s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

using Vec3f = Vec3<float>;
using Vec3d = Vec3<double>;
using Int3 = Vec3<int>;

template<typename To, typename From>
constexpr Vec3<To> vec_cast(const Vec3<From>& v)
{
    return {static_cast<To>(v.x), static_cast<To>(v.y), static_cast<To>(v.z)};
}

template<typename T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Grid geometry shared by every volume type. Spacing and origin are in mm;
/// origin is the world position of voxel (0,0,0).
struct GridMeta
{
    Int3 dims{1, 1, 1};
    Vec3d spacing{1.0, 1.0, 1.0};
    Vec3d origin{0.0, 0.0, 0.0};

    /// Throws std::invalid_argument unless dims >= 1, spacing > 0 and all finite.
    void validate() const;

    std::size_t voxel_count() const
    {
        return std::size_t(dims.x) * std::size_t(dims.y) * std::size_t(dims.z);
    }

    friend bool operator==(const GridMeta&, const GridMeta&) = default;
};

GridMeta make_grid(Int3 dims, Vec3d spacing = {1.0, 1.0, 1.0}, Vec3d origin = {0.0, 0.0, 0.0});

/// Throws std::invalid_argument naming `what` when the two grids differ.
void require_same_grid(const GridMeta& a, const GridMeta& b, const char* what);

/// Dense 3D grid stored x-fastest: index = x + nx*(y + ny*z).
template<typename T>
class Volume
{
public:
    using value_type = T;

    Volume() = default;

    explicit Volume(const GridMeta& meta, T fill = T{}) : _meta(meta)
    {
        _meta.validate();
        _data.assign(_meta.voxel_count(), fill);
    }

    Volume(const GridMeta& meta, std::vector<T> data) : _meta(meta), _data(std::move(data))
    {
        _meta.validate();
        check_size();
    }

    const GridMeta& meta() const { return _meta; }
    const Int3& dims() const { return _meta.dims; }
    std::size_t size() const { return _data.size(); }
    bool empty() const { return _data.empty(); }

    std::size_t index(int x, int y, int z) const
    {
        return std::size_t(x) + std::size_t(_meta.dims.x) *
            (std::size_t(y) + std::size_t(_meta.dims.y) * std::size_t(z));
    }
    std::size_t index(const Int3& p) const { return index(p.x, p.y, p.z); }

    Int3 coord(std::size_t i) const
    {
        const auto nx = std::size_t(_meta.dims.x);
        const auto ny = std::size_t(_meta.dims.y);
        return {int(i % nx), int((i / nx) % ny), int(i / (nx * ny))};
    }

    bool contains(const Int3& p) const
    {
        return p.x >= 0 && p.y >= 0 && p.z >= 0 &&
               p.x < _meta.dims.x && p.y < _meta.dims.y && p.z < _meta.dims.z;
    }

    T& operator()(int x, int y, int z) { return _data[index(x, y, z)]; }
    const T& operator()(int x, int y, int z) const { return _data[index(x, y, z)]; }
    T& operator()(const Int3& p) { return _data[index(p)]; }
    const T& operator()(const Int3& p) const { return _data[index(p)]; }

    T& operator[](std::size_t i) { return _data[i]; }
    const T& operator[](std::size_t i) const { return _data[i]; }

    std::span<T> data() { return _data; }
    std::span<const T> data() const { return _data; }

    friend bool operator==(const Volume&, const Volume&) = default;

protected:
    void check_size() const
    {
        if (_data.size() != _meta.voxel_count()) {
            throw std::invalid_argument("Volume: value count does not match nx*ny*nz");
        }
    }

    GridMeta _meta;
    std::vector<T> _data;
};

using ScalarVolume = Volume<float>;
using DisplacementField = Volume<Vec3f>;

using LabelDictionary = std::map<int, std::string>;

/// On-disk element type of a label volume.
enum class LabelStorage { UChar, UShort };

/// Integer tissue labels, 0 = background, plus the id -> name dictionary.
class LabelVolume : public Volume<std::uint16_t>
{
public:
    LabelVolume() = default;
    explicit LabelVolume(const GridMeta& meta, std::uint16_t fill = 0) : Volume(meta, fill) {}
    LabelVolume(const GridMeta& meta, std::vector<std::uint16_t> labels,
                LabelDictionary names = {}, LabelStorage storage = LabelStorage::UChar);

    const LabelDictionary& names() const { return _names; }
    LabelDictionary& names() { return _names; }

    /// Name for `id`; falls back to "label_<id>" for ids missing from the dictionary.
    std::string name_of(int id) const;

    LabelStorage storage() const { return _storage; }
    void set_storage(LabelStorage s) { _storage = s; }

    /// Sorted distinct foreground ids present in the volume.
    std::vector<int> foreground_labels() const;

    /// Adds "label_<id>" entries for any foreground id missing from the dictionary.
    void complete_dictionary();

    friend bool operator==(const LabelVolume&, const LabelVolume&) = default;

private:
    LabelDictionary _names;
    LabelStorage _storage = LabelStorage::UChar;
};

} // namespace maskreg
