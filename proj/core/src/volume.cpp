#include "maskreg/volume.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maskreg {

void GridMeta::validate() const
{
    for (int a = 0; a < 3; ++a) {
        if (dims[a] < 1) {
            throw std::invalid_argument("GridMeta: dims must be >= 1 on every axis");
        }
        if (!std::isfinite(spacing[a]) || spacing[a] <= 0.0) {
            throw std::invalid_argument("GridMeta: spacing must be finite and > 0");
        }
        if (!std::isfinite(origin[a])) {
            throw std::invalid_argument("GridMeta: origin must be finite");
        }
    }
}

GridMeta make_grid(Int3 dims, Vec3d spacing, Vec3d origin)
{
    GridMeta m{dims, spacing, origin};
    m.validate();
    return m;
}

void require_same_grid(const GridMeta& a, const GridMeta& b, const char* what)
{
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
    }
}

LabelVolume::LabelVolume(const GridMeta& meta, std::vector<std::uint16_t> labels,
                         LabelDictionary names, LabelStorage storage)
    : Volume(meta, std::move(labels)), _names(std::move(names)), _storage(storage)
{
}

std::string LabelVolume::name_of(int id) const
{
    auto it = _names.find(id);
    if (it != _names.end()) {
        return it->second;
    }
    return "label_" + std::to_string(id);
}

std::vector<int> LabelVolume::foreground_labels() const
{
    std::vector<bool> seen(65536, false);
    for (auto v : _data) {
        seen[v] = true;
    }
    std::vector<int> out;
    for (int id = 1; id < 65536; ++id) {
        if (seen[id]) {
            out.push_back(id);
        }
    }
    return out;
}

void LabelVolume::complete_dictionary()
{
    for (int id : foreground_labels()) {
        _names.try_emplace(id, "label_" + std::to_string(id));
    }
}

} // namespace maskreg
