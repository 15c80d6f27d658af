#include "maskreg/channels.h"

#include <cmath>
#include <stdexcept>

namespace maskreg {

void ChannelStack::add(std::string name, ScalarVolume volume, double weight, ChannelKind kind)
{
    if (!_has_meta) {
        _meta = volume.meta();
        _has_meta = true;
    }
    require_same_grid(_meta, volume.meta(), "ChannelStack::add");
    if (!std::isfinite(weight) || weight < 0.0) {
        throw std::invalid_argument("ChannelStack::add: weight must be finite and >= 0");
    }
    if (find(name) != nullptr) {
        throw std::invalid_argument("ChannelStack::add: duplicate channel '" + name + "'");
    }
    _channels.push_back(Channel{std::move(name), std::move(volume), weight, kind});
}

const Channel* ChannelStack::find(const std::string& name) const
{
    for (const auto& c : _channels) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

ChannelStack ChannelStack::without_masks() const
{
    ChannelStack out(_meta);
    for (const auto& c : _channels) {
        if (c.kind != ChannelKind::Mask) {
            out._channels.push_back(c);
        }
    }
    return out;
}

void ChannelStack::set_weight(ChannelKind kind, double weight)
{
    if (!std::isfinite(weight) || weight < 0.0) {
        throw std::invalid_argument("ChannelStack::set_weight: weight must be finite and >= 0");
    }
    for (auto& c : _channels) {
        if (c.kind == kind) {
            c.weight = weight;
        }
    }
}

void ChannelStack::require_binary_masks() const
{
    for (const auto& c : _channels) {
        if (c.kind != ChannelKind::Mask) {
            continue;
        }
        for (float v : c.volume.data()) {
            if (v != 0.0f && v != 1.0f) {
                throw std::invalid_argument("mask channel '" + c.name + "' is not binary");
            }
        }
    }
}

void require_compatible(const ChannelStack& fixed, const ChannelStack& moving)
{
    require_same_grid(fixed.meta(), moving.meta(), "fixed/moving channel stacks");
    if (fixed.size() != moving.size()) {
        throw std::invalid_argument("fixed/moving channel count mismatch");
    }
    for (std::size_t c = 0; c < fixed.size(); ++c) {
        if (fixed[c].name != moving[c].name) {
            throw std::invalid_argument("channel name mismatch: '" + fixed[c].name + "' vs '" +
                                        moving[c].name + "'");
        }
    }
}

} // namespace maskreg
