#pragma once

#include "maskreg/volume.h"

#include <string>
#include <vector>

namespace maskreg {

enum class ChannelKind { Intensity, Mask };

struct Channel
{
    std::string name;
    ScalarVolume volume;
    double weight = 1.0;
    ChannelKind kind = ChannelKind::Intensity;
};

/// Ordered, weighted channels on one grid: the image representation the
/// registration works on (FF, WF, SAT mask, muscle mask).
class ChannelStack
{
public:
    ChannelStack() = default;
    explicit ChannelStack(const GridMeta& meta) : _meta(meta), _has_meta(true) {}

    /// Throws std::invalid_argument on grid mismatch, duplicate name or a
    /// negative / non-finite weight. The first channel added fixes the grid
    /// of a default-constructed stack.
    void add(std::string name, ScalarVolume volume, double weight,
             ChannelKind kind = ChannelKind::Intensity);

    const GridMeta& meta() const { return _meta; }
    std::size_t size() const { return _channels.size(); }
    bool empty() const { return _channels.empty(); }

    const Channel& operator[](std::size_t i) const { return _channels[i]; }
    Channel& operator[](std::size_t i) { return _channels[i]; }

    auto begin() const { return _channels.begin(); }
    auto end() const { return _channels.end(); }
    auto begin() { return _channels.begin(); }
    auto end() { return _channels.end(); }

    const Channel* find(const std::string& name) const;

    /// Copy with every mask channel removed.
    ChannelStack without_masks() const;

    /// Sets the weight of every channel of `kind`.
    void set_weight(ChannelKind kind, double weight);

    /// Mask channels must hold only 0 and 1; throws std::invalid_argument otherwise.
    void require_binary_masks() const;

private:
    GridMeta _meta;
    bool _has_meta = false;
    std::vector<Channel> _channels;
};

/// Same grid, same channel count and names in the same order.
void require_compatible(const ChannelStack& fixed, const ChannelStack& moving);

} // namespace maskreg
