#include "maskreg/aggregate.h"

#include <cmath>
#include <stdexcept>

namespace maskreg {

void MeanStdAccumulator::add(const ScalarVolume& v)
{
    if (_n == 0) {
        _meta = v.meta();
        _mean.assign(v.size(), 0.0);
        _m2.assign(v.size(), 0.0);
    }
    else {
        require_same_grid(_meta, v.meta(), "aggregate_mean_std");
    }
    ++_n;
    const double n = double(_n);
    for (std::size_t i = 0; i < _mean.size(); ++i) {
        const double x = v[i];
        const double delta = x - _mean[i];
        _mean[i] += delta / n;
        _m2[i] += delta * (x - _mean[i]);
    }
}

MeanStd MeanStdAccumulator::result() const
{
    if (_n == 0) {
        throw std::logic_error("aggregate_mean_std: empty stream");
    }
    MeanStd out{ScalarVolume(_meta), ScalarVolume(_meta)};
    for (std::size_t i = 0; i < _mean.size(); ++i) {
        out.mean[i] = float(_mean[i]);
        out.std[i] = float(std::sqrt(std::max(0.0, _m2[i] / double(_n))));
    }
    return out;
}

MeanStd aggregate_mean_std(std::span<const ScalarVolume> volumes)
{
    if (volumes.empty()) {
        throw std::invalid_argument("aggregate_mean_std: empty stream");
    }
    MeanStdAccumulator acc;
    for (const auto& v : volumes) {
        acc.add(v);
    }
    return acc.result();
}

} // namespace maskreg
