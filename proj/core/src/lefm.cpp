#include "maskreg/lefm.h"

#include <stdexcept>

namespace maskreg {

LefmAccumulator::LefmAccumulator(LabelVolume reference) :
    _reference(std::move(reference)), _mismatches(_reference.size(), 0)
{
}

void LefmAccumulator::add(const LabelVolume& warped)
{
    require_same_grid(_reference.meta(), warped.meta(), "lefm");
    for (std::size_t i = 0; i < _mismatches.size(); ++i) {
        _mismatches[i] += warped[i] != _reference[i];
    }
    ++_n;
}

ScalarVolume LefmAccumulator::result() const
{
    if (_n == 0) {
        throw std::logic_error("lefm: empty cohort");
    }
    ScalarVolume out(_reference.meta());
    for (std::size_t i = 0; i < _mismatches.size(); ++i) {
        out[i] = float(100.0 * double(_mismatches[i]) / double(_n));
    }
    return out;
}

ScalarVolume lefm(const LabelVolume& reference, std::span<const LabelVolume> warped)
{
    if (warped.empty()) {
        throw std::invalid_argument("lefm: empty cohort");
    }
    LefmAccumulator acc(reference);
    for (const auto& w : warped) {
        acc.add(w);
    }
    return acc.result();
}

} // namespace maskreg
