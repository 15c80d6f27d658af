#pragma once

#include "maskreg/volume.h"

namespace maskreg {

struct Fractions
{
    ScalarVolume ff;
    ScalarVolume wf;
};

/// ff = fat / (water + fat), wf = water / (water + fat); both 0 where the
/// summed signal is 0. Throws std::invalid_argument on grid mismatch or
/// negative signal.
Fractions compute_fractions(const ScalarVolume& water, const ScalarVolume& fat);

} // namespace maskreg
