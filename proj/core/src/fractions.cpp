#include "maskreg/fractions.h"

#include <stdexcept>

namespace maskreg {

Fractions compute_fractions(const ScalarVolume& water, const ScalarVolume& fat)
{
    require_same_grid(water.meta(), fat.meta(), "compute_fractions");

    Fractions out{ScalarVolume(water.meta()), ScalarVolume(water.meta())};
    for (std::size_t i = 0; i < water.size(); ++i) {
        const double w = water[i];
        const double f = fat[i];
        if (w < 0.0 || f < 0.0) {
            throw std::invalid_argument("compute_fractions: negative signal");
        }
        const double total = w + f;
        if (total > 0.0) {
            out.ff[i] = float(f / total);
            out.wf[i] = float(w / total);
        }
    }
    return out;
}

} // namespace maskreg
