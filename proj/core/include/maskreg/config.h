#pragma once

#include "maskreg/energy.h"
#include "maskreg/volume.h"

#include <string>
#include <string_view>

namespace maskreg {

/// Registration parameters. The defaults are the mask-supported setup:
/// six Gaussian pyramid levels down to full resolution, 12^3 blocks, SSD,
/// additive updates with step 0.5, quadratic regularization weighted 0.1,
/// intensity channels weighted 1 and mask channels 0.6.
struct RegistrationConfig
{
    int pyramid_levels = 6;
    int pyramid_stop_level = 0;
    Int3 block_size{12, 12, 12};
    double block_energy_epsilon = 1e-7;
    int max_iteration_count = 100;
    double step_size = 0.5;
    double regularization_scale = 1.0;
    double regularization_exponent = 2.0;
    double regularization_weight = 0.1;
    std::string image_resampler = "gaussian";
    std::string cost_function = "ssd";
    std::string update_rule = "additive";
    bool image_normalization = true;
    double intensity_weight = 1.0;
    double mask_weight = 0.6;

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const;

    EnergyParams energy_params() const
    {
        return {regularization_weight, regularization_scale, regularization_exponent};
    }

    friend bool operator==(const RegistrationConfig&, const RegistrationConfig&) = default;
};

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses a JSON object whose keys are the snake_case field names above.
/// Absent keys keep their defaults; unknown keys and wrong types throw
/// ConfigError. The result is validated.
RegistrationConfig parse_config(std::string_view json_text);
RegistrationConfig load_config(const std::string& path);

/// Pretty-printed JSON with every field, in declaration order.
std::string config_to_json(const RegistrationConfig& config);

} // namespace maskreg
