#include "maskreg/config.h"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace maskreg {

using nlohmann::ordered_json;

void RegistrationConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };

    if (pyramid_levels < 1) {
        fail("pyramid_levels must be >= 1");
    }
    if (pyramid_stop_level < 0 || pyramid_stop_level >= pyramid_levels) {
        fail("pyramid_stop_level must lie in [0, pyramid_levels)");
    }
    for (int a = 0; a < 3; ++a) {
        if (block_size[a] < 2) {
            fail("block_size must be >= 2 on every axis");
        }
    }
    if (!(block_energy_epsilon > 0.0) || !std::isfinite(block_energy_epsilon)) {
        fail("block_energy_epsilon must be > 0");
    }
    if (max_iteration_count < 1) {
        fail("max_iteration_count must be >= 1");
    }
    if (!(step_size > 0.0) || !std::isfinite(step_size)) {
        fail("step_size must be > 0");
    }
    try {
        energy_params().validate();
    }
    catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    // Below 1 the penalty is concave in |u_p - u_q| and the binary move stops
    // being submodular.
    if (regularization_exponent < 1.0) {
        fail("regularization_exponent must be >= 1");
    }
    if (image_resampler != "gaussian") {
        fail("image_resampler must be \"gaussian\"");
    }
    if (cost_function != "ssd") {
        fail("cost_function must be \"ssd\"");
    }
    if (update_rule != "additive") {
        fail("update_rule must be \"additive\"");
    }
    if (!std::isfinite(intensity_weight) || intensity_weight < 0.0) {
        fail("intensity_weight must be >= 0");
    }
    if (!std::isfinite(mask_weight) || mask_weight < 0.0) {
        fail("mask_weight must be >= 0");
    }
}

namespace {

template<typename T>
void take(const ordered_json& j, const char* key, T& out)
{
    try {
        out = j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config: wrong type for '") + key + "'");
    }
}

void take_integer(const ordered_json& j, const char* key, int& out)
{
    if (!j.at(key).is_number_integer()) {
        throw ConfigError(std::string("config: '") + key + "' must be an integer");
    }
    out = j.at(key).get<int>();
}

} // namespace

RegistrationConfig parse_config(std::string_view json_text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }

    RegistrationConfig c;
    for (const auto& [key, value] : j.items()) {
        const char* k = key.c_str();
        if (key == "pyramid_levels") {
            take_integer(j, k, c.pyramid_levels);
        }
        else if (key == "pyramid_stop_level") {
            take_integer(j, k, c.pyramid_stop_level);
        }
        else if (key == "block_size") {
            if (!value.is_array() || value.size() != 3) {
                throw ConfigError("config: block_size must be an array of 3 integers");
            }
            for (int a = 0; a < 3; ++a) {
                if (!value[std::size_t(a)].is_number_integer()) {
                    throw ConfigError("config: block_size must be an array of 3 integers");
                }
                c.block_size[a] = value[std::size_t(a)].get<int>();
            }
        }
        else if (key == "block_energy_epsilon") {
            take(j, k, c.block_energy_epsilon);
        }
        else if (key == "max_iteration_count") {
            take_integer(j, k, c.max_iteration_count);
        }
        else if (key == "step_size") {
            take(j, k, c.step_size);
        }
        else if (key == "regularization_scale") {
            take(j, k, c.regularization_scale);
        }
        else if (key == "regularization_exponent") {
            take(j, k, c.regularization_exponent);
        }
        else if (key == "regularization_weight") {
            take(j, k, c.regularization_weight);
        }
        else if (key == "image_resampler") {
            take(j, k, c.image_resampler);
        }
        else if (key == "cost_function") {
            take(j, k, c.cost_function);
        }
        else if (key == "update_rule") {
            take(j, k, c.update_rule);
        }
        else if (key == "image_normalization") {
            take(j, k, c.image_normalization);
        }
        else if (key == "intensity_weight") {
            take(j, k, c.intensity_weight);
        }
        else if (key == "mask_weight") {
            take(j, k, c.mask_weight);
        }
        else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

RegistrationConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const RegistrationConfig& c)
{
    ordered_json j;
    j["pyramid_levels"] = c.pyramid_levels;
    j["pyramid_stop_level"] = c.pyramid_stop_level;
    j["block_size"] = {c.block_size.x, c.block_size.y, c.block_size.z};
    j["block_energy_epsilon"] = c.block_energy_epsilon;
    j["max_iteration_count"] = c.max_iteration_count;
    j["step_size"] = c.step_size;
    j["regularization_scale"] = c.regularization_scale;
    j["regularization_exponent"] = c.regularization_exponent;
    j["regularization_weight"] = c.regularization_weight;
    j["image_resampler"] = c.image_resampler;
    j["cost_function"] = c.cost_function;
    j["update_rule"] = c.update_rule;
    j["image_normalization"] = c.image_normalization;
    j["intensity_weight"] = c.intensity_weight;
    j["mask_weight"] = c.mask_weight;
    return j.dump(2);
}

} // namespace maskreg
