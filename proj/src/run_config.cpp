#include "jerkrepro/run_config.hpp"

#include "jerkrepro/errors.hpp"

#include <json.hpp>

#include <array>
#include <cmath>

namespace jerkrepro {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
T value_of(const Json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config: wrong type for '" + key + "'");
    }
}

std::size_t count_of(const Json& j, const std::string& key) {
    if (!j.is_number_unsigned()) throw ConfigError("config: '" + key + "' must be a non-negative integer");
    return j.get<std::size_t>();
}

}  // namespace

void validate(const RunConfig& config) {
    validate(config.params);
    validate(config.integrator);
    if (config.metrics.n_windows < 1) throw ConfigError("windows must be >= 1");
    if (config.metrics.grid_points < 2) throw ConfigError("grid_points must be >= 2");
    if (config.metrics.n_windows > config.metrics.grid_points) {
        throw ConfigError("windows must not exceed grid_points");
    }
    if (!std::isfinite(config.metrics.threshold) || !(config.metrics.threshold > 0.0)) {
        throw DomainError("threshold must be > 0");
    }
}

RunConfig run_config_from_json(std::string_view text, RunConfig base) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    RunConfig c = std::move(base);
    for (const auto& [key, v] : j.items()) {
        if (key == "a") {
            c.params.a = value_of<double>(v, key);
        } else if (key == "sign") {
            c.params.sign = parse_nonlinearity_sign(value_of<std::string>(v, key));
        } else if (key == "time_scale_s") {
            c.params.time_scale_s = value_of<double>(v, key);
        } else if (key == "method") {
            c.integrator.method = parse_method(value_of<std::string>(v, key));
        } else if (key == "t_start") {
            c.integrator.t_start = value_of<double>(v, key);
        } else if (key == "t_end") {
            c.integrator.t_end = value_of<double>(v, key);
        } else if (key == "h") {
            c.integrator.step = value_of<double>(v, key);
        } else if (key == "rel_tol") {
            c.integrator.rel_tol = value_of<double>(v, key);
        } else if (key == "abs_tol") {
            c.integrator.abs_tol = value_of<double>(v, key);
        } else if (key == "ic") {
            const auto ic = value_of<std::array<double, 3>>(v, key);
            c.integrator.initial_state = {ic[0], ic[1], ic[2]};
        } else if (key == "points") {
            c.integrator.output_points = count_of(v, key);
        } else if (key == "signal") {
            c.signal = parse_state_component(value_of<std::string>(v, key));
        } else if (key == "windows") {
            c.metrics.n_windows = count_of(v, key);
        } else if (key == "threshold") {
            c.metrics.threshold = value_of<double>(v, key);
        } else if (key == "nrmse_variant") {
            c.metrics.variant = parse_nrmse_variant(value_of<std::string>(v, key));
        } else if (key == "grid_points") {
            c.metrics.grid_points = count_of(v, key);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return c;
}

std::string to_json(const RunConfig& config) {
    const auto& s = config.integrator.initial_state;
    Json j = Json::object();
    j["a"] = config.params.a;
    j["sign"] = to_string(config.params.sign);
    j["time_scale_s"] = config.params.time_scale_s;
    j["method"] = to_string(config.integrator.method);
    j["t_start"] = config.integrator.t_start;
    j["t_end"] = config.integrator.t_end;
    j["h"] = config.integrator.step;
    j["rel_tol"] = config.integrator.rel_tol;
    j["abs_tol"] = config.integrator.abs_tol;
    j["ic"] = std::array<double, 3>{s.x, s.xd, s.xdd};
    j["points"] = config.integrator.output_points;
    j["signal"] = to_string(config.signal);
    j["windows"] = config.metrics.n_windows;
    j["threshold"] = config.metrics.threshold;
    j["nrmse_variant"] = to_string(config.metrics.variant);
    j["grid_points"] = config.metrics.grid_points;
    return j.dump(2) + "\n";
}

}  // namespace jerkrepro
