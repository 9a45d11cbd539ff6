#include "jerkrepro/integrate.hpp"

#include "jerkrepro/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace jerkrepro {

namespace {

void check_step_inputs(const SystemState& state, double h, const JerkParams& params) {
    validate(params);
    if (!std::isfinite(h) || !(h > 0.0)) throw DomainError("step size must be finite and > 0");
    if (!state.is_finite()) throw DomainError("non-finite state at step start");
}

SystemState euler_unchecked(const SystemState& y, double h, const JerkParams& p) noexcept {
    return y + h * detail::derivative(y, p);
}

SystemState rk4_unchecked(const SystemState& y, double h, const JerkParams& p) noexcept {
    const double half = 0.5 * h;
    const SystemState k1 = detail::derivative(y, p);
    const SystemState k2 = detail::derivative(y + half * k1, p);
    const SystemState k3 = detail::derivative(y + half * k2, p);
    const SystemState k4 = detail::derivative(y + h * k3, p);
    return y + (h / 6.0) * (((k1 + 2.0 * k2) + 2.0 * k3) + k4);
}

UniformSeries make_channel(const IntegratorConfig& config, double dt, const char* signal) {
    UniformSeries s;
    s.t0 = config.t_start;
    s.dt = dt;
    s.values.reserve(config.output_points);
    s.meta.source_id = std::string("simulate:") + std::string(to_string(config.method));
    s.meta.signal = signal;
    s.meta.unit = "dimensionless";
    return s;
}

void push(Trajectory& out, const SystemState& s) {
    out.x.values.push_back(s.x);
    out.xd.values.push_back(s.xd);
    out.xdd.values.push_back(s.xdd);
}

// Number of equal substeps per output interval: ceil(interval / step), with
// ratios within 1e-9 relative of an integer snapped to it so that e.g.
// 0.01 / 0.001 yields 10 rather than 11.
std::size_t substeps_per_interval(double interval, double step) {
    const double ratio = interval / step;
    const double nearest = std::round(ratio);
    if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::max(1.0, std::ceil(ratio)));
}

void simulate_fixed(const IntegratorConfig& config, const JerkParams& params, double dt_out,
                    Trajectory& out) {
    const std::size_t substeps = substeps_per_interval(dt_out, config.step);
    const double h = dt_out / static_cast<double>(substeps);
    const bool euler = config.method == Method::Euler;

    SystemState y = config.initial_state;
    push(out, y);
    for (std::size_t k = 1; k < config.output_points; ++k) {
        for (std::size_t j = 0; j < substeps; ++j) {
            const SystemState next = euler ? euler_unchecked(y, h, params) : rk4_unchecked(y, h, params);
            if (!next.is_finite()) {
                const double t_last = config.t_start + static_cast<double>(k - 1) * dt_out +
                                      static_cast<double>(j) * h;
                throw OverflowError("integration diverged to a non-finite state", t_last);
            }
            y = next;
        }
        push(out, y);
    }
}

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i are not needed.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b* (5th minus embedded 4th order weights)
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct DpStep {
    SystemState y;
    SystemState k7;  // f(y), reused as k1 of the next step (FSAL)
    double error_norm;
};

double scaled_error(const SystemState& err, const SystemState& y0, const SystemState& y1,
                    const IntegratorConfig& config) {
    const std::array<double, 3> e{err.x, err.xd, err.xdd};
    const std::array<double, 3> u{y0.x, y0.xd, y0.xdd};
    const std::array<double, 3> v{y1.x, y1.xd, y1.xdd};
    double norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double scale = config.abs_tol + config.rel_tol * std::max(std::abs(u[i]), std::abs(v[i]));
        norm = std::max(norm, std::abs(e[i]) / scale);
    }
    return norm;
}

DpStep dormand_prince(const SystemState& y, const SystemState& k1, double h, const JerkParams& p,
                      const IntegratorConfig& config) {
    using detail::derivative;
    const SystemState k2 = derivative(y + (h * a21) * k1, p);
    const SystemState k3 = derivative(y + h * (a31 * k1 + a32 * k2), p);
    const SystemState k4 = derivative(y + h * ((a41 * k1 + a42 * k2) + a43 * k3), p);
    const SystemState k5 =
        derivative(y + h * (((a51 * k1 + a52 * k2) + a53 * k3) + a54 * k4), p);
    const SystemState k6 =
        derivative(y + h * ((((a61 * k1 + a62 * k2) + a63 * k3) + a64 * k4) + a65 * k5), p);
    const SystemState y1 = y + h * ((((b1 * k1 + b3 * k3) + b4 * k4) + b5 * k5) + b6 * k6);
    const SystemState k7 = derivative(y1, p);
    const SystemState err = h * (((((e1 * k1 + e3 * k3) + e4 * k4) + e5 * k5) + e6 * k6) + e7 * k7);
    double norm = scaled_error(err, y, y1, config);
    if (!std::isfinite(norm)) norm = std::numeric_limits<double>::infinity();
    return {y1, k7, norm};
}

void simulate_rk45(const IntegratorConfig& config, const JerkParams& params, double dt_out,
                   Trajectory& out) {
    const double span = config.t_end - config.t_start;
    const std::size_t n = config.output_points;
    auto grid_time = [&](std::size_t k) {
        return k + 1 == n ? config.t_end : config.t_start + static_cast<double>(k) * dt_out;
    };

    double t = config.t_start;
    SystemState y = config.initial_state;
    SystemState k1 = detail::derivative(y, params);
    double h = std::min(config.step, span);
    push(out, y);
    std::size_t next = 1;

    while (next < n) {
        const bool last = t + h >= config.t_end || config.t_end - (t + h) <= 1e-12 * span;
        if (last) h = config.t_end - t;

        const DpStep trial = dormand_prince(y, k1, h, params, config);
        const bool finite = trial.y.is_finite();
        if (finite && trial.error_norm <= 1.0) {
            const double t_new = last ? config.t_end : t + h;
            while (next < n && grid_time(next) <= t_new) {
                if (next + 1 == n && last) {
                    push(out, trial.y);
                } else {
                    const double w = (grid_time(next) - t) / (t_new - t);
                    push(out, y + w * (trial.y - y));
                }
                ++next;
            }
            t = t_new;
            y = trial.y;
            k1 = trial.k7;
        }
        double factor = trial.error_norm == 0.0
                            ? kRk45MaxGrow
                            : kRk45Safety * std::pow(trial.error_norm, -0.2);
        factor = std::clamp(factor, kRk45MinShrink, kRk45MaxGrow);
        if (!(finite && trial.error_norm <= 1.0)) factor = std::min(factor, 1.0);
        if (!finite) factor = kRk45MinShrink;
        h *= factor;
        if (next < n && h <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            throw OverflowError("adaptive step size underflow; integration diverged", t);
        }
    }
}

}  // namespace

void validate(const IntegratorConfig& config) {
    if (!std::isfinite(config.t_start) || !std::isfinite(config.t_end)) {
        throw ConfigError("t_start and t_end must be finite");
    }
    if (!(config.t_end > config.t_start)) throw ConfigError("t_end must be > t_start");
    if (!std::isfinite(config.step) || !(config.step > 0.0)) throw ConfigError("step must be > 0");
    if (!std::isfinite(config.rel_tol) || !(config.rel_tol > 0.0) || !std::isfinite(config.abs_tol) ||
        !(config.abs_tol > 0.0)) {
        throw ConfigError("tolerances must be > 0");
    }
    if (config.output_points < 2) throw ConfigError("output_points must be >= 2");
    if (!config.initial_state.is_finite()) throw ConfigError("initial state must be finite");
    if (config.method != Method::Euler && config.method != Method::RK4 && config.method != Method::RK45) {
        throw ConfigError("unknown integration method");
    }
}

const UniformSeries& Trajectory::component(StateComponent c) const noexcept {
    switch (c) {
        case StateComponent::X: return x;
        case StateComponent::Xd: return xd;
        case StateComponent::Xdd: break;
    }
    return xdd;
}

SystemState euler_step(const SystemState& state, double h, const JerkParams& params, double t) {
    check_step_inputs(state, h, params);
    const SystemState next = euler_unchecked(state, h, params);
    if (!next.is_finite()) throw OverflowError("Euler step produced a non-finite state", t);
    return next;
}

SystemState rk4_step(const SystemState& state, double h, const JerkParams& params, double t) {
    check_step_inputs(state, h, params);
    const SystemState next = rk4_unchecked(state, h, params);
    if (!next.is_finite()) throw OverflowError("RK4 step produced a non-finite state", t);
    return next;
}

Trajectory simulate(const IntegratorConfig& config, const JerkParams& params) {
    validate(params);
    validate(config);

    const double dt_out =
        (config.t_end - config.t_start) / static_cast<double>(config.output_points - 1);
    Trajectory out{make_channel(config, dt_out, "x"), make_channel(config, dt_out, "xd"),
                   make_channel(config, dt_out, "xdd")};
    if (config.method == Method::RK45) {
        simulate_rk45(config, params, dt_out, out);
    } else {
        simulate_fixed(config, params, dt_out, out);
    }
    return out;
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::Euler: return "euler";
        case Method::RK4: return "rk4";
        case Method::RK45: break;
    }
    return "rk45";
}

Method parse_method(std::string_view text) {
    if (text == "euler") return Method::Euler;
    if (text == "rk4") return Method::RK4;
    if (text == "rk45") return Method::RK45;
    throw ConfigError("method must be one of euler, rk4, rk45; got '" + std::string(text) + "'");
}

std::string_view to_string(StateComponent component) noexcept {
    switch (component) {
        case StateComponent::X: return "x";
        case StateComponent::Xd: return "xd";
        case StateComponent::Xdd: break;
    }
    return "xdd";
}

StateComponent parse_state_component(std::string_view text) {
    if (text == "x") return StateComponent::X;
    if (text == "xd") return StateComponent::Xd;
    if (text == "xdd") return StateComponent::Xdd;
    throw ConfigError("signal must be one of x, xd, xdd; got '" + std::string(text) + "'");
}

}  // namespace jerkrepro
