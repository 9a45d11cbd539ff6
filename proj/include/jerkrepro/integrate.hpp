#pragma once

#include "jerkrepro/jerk.hpp"
#include "jerkrepro/series.hpp"

#include <cstddef>
#include <string_view>

namespace jerkrepro {

enum class Method { Euler, RK4, RK45 };

struct IntegratorConfig {
    Method method = Method::RK4;
    double t_start = 0.0;
    double t_end = 100.0;
    /// Maximum fixed step (Euler, RK4) or initial trial step (RK45).
    double step = 1.0e-3;
    double rel_tol = 1.0e-9;
    double abs_tol = 1.0e-12;
    SystemState initial_state = kDefaultInitialState;
    std::size_t output_points = 4700;
};

/// Throws ConfigError when t_end <= t_start, step or tolerances are not
/// positive, output_points < 2, or the initial state is not finite.
void validate(const IntegratorConfig& config);

enum class StateComponent { X, Xd, Xdd };

/// Simulated trajectory, one uniform series per state component, all on the
/// same grid (dimensionless time).
struct Trajectory {
    UniformSeries x;
    UniformSeries xd;
    UniformSeries xdd;

    const UniformSeries& component(StateComponent c) const noexcept;
};

/// Safety factor and step-change limits of the RK45 controller.
inline constexpr double kRk45Safety = 0.9;
inline constexpr double kRk45MinShrink = 0.2;
inline constexpr double kRk45MaxGrow = 5.0;

/// One explicit Euler step. `t` is used only in diagnostics.
SystemState euler_step(const SystemState& state, double h, const JerkParams& params,
                       double t = 0.0);

/// One classical RK4 step. Stages are evaluated in order k1..k4 with
///   k2 = f(y + (h/2) k1), k3 = f(y + (h/2) k2), k4 = f(y + h k3)
/// and combined as y + (h/6) * (((k1 + 2 k2) + 2 k3) + k4).
/// Throws DomainError for h <= 0 or a non-finite state, OverflowError when the
/// result is not finite; `t` is the step start time reported in that error.
SystemState rk4_step(const SystemState& state, double h, const JerkParams& params,
                     double t = 0.0);

/// Integrates over [t_start, t_end] and samples output_points states on the
/// uniform grid t_start + k * (t_end - t_start) / (output_points - 1).
///
/// Fixed-step methods split every output interval into
/// ceil(interval / step) equal substeps, so each output sample is a step
/// endpoint and the effective step never exceeds `step`. RK45 is the
/// Dormand-Prince 5(4) pair; a step is accepted when the scaled max-norm of
/// the embedded error is <= 1, and the next step is
/// h * clamp(kRk45Safety * err^(-1/5), kRk45MinShrink, kRk45MaxGrow).
/// Output samples between accepted RK45 steps are linearly interpolated.
///
/// Sequential and deterministic: identical inputs give bit-identical output.
/// Throws ConfigError or DomainError on invalid input and OverflowError when
/// the state becomes non-finite.
Trajectory simulate(const IntegratorConfig& config, const JerkParams& params);

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);
std::string_view to_string(StateComponent component) noexcept;
StateComponent parse_state_component(std::string_view text);

}  // namespace jerkrepro
