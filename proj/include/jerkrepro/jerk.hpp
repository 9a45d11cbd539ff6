#pragma once

// Quadratic jerk system
//
//     x''' = J(x'', x', x),   J = -a x'' - x -/+ (x')^2
//
// in first-order form over the state (x, x', x''), plus the mapping from the
// RC circuit realisation to dimensionless time.

#include <string_view>

namespace jerkrepro {

enum class NonlinearitySign { Minus, Plus };

/// Model parameters.
struct JerkParams {
    /// Bifurcation parameter; chaotic inside (kChaoticLower, kChaoticUpper).
    double a = 2.03;
    /// Picks the sign of the (x')^2 term: Minus gives J = -a x'' - x - (x')^2.
    NonlinearitySign sign = NonlinearitySign::Minus;
    /// Seconds per dimensionless time unit, R*C of the integrator stages.
    double time_scale_s = 1.0e-3;
    /// Disables the quadratic term, leaving the linear subsystem
    /// x''' = -a x'' - x. Only the solver-accuracy checks turn this off.
    bool quadratic_term = true;
};

struct SystemState {
    double x = 0.0;
    double xd = 0.0;
    double xdd = 0.0;

    bool is_finite() const noexcept;

    friend bool operator==(const SystemState&, const SystemState&) = default;
};

SystemState operator+(const SystemState& lhs, const SystemState& rhs) noexcept;
SystemState operator-(const SystemState& lhs, const SystemState& rhs) noexcept;
SystemState operator*(double scale, const SystemState& s) noexcept;

inline constexpr double kChaoticLower = 2.0168;
inline constexpr double kChaoticUpper = 2.0577;

/// Default initial condition. It lies in the basin of the bounded attractor
/// for a in the chaotic window under the Minus sign; small kicks off the
/// origin such as (0, 0, 0.01) spiral out and escape to infinity.
inline constexpr SystemState kDefaultInitialState{0.0, 0.0, -1.0};

/// Throws DomainError unless a and time_scale_s are finite and positive.
void validate(const JerkParams& params);

/// Time derivative (x', x'', J) of `state`. Throws DomainError on non-finite
/// input or invalid parameters.
SystemState jerk_rhs(const SystemState& state, const JerkParams& params);

/// True iff kChaoticLower < a < kChaoticUpper (open interval).
bool in_chaotic_range(const JerkParams& params);

/// R*C in seconds: wall-clock length of one dimensionless time unit.
double circuit_time_scale(double resistance_ohm, double capacitance_farad);

/// Converts circuit time in seconds to dimensionless time t / tau.
double to_dimensionless(double seconds, double time_scale_s);

std::string_view to_string(NonlinearitySign sign) noexcept;
/// Accepts "minus" or "plus". Throws DomainError otherwise.
NonlinearitySign parse_nonlinearity_sign(std::string_view text);

namespace detail {

// Unchecked right-hand side for the integrator inner loops. Caller
// guarantees validated params.
inline SystemState derivative(const SystemState& s, const JerkParams& p) noexcept {
    double jerk = -p.a * s.xdd - s.x;
    if (p.quadratic_term) {
        const double quad = s.xd * s.xd;
        jerk = p.sign == NonlinearitySign::Minus ? jerk - quad : jerk + quad;
    }
    return {s.xd, s.xdd, jerk};
}

}  // namespace detail

}  // namespace jerkrepro
