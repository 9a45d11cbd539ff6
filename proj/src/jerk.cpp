#include "jerkrepro/jerk.hpp"

#include "jerkrepro/errors.hpp"

#include <cmath>
#include <string>

namespace jerkrepro {

bool SystemState::is_finite() const noexcept {
    return std::isfinite(x) && std::isfinite(xd) && std::isfinite(xdd);
}

SystemState operator+(const SystemState& lhs, const SystemState& rhs) noexcept {
    return {lhs.x + rhs.x, lhs.xd + rhs.xd, lhs.xdd + rhs.xdd};
}

SystemState operator-(const SystemState& lhs, const SystemState& rhs) noexcept {
    return {lhs.x - rhs.x, lhs.xd - rhs.xd, lhs.xdd - rhs.xdd};
}

SystemState operator*(double scale, const SystemState& s) noexcept {
    return {scale * s.x, scale * s.xd, scale * s.xdd};
}

void validate(const JerkParams& params) {
    if (!std::isfinite(params.a)) throw DomainError("a must be finite");
    if (!(params.a > 0.0)) throw DomainError("a must be > 0");
    if (!std::isfinite(params.time_scale_s) || !(params.time_scale_s > 0.0)) {
        throw DomainError("time scale must be finite and > 0");
    }
    if (params.sign != NonlinearitySign::Minus && params.sign != NonlinearitySign::Plus) {
        throw DomainError("unknown nonlinearity sign");
    }
}

SystemState jerk_rhs(const SystemState& state, const JerkParams& params) {
    validate(params);
    if (!state.is_finite()) throw DomainError("jerk_rhs: non-finite state");
    return detail::derivative(state, params);
}

bool in_chaotic_range(const JerkParams& params) {
    validate(params);
    return params.a > kChaoticLower && params.a < kChaoticUpper;
}

double circuit_time_scale(double resistance_ohm, double capacitance_farad) {
    if (!std::isfinite(resistance_ohm) || !(resistance_ohm > 0.0)) {
        throw DomainError("resistance must be finite and > 0");
    }
    if (!std::isfinite(capacitance_farad) || !(capacitance_farad > 0.0)) {
        throw DomainError("capacitance must be finite and > 0");
    }
    return resistance_ohm * capacitance_farad;
}

double to_dimensionless(double seconds, double time_scale_s) {
    if (!std::isfinite(time_scale_s) || !(time_scale_s > 0.0)) {
        throw DomainError("time scale must be finite and > 0");
    }
    if (!std::isfinite(seconds)) throw DomainError("time must be finite");
    return seconds / time_scale_s;
}

std::string_view to_string(NonlinearitySign sign) noexcept {
    return sign == NonlinearitySign::Minus ? "minus" : "plus";
}

NonlinearitySign parse_nonlinearity_sign(std::string_view text) {
    if (text == "minus" || text == "-") return NonlinearitySign::Minus;
    if (text == "plus" || text == "+") return NonlinearitySign::Plus;
    throw DomainError("sign must be 'minus' or 'plus', got '" + std::string(text) + "'");
}

}  // namespace jerkrepro
