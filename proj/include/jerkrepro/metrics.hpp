#pragma once

// Trace scoring.
//
//   NRMSE = sqrt(sum (y_k - yhat_k)^2) / sqrt(sum (y_k - ybar)^2)
//
// with y the measured samples and yhat the simulated ones. By default ybar is
// the mean of the *simulated* samples; NrmseVariant::MeasuredMean selects the
// conventional normalisation by the measured mean. Every sum runs in index
// order with Neumaier compensation, so results are bit-reproducible.

#include "jerkrepro/series.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jerkrepro {

enum class NrmseVariant { SimulatedMean, MeasuredMean };

/// Neumaier (improved Kahan-Babuska) running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Core NRMSE over equal-length sample spans (length >= 1). Throws
/// ShapeError on length mismatch or empty input and DegenerateDataError when
/// the denominator is zero.
double nrmse(std::span<const double> measured, std::span<const double> simulated,
             NrmseVariant variant = NrmseVariant::SimulatedMean);

/// NRMSE of two series on the same grid (equal t0, dt and length >= 2).
double nrmse(const UniformSeries& measured, const UniformSeries& simulated,
             NrmseVariant variant = NrmseVariant::SimulatedMean);

/// Cumulative prefix scores. boundaries are 1-based prefix lengths.
struct WindowedNrmse {
    std::vector<std::size_t> boundaries;
    std::vector<double> scores;

    friend bool operator==(const WindowedNrmse&, const WindowedNrmse&) = default;
};

/// round(j * n / n_windows) for j = 1..n_windows, half rounded up. Requires
/// 1 <= n_windows <= n; strictly increasing with last element n.
std::vector<std::size_t> window_boundaries(std::size_t n, std::size_t n_windows);

/// NRMSE over each growing prefix [1, boundary_j]; the mean is recomputed per
/// prefix. The last score goes through the same code path as nrmse() on the
/// full series and so equals it bit-exactly. A degenerate prefix fails the
/// whole call with DegenerateDataError naming the prefix.
WindowedNrmse cumulative_nrmse(const UniformSeries& measured, const UniformSeries& simulated,
                               std::size_t n_windows,
                               NrmseVariant variant = NrmseVariant::SimulatedMean);

/// Id with the smallest score; ties go to the lexicographically smallest id.
/// Throws DomainError on an empty map or a non-finite score.
std::string select_reference(const std::map<std::string, double>& scores);

struct Horizon {
    /// Elapsed grid time from the first sample to the end of the last prefix
    /// of the leading run of prefixes scoring <= threshold; 0 when the first
    /// prefix already exceeds it.
    double time = 0.0;
    /// False when no prefix exceeds the threshold (time is then the full span).
    bool exceeded = false;
    /// Number of leading prefixes within threshold.
    std::size_t windows_within = 0;
    WindowedNrmse windowed;
};

/// Throws DomainError unless threshold is finite and > 0; otherwise as
/// cumulative_nrmse.
Horizon prediction_horizon(const UniformSeries& measured, const UniformSeries& simulated,
                           double threshold, std::size_t n_windows,
                           NrmseVariant variant = NrmseVariant::SimulatedMean);

/// Least-squares slope of ln|a_k - b_k| against grid time over the inclusive
/// index range [fit_start, fit_end]: a finite-time estimate of the largest
/// Lyapunov exponent. Requires equal grids and fit_end > fit_start + 1.
/// Throws DegenerateSeparationError if the trajectories coincide anywhere in
/// range.
double divergence_rate(const UniformSeries& a, const UniformSeries& b, std::size_t fit_start,
                       std::size_t fit_end);

std::string_view to_string(NrmseVariant variant) noexcept;
NrmseVariant parse_nrmse_variant(std::string_view text);

}  // namespace jerkrepro
