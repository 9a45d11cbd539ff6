#pragma once

#include "jerkrepro/series.hpp"

#include <cstddef>
#include <span>

namespace jerkrepro {

/// Uniform grid of n points spanning [t0, t1] inclusive.
struct CommonGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t n = 2;

    double dt() const noexcept { return (t1 - t0) / static_cast<double>(n - 1); }
    /// t0 + k * dt, except that the last point is t1 exactly and no point
    /// exceeds t1.
    double time_at(std::size_t k) const noexcept;

    friend bool operator==(const CommonGrid&, const CommonGrid&) = default;
};

/// Grid over the intersection of all trace domains: t0 = max start,
/// t1 = min end. Throws NoOverlapError (listing every domain) when the
/// intersection is empty or a single point, DomainError for n < 2 or no traces.
CommonGrid build_common_grid(std::span<const TimeSeries> traces, std::size_t n);

/// Piecewise-linear resampling onto `grid`. A grid time equal to a knot
/// returns the knot value bit-exactly (the left knot wins on ties); other
/// values are clamped to their bracketing pair. Throws ExtrapolationError if
/// any grid time lies outside the trace domain.
UniformSeries resample_linear(const TimeSeries& trace, const CommonGrid& grid);

}  // namespace jerkrepro
