#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace jerkrepro {

/// Provenance carried alongside samples.
struct SeriesMeta {
    std::string source_id;  // e.g. "computer-4", "experimental"
    std::string signal;     // e.g. "xdd", "V(xdd)"
    std::string unit;       // e.g. "s", "dimensionless"

    friend bool operator==(const SeriesMeta&, const SeriesMeta&) = default;
};

/// Raw trace on a possibly non-uniform grid. Invariants: |t| == |v| >= 2,
/// t strictly increasing, every entry finite.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> v;
    SeriesMeta meta;

    std::size_t size() const noexcept { return t.size(); }
    double start() const { return t.front(); }
    double end() const { return t.back(); }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Samples on the uniform grid t[k] = t0 + k * dt. Invariants: dt > 0,
/// values non-empty, every value finite.
struct UniformSeries {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;
    SeriesMeta meta;

    std::size_t size() const noexcept { return values.size(); }
    /// The only formula used for grid timestamps; never accumulated.
    double time_at(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }

    friend bool operator==(const UniformSeries&, const UniformSeries&) = default;
};

/// Throw DomainError when an invariant above is violated.
void validate(const TimeSeries& series);
void validate(const UniformSeries& series);

/// Expands the grid into explicit timestamps.
TimeSeries to_time_series(const UniformSeries& series);

}  // namespace jerkrepro
