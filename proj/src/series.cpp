#include "jerkrepro/series.hpp"

#include "jerkrepro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jerkrepro {

namespace {

bool all_finite(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void validate(const TimeSeries& series) {
    if (series.t.size() != series.v.size()) {
        throw DomainError("time series: " + std::to_string(series.t.size()) + " timestamps but " +
                          std::to_string(series.v.size()) + " values");
    }
    if (series.t.size() < 2) throw DomainError("time series: needs at least 2 samples");
    if (!all_finite(series.t) || !all_finite(series.v)) {
        throw DomainError("time series: non-finite entry");
    }
    for (std::size_t k = 1; k < series.t.size(); ++k) {
        if (!(series.t[k] > series.t[k - 1])) {
            throw DomainError("time series: timestamps not strictly increasing at sample " +
                              std::to_string(k));
        }
    }
}

void validate(const UniformSeries& series) {
    if (!std::isfinite(series.t0)) throw DomainError("uniform series: t0 must be finite");
    if (!std::isfinite(series.dt) || !(series.dt > 0.0)) {
        throw DomainError("uniform series: dt must be finite and > 0");
    }
    if (series.values.empty()) throw DomainError("uniform series: no values");
    if (!all_finite(series.values)) throw DomainError("uniform series: non-finite value");
}

TimeSeries to_time_series(const UniformSeries& series) {
    TimeSeries out;
    out.t.reserve(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) out.t.push_back(series.time_at(k));
    out.v = series.values;
    out.meta = series.meta;
    return out;
}

}  // namespace jerkrepro
