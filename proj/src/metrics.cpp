#include "jerkrepro/metrics.hpp"

#include "jerkrepro/errors.hpp"

#include <cmath>
#include <string>

namespace jerkrepro {

namespace {

void check_same_grid(const UniformSeries& a, const UniformSeries& b) {
    validate(a);
    validate(b);
    if (a.size() != b.size()) {
        throw ShapeError("series lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    if (a.t0 != b.t0 || a.dt != b.dt) throw ShapeError("series are on different grids");
}

double mean(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double nrmse(std::span<const double> measured, std::span<const double> simulated,
             NrmseVariant variant) {
    if (measured.size() != simulated.size()) {
        throw ShapeError("series lengths differ: " + std::to_string(measured.size()) + " vs " +
                         std::to_string(simulated.size()));
    }
    if (measured.empty()) throw ShapeError("nrmse of empty series");

    const double ybar = mean(variant == NrmseVariant::SimulatedMean ? simulated : measured);
    CompensatedSum err;
    CompensatedSum dev;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        const double e = measured[k] - simulated[k];
        const double d = measured[k] - ybar;
        err.add(e * e);
        dev.add(d * d);
    }
    const double den = dev.value();
    if (!(den > 0.0)) throw DegenerateDataError("nrmse denominator is zero");
    return std::sqrt(err.value()) / std::sqrt(den);
}

double nrmse(const UniformSeries& measured, const UniformSeries& simulated, NrmseVariant variant) {
    check_same_grid(measured, simulated);
    if (measured.size() < 2) throw ShapeError("nrmse needs at least 2 samples");
    return nrmse(std::span<const double>(measured.values), std::span<const double>(simulated.values),
                 variant);
}

std::vector<std::size_t> window_boundaries(std::size_t n, std::size_t n_windows) {
    if (n_windows < 1 || n_windows > n) {
        throw DomainError("window count must be in [1, " + std::to_string(n) + "], got " +
                          std::to_string(n_windows));
    }
    std::vector<std::size_t> out;
    out.reserve(n_windows);
    for (std::size_t j = 1; j <= n_windows; ++j) {
        out.push_back((2 * j * n + n_windows) / (2 * n_windows));
    }
    return out;
}

WindowedNrmse cumulative_nrmse(const UniformSeries& measured, const UniformSeries& simulated,
                               std::size_t n_windows, NrmseVariant variant) {
    check_same_grid(measured, simulated);
    WindowedNrmse out;
    out.boundaries = window_boundaries(measured.size(), n_windows);
    out.scores.reserve(n_windows);
    const std::span<const double> y(measured.values);
    const std::span<const double> yhat(simulated.values);
    for (std::size_t j = 0; j < out.boundaries.size(); ++j) {
        const std::size_t end = out.boundaries[j];
        try {
            out.scores.push_back(nrmse(y.first(end), yhat.first(end), variant));
        } catch (const DegenerateDataError&) {
            throw DegenerateDataError("nrmse denominator is zero over prefix " + std::to_string(j + 1) +
                                          " (samples 1-" + std::to_string(end) + ")",
                                      j + 1);
        }
    }
    return out;
}

std::string select_reference(const std::map<std::string, double>& scores) {
    if (scores.empty()) throw DomainError("select_reference: no candidates");
    const std::pair<const std::string, double>* best = nullptr;
    for (const auto& entry : scores) {
        if (!std::isfinite(entry.second)) {
            throw DomainError("select_reference: non-finite score for '" + entry.first + "'");
        }
        // std::map iterates in lexicographic order, so strict < keeps the smallest id on ties.
        if (!best || entry.second < best->second) best = &entry;
    }
    return best->first;
}

Horizon prediction_horizon(const UniformSeries& measured, const UniformSeries& simulated,
                           double threshold, std::size_t n_windows, NrmseVariant variant) {
    if (!std::isfinite(threshold) || !(threshold > 0.0)) {
        throw DomainError("threshold must be finite and > 0");
    }
    Horizon h;
    h.windowed = cumulative_nrmse(measured, simulated, n_windows, variant);
    const auto& scores = h.windowed.scores;
    while (h.windows_within < scores.size() && scores[h.windows_within] <= threshold) {
        ++h.windows_within;
    }
    h.exceeded = h.windows_within < scores.size();
    if (h.windows_within > 0) {
        const std::size_t last_index = h.windowed.boundaries[h.windows_within - 1] - 1;
        h.time = static_cast<double>(last_index) * measured.dt;
    }
    return h;
}

double divergence_rate(const UniformSeries& a, const UniformSeries& b, std::size_t fit_start,
                       std::size_t fit_end) {
    check_same_grid(a, b);
    if (fit_end >= a.size()) {
        throw DomainError("fit range end " + std::to_string(fit_end) + " beyond series length " +
                          std::to_string(a.size()));
    }
    if (fit_start + 1 >= fit_end) throw DomainError("fit range needs at least 3 points");

    const std::size_t count = fit_end - fit_start + 1;
    std::vector<double> log_sep;
    log_sep.reserve(count);
    for (std::size_t k = fit_start; k <= fit_end; ++k) {
        const double d = std::abs(a.values[k] - b.values[k]);
        if (!(d > 0.0)) {
            throw DegenerateSeparationError("trajectories coincide at sample " + std::to_string(k));
        }
        log_sep.push_back(std::log(d));
    }

    // Regress on the sample offset and rescale by dt; the uniform grid makes
    // this identical to regressing on time.
    const double center = 0.5 * static_cast<double>(count - 1);
    const double log_mean = mean(log_sep);
    CompensatedSum sxy;
    CompensatedSum sxx;
    for (std::size_t i = 0; i < count; ++i) {
        const double dx = static_cast<double>(i) - center;
        sxy.add(dx * (log_sep[i] - log_mean));
        sxx.add(dx * dx);
    }
    return sxy.value() / sxx.value() / a.dt;
}

std::string_view to_string(NrmseVariant variant) noexcept {
    return variant == NrmseVariant::SimulatedMean ? "simulated-mean" : "measured-mean";
}

NrmseVariant parse_nrmse_variant(std::string_view text) {
    if (text == "simulated-mean") return NrmseVariant::SimulatedMean;
    if (text == "measured-mean") return NrmseVariant::MeasuredMean;
    throw ConfigError("nrmse variant must be 'simulated-mean' or 'measured-mean', got '" +
                      std::string(text) + "'");
}

}  // namespace jerkrepro
