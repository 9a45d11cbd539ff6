#pragma once

// Comparison pipeline (ingest -> align -> score -> select) and its report
// serialisations.
//
// Report JSON schema ("jerkrepro-report/1"), keys in this order:
//   schema            string
//   grid              {t0, t1, n, dt}
//   nrmse_variant     "simulated-mean" | "measured-mean"
//   windows           window count K
//   threshold         number, present when horizons were computed
//   candidates        [{id, full_nrmse, windows: {prefix_end: [...], nrmse: [...]},
//                       horizon?: {time, exceeded, windows_within}}]
//   reference_id      argmin of full_nrmse
//   horizon_winner    present with threshold: argmax of horizon time
//
// Windows CSV: header "prefix_end,<id...>", one row per cumulative prefix.

#include "jerkrepro/align.hpp"
#include "jerkrepro/metrics.hpp"
#include "jerkrepro/series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jerkrepro {

struct HorizonSummary {
    double time = 0.0;
    bool exceeded = false;
    std::size_t windows_within = 0;

    friend bool operator==(const HorizonSummary&, const HorizonSummary&) = default;
};

struct CandidateScore {
    std::string id;
    double full_nrmse = 0.0;
    WindowedNrmse windowed;
    std::optional<HorizonSummary> horizon;

    friend bool operator==(const CandidateScore&, const CandidateScore&) = default;
};

struct ComparisonReport {
    CommonGrid grid;
    NrmseVariant variant = NrmseVariant::SimulatedMean;
    std::size_t n_windows = 10;
    std::optional<double> threshold;
    std::vector<CandidateScore> candidates;  // in input order
    std::string reference_id;
    std::optional<std::string> horizon_winner;

    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

struct CompareOptions {
    std::size_t grid_points = 4700;
    std::size_t n_windows = 10;
    NrmseVariant variant = NrmseVariant::SimulatedMean;
    /// When set, every candidate also gets a prediction horizon.
    std::optional<double> threshold;
};

struct NamedTrace {
    std::string id;
    TimeSeries trace;
};

/// Aligns measured and candidates on their common grid, scores each
/// candidate (full and cumulative NRMSE, optional horizon; candidates run
/// concurrently, each score sequentially) and selects the reference.
/// Throws ConfigError for no candidates or duplicate ids; otherwise
/// propagates the align/metrics errors.
ComparisonReport compare_traces(const TimeSeries& measured, std::span<const NamedTrace> candidates,
                                const CompareOptions& options);

/// Max horizon time; ties go to the smallest id. Requires horizons.
std::string select_horizon_winner(std::span<const CandidateScore> candidates);

std::string to_json(const ComparisonReport& report);
/// Inverse of to_json. Throws ConfigError on schema violations.
ComparisonReport report_from_json(std::string_view text);

std::string windows_csv(const ComparisonReport& report);

}  // namespace jerkrepro
