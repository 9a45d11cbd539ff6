#include "jerkrepro/report.hpp"

#include "jerkrepro/errors.hpp"
#include "jerkrepro/ingest.hpp"

#include <json.hpp>

#include <cmath>
#include <future>
#include <map>
#include <set>

namespace jerkrepro {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kSchema = "jerkrepro-report/1";

CandidateScore score_candidate(const UniformSeries& measured, const NamedTrace& candidate,
                               const CommonGrid& grid, const CompareOptions& options) {
    UniformSeries simulated = resample_linear(candidate.trace, grid);
    CandidateScore score;
    score.id = candidate.id;
    if (options.threshold) {
        Horizon h = prediction_horizon(measured, simulated, *options.threshold, options.n_windows,
                                       options.variant);
        score.windowed = std::move(h.windowed);
        score.horizon = HorizonSummary{h.time, h.exceeded, h.windows_within};
    } else {
        score.windowed = cumulative_nrmse(measured, simulated, options.n_windows, options.variant);
    }
    score.full_nrmse = score.windowed.scores.back();
    return score;
}

Json windowed_to_json(const WindowedNrmse& w) {
    Json j = Json::object();
    j["prefix_end"] = w.boundaries;
    j["nrmse"] = w.scores;
    return j;
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(std::string("report: missing key '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
    try {
        return require(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("report: bad value for '") + key + "': " + e.what());
    }
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> known, const char* where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || item.key() == k;
        if (!ok) throw ConfigError(std::string("report: unknown key '") + item.key() + "' in " + where);
    }
}

}  // namespace

ComparisonReport compare_traces(const TimeSeries& measured, std::span<const NamedTrace> candidates,
                                const CompareOptions& options) {
    if (candidates.empty()) throw ConfigError("compare: at least one candidate is required");
    std::set<std::string> ids;
    for (const auto& c : candidates) {
        if (c.id.empty()) throw ConfigError("compare: candidate id must not be empty");
        if (c.id.find_first_of(",\"\r\n") != std::string::npos) {
            throw ConfigError("compare: candidate id '" + c.id + "' contains a delimiter or quote");
        }
        if (!ids.insert(c.id).second) throw ConfigError("compare: duplicate candidate id '" + c.id + "'");
    }

    std::vector<TimeSeries> all;
    all.reserve(candidates.size() + 1);
    all.push_back(measured);
    for (const auto& c : candidates) all.push_back(c.trace);

    ComparisonReport report;
    report.grid = build_common_grid(all, options.grid_points);
    report.variant = options.variant;
    report.n_windows = options.n_windows;
    report.threshold = options.threshold;

    const UniformSeries measured_on_grid = resample_linear(measured, report.grid);

    std::vector<std::future<CandidateScore>> jobs;
    jobs.reserve(candidates.size());
    for (const auto& c : candidates) {
        jobs.push_back(std::async(std::launch::async, score_candidate, std::cref(measured_on_grid),
                                  std::cref(c), std::cref(report.grid), std::cref(options)));
    }
    for (auto& job : jobs) report.candidates.push_back(job.get());

    std::map<std::string, double> full;
    for (const auto& c : report.candidates) full.emplace(c.id, c.full_nrmse);
    report.reference_id = select_reference(full);
    if (options.threshold) report.horizon_winner = select_horizon_winner(report.candidates);
    return report;
}

std::string select_horizon_winner(std::span<const CandidateScore> candidates) {
    const CandidateScore* best = nullptr;
    for (const auto& c : candidates) {
        if (!c.horizon) throw DomainError("select_horizon_winner: candidate '" + c.id + "' has no horizon");
        if (!best || c.horizon->time > best->horizon->time ||
            (c.horizon->time == best->horizon->time && c.id < best->id)) {
            best = &c;
        }
    }
    if (!best) throw DomainError("select_horizon_winner: no candidates");
    return best->id;
}

std::string to_json(const ComparisonReport& report) {
    Json j = Json::object();
    j["schema"] = kSchema;
    j["grid"] = Json{{"t0", report.grid.t0}, {"t1", report.grid.t1}, {"n", report.grid.n},
                     {"dt", report.grid.dt()}};
    j["nrmse_variant"] = to_string(report.variant);
    j["windows"] = report.n_windows;
    if (report.threshold) j["threshold"] = *report.threshold;
    Json cands = Json::array();
    for (const auto& c : report.candidates) {
        Json cj = Json::object();
        cj["id"] = c.id;
        cj["full_nrmse"] = c.full_nrmse;
        cj["windows"] = windowed_to_json(c.windowed);
        if (c.horizon) {
            cj["horizon"] = Json{{"time", c.horizon->time},
                                 {"exceeded", c.horizon->exceeded},
                                 {"windows_within", c.horizon->windows_within}};
        }
        cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
    j["reference_id"] = report.reference_id;
    if (report.horizon_winner) j["horizon_winner"] = *report.horizon_winner;
    return j.dump(2) + "\n";
}

ComparisonReport report_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("report: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("report: top level must be an object");
    reject_unknown(j, {"schema", "grid", "nrmse_variant", "windows", "threshold", "candidates",
                       "reference_id", "horizon_winner"},
                   "report");
    if (get<std::string>(j, "schema") != kSchema) throw ConfigError("report: unsupported schema");

    ComparisonReport r;
    const Json& g = require(j, "grid");
    reject_unknown(g, {"t0", "t1", "n", "dt"}, "grid");
    r.grid.t0 = get<double>(g, "t0");
    r.grid.t1 = get<double>(g, "t1");
    r.grid.n = get<std::size_t>(g, "n");
    r.variant = parse_nrmse_variant(get<std::string>(j, "nrmse_variant"));
    r.n_windows = get<std::size_t>(j, "windows");
    if (j.contains("threshold")) r.threshold = get<double>(j, "threshold");

    const Json& cands = require(j, "candidates");
    if (!cands.is_array()) throw ConfigError("report: 'candidates' must be an array");
    for (const Json& cj : cands) {
        reject_unknown(cj, {"id", "full_nrmse", "windows", "horizon"}, "candidate");
        CandidateScore c;
        c.id = get<std::string>(cj, "id");
        c.full_nrmse = get<double>(cj, "full_nrmse");
        const Json& w = require(cj, "windows");
        reject_unknown(w, {"prefix_end", "nrmse"}, "windows");
        c.windowed.boundaries = get<std::vector<std::size_t>>(w, "prefix_end");
        c.windowed.scores = get<std::vector<double>>(w, "nrmse");
        if (c.windowed.boundaries.size() != c.windowed.scores.size()) {
            throw ConfigError("report: windows of '" + c.id + "' have mismatched lengths");
        }
        if (cj.contains("horizon")) {
            const Json& h = cj.at("horizon");
            reject_unknown(h, {"time", "exceeded", "windows_within"}, "horizon");
            c.horizon = HorizonSummary{get<double>(h, "time"), get<bool>(h, "exceeded"),
                                       get<std::size_t>(h, "windows_within")};
        }
        r.candidates.push_back(std::move(c));
    }
    r.reference_id = get<std::string>(j, "reference_id");
    if (j.contains("horizon_winner")) r.horizon_winner = get<std::string>(j, "horizon_winner");
    return r;
}

std::string windows_csv(const ComparisonReport& report) {
    std::string out = "prefix_end";
    for (const auto& c : report.candidates) out += "," + c.id;
    out += '\n';
    if (report.candidates.empty()) return out;
    const auto& boundaries = report.candidates.front().windowed.boundaries;
    for (std::size_t row = 0; row < boundaries.size(); ++row) {
        out += std::to_string(boundaries[row]);
        for (const auto& c : report.candidates) out += "," + format_double(c.windowed.scores.at(row));
        out += '\n';
    }
    return out;
}

}  // namespace jerkrepro
