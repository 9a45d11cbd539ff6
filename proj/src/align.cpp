#include "jerkrepro/align.hpp"

#include "jerkrepro/errors.hpp"
#include "jerkrepro/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jerkrepro {

namespace {

std::string describe_domains(std::span<const TimeSeries> traces) {
    std::string out;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& tr = traces[i];
        if (i) out += ", ";
        out += tr.meta.source_id.empty() ? "#" + std::to_string(i + 1) : tr.meta.source_id;
        out += " [" + format_double(tr.start()) + ", " + format_double(tr.end()) + "]";
    }
    return out;
}

}  // namespace

double CommonGrid::time_at(std::size_t k) const noexcept {
    if (k + 1 >= n) return t1;
    return std::min(t0 + static_cast<double>(k) * dt(), t1);
}

CommonGrid build_common_grid(std::span<const TimeSeries> traces, std::size_t n) {
    if (traces.empty()) throw DomainError("common grid needs at least one trace");
    if (n < 2) throw DomainError("common grid needs n >= 2 points");
    for (const auto& tr : traces) validate(tr);

    CommonGrid grid;
    grid.n = n;
    grid.t0 = traces.front().start();
    grid.t1 = traces.front().end();
    for (const auto& tr : traces) {
        grid.t0 = std::max(grid.t0, tr.start());
        grid.t1 = std::min(grid.t1, tr.end());
    }
    if (!(grid.t1 > grid.t0)) {
        throw NoOverlapError("trace time domains do not overlap: " + describe_domains(traces));
    }
    return grid;
}

UniformSeries resample_linear(const TimeSeries& trace, const CommonGrid& grid) {
    validate(trace);
    if (grid.n < 2 || !(grid.t1 > grid.t0)) throw DomainError("invalid common grid");
    if (grid.t0 < trace.start() || grid.t1 > trace.end()) {
        throw ExtrapolationError("grid [" + format_double(grid.t0) + ", " + format_double(grid.t1) +
                                 "] exceeds trace domain [" + format_double(trace.start()) + ", " +
                                 format_double(trace.end()) + "]");
    }

    UniformSeries out;
    out.t0 = grid.t0;
    out.dt = grid.dt();
    out.meta = trace.meta;
    out.values.reserve(grid.n);

    const auto& t = trace.t;
    const auto& v = trace.v;
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double q = grid.time_at(k);
        // Last knot <= q.
        const auto right = std::upper_bound(t.begin(), t.end(), q);
        const auto i = static_cast<std::size_t>(right - t.begin()) - 1;
        if (t[i] == q || i + 1 == t.size()) {
            out.values.push_back(v[i]);
            continue;
        }
        const double w = (q - t[i]) / (t[i + 1] - t[i]);
        const double lo = std::min(v[i], v[i + 1]);
        const double hi = std::max(v[i], v[i + 1]);
        out.values.push_back(std::clamp(v[i] + w * (v[i + 1] - v[i]), lo, hi));
    }
    return out;
}

}  // namespace jerkrepro
