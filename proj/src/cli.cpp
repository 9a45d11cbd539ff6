#include "jerkrepro/cli.hpp"

#include "jerkrepro/errors.hpp"
#include "jerkrepro/ingest.hpp"
#include "jerkrepro/integrate.hpp"
#include "jerkrepro/report.hpp"
#include "jerkrepro/run_config.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

namespace jerkrepro::cli {

namespace {

namespace fs = std::filesystem;

// Flag values; only flags actually given override the config file.
struct SimulateFlags {
    double a = 0.0;
    std::string sign;
    double time_scale = 0.0;
    std::string ic;
    std::string method;
    double h = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t points = 0;
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    std::string signal;
    std::string out;
};

struct CompareFlags {
    std::string measured;
    std::vector<std::string> candidates;
    std::size_t windows = 0;
    std::size_t grid_points = 0;
    std::string variant;
    double threshold = 0.0;
    std::string report;
    std::string windows_csv;
};

struct Invocation {
    std::string config_path;
    CLI::App* simulate = nullptr;
    CLI::App* compare = nullptr;
    CLI::App* horizon = nullptr;
    SimulateFlags sim;
    CompareFlags cmp;
};

bool given(const CLI::App* app, const char* name) { return app->count(name) > 0; }

RunConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    return run_config_from_json(read_file(path));
}

SystemState parse_ic(const std::string& text) {
    std::array<double, 3> v{};
    std::size_t field = 0;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        if (field >= 3 || !parse_double(rest.substr(0, comma), v[field])) {
            throw DomainError("--ic expects three comma-separated numbers X,XD,XDD");
        }
        ++field;
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (field != 3) throw DomainError("--ic expects three comma-separated numbers X,XD,XDD");
    return {v[0], v[1], v[2]};
}

int cmd_simulate(const Invocation& inv, std::ostream& out) {
    const CLI::App* app = inv.simulate;
    const SimulateFlags& f = inv.sim;
    RunConfig cfg = load_config(inv.config_path);
    if (given(app, "--a")) cfg.params.a = f.a;
    if (given(app, "--sign")) cfg.params.sign = parse_nonlinearity_sign(f.sign);
    if (given(app, "--time-scale")) cfg.params.time_scale_s = f.time_scale;
    if (given(app, "--ic")) cfg.integrator.initial_state = parse_ic(f.ic);
    if (given(app, "--method")) cfg.integrator.method = parse_method(f.method);
    if (given(app, "--h")) cfg.integrator.step = f.h;
    if (given(app, "--t-start")) cfg.integrator.t_start = f.t_start;
    if (given(app, "--t-end")) cfg.integrator.t_end = f.t_end;
    if (given(app, "--points")) cfg.integrator.output_points = f.points;
    if (given(app, "--rel-tol")) cfg.integrator.rel_tol = f.rel_tol;
    if (given(app, "--abs-tol")) cfg.integrator.abs_tol = f.abs_tol;
    if (given(app, "--signal")) cfg.signal = parse_state_component(f.signal);
    validate(cfg);

    const Trajectory traj = simulate(cfg.integrator, cfg.params);
    UniformSeries series = traj.component(cfg.signal);
    // Dimensionless time -> seconds via the circuit time constant.
    series.t0 *= cfg.params.time_scale_s;
    series.dt *= cfg.params.time_scale_s;
    series.meta.unit = "s";
    write_file(f.out, write_series_csv(series));

    out << "simulate: " << series.size() << " points, t in [" << format_double(series.time_at(0)) << ", "
        << format_double(series.time_at(series.size() - 1)) << "] s, method "
        << to_string(cfg.integrator.method) << ", signal " << to_string(cfg.signal) << " -> " << f.out
        << "\n";
    return kExitOk;
}

std::vector<NamedTrace> load_candidates(const std::vector<std::string>& specs) {
    std::vector<NamedTrace> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            throw ConfigError("--candidate expects NAME=FILE, got '" + spec + "'");
        }
        const std::string name = spec.substr(0, eq);
        const std::string path = spec.substr(eq + 1);
        try {
            out.push_back({name, parse_trace(read_file(path), name)});
        } catch (const ParseError& e) {
            throw ParseError(e.line(), std::string("in '") + path + "': " + e.what());
        }
    }
    return out;
}

TimeSeries load_measured(const std::string& path) {
    try {
        return parse_trace(read_file(path), "measured");
    } catch (const ParseError& e) {
        throw ParseError(e.line(), std::string("in '") + path + "': " + e.what());
    }
}

// Runs one pipeline stage, tagging any failure with the stage name.
template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw DomainError(std::string(name) + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(name) + ": " + e.what());
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

CompareOptions compare_options(const Invocation& inv, const CLI::App* app, bool with_threshold) {
    const CompareFlags& f = inv.cmp;
    RunConfig cfg = load_config(inv.config_path);
    if (given(app, "--windows")) cfg.metrics.n_windows = f.windows;
    if (given(app, "--grid-points")) cfg.metrics.grid_points = f.grid_points;
    if (given(app, "--nrmse-variant")) cfg.metrics.variant = parse_nrmse_variant(f.variant);
    if (given(app, "--threshold")) cfg.metrics.threshold = f.threshold;
    validate(cfg);

    CompareOptions options;
    options.grid_points = cfg.metrics.grid_points;
    options.n_windows = cfg.metrics.n_windows;
    options.variant = cfg.metrics.variant;
    if (with_threshold || given(app, "--threshold")) options.threshold = cfg.metrics.threshold;
    return options;
}

ComparisonReport run_pipeline(const Invocation& inv, const CLI::App* app, bool with_threshold) {
    const CompareOptions options = stage("options", [&] { return compare_options(inv, app, with_threshold); });
    const TimeSeries measured = stage("ingest", [&] { return load_measured(inv.cmp.measured); });
    const auto candidates = stage("ingest", [&] { return load_candidates(inv.cmp.candidates); });
    try {
        return compare_traces(measured, candidates, options);
    } catch (const NoOverlapError& e) {
        throw NoOverlapError(std::string("align: ") + e.what());
    } catch (const ExtrapolationError& e) {
        throw ExtrapolationError(std::string("align: ") + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("options: ") + e.what());
    } catch (const Error& e) {
        throw Error(std::string("score: ") + e.what());
    }
}

void write_reports(const ComparisonReport& report, const CompareFlags& f) {
    if (!f.report.empty()) write_file(f.report, to_json(report));
    std::string csv_path = f.windows_csv;
    if (csv_path.empty() && !f.report.empty()) {
        fs::path p(f.report);
        p.replace_extension(".windows.csv");
        csv_path = p.string();
    }
    if (!csv_path.empty()) write_file(csv_path, windows_csv(report));
}

int cmd_compare(const Invocation& inv, std::ostream& out) {
    const ComparisonReport report = run_pipeline(inv, inv.compare, false);
    stage("write", [&] { write_reports(report, inv.cmp); });
    out << "grid: " << report.grid.n << " points over [" << format_double(report.grid.t0) << ", "
        << format_double(report.grid.t1) << "]\n";
    for (const auto& c : report.candidates) {
        out << c.id << ": nrmse " << format_double(c.full_nrmse) << "\n";
    }
    out << "reference: " << report.reference_id << "\n";
    return kExitOk;
}

int cmd_horizon(const Invocation& inv, std::ostream& out) {
    const ComparisonReport report = run_pipeline(inv, inv.horizon, true);
    stage("write", [&] {
        if (!inv.cmp.report.empty()) write_file(inv.cmp.report, to_json(report));
    });
    const double span = report.grid.t1 - report.grid.t0;
    for (const auto& c : report.candidates) {
        out << c.id << ": horizon " << format_double(c.horizon->time) << " of "
            << format_double(span) << (c.horizon->exceeded ? " (exceeded)" : " (not exceeded)") << "\n";
    }
    out << "winner: " << *report.horizon_winner << "\n";
    return kExitOk;
}

void add_trace_flags(CLI::App* app, Invocation& inv, bool threshold) {
    app->add_option("--measured", inv.cmp.measured, "Measured trace (CSV or SPICE export)")->required();
    app->add_option("--candidate", inv.cmp.candidates, "Candidate trace as NAME=FILE (repeatable)")
        ->required()
        ->take_all();
    app->add_option("--windows", inv.cmp.windows, "Number of cumulative windows");
    app->add_option("--grid-points", inv.cmp.grid_points, "Points on the common grid");
    app->add_option("--nrmse-variant", inv.cmp.variant, "simulated-mean or measured-mean");
    app->add_option("--threshold", inv.cmp.threshold,
                    threshold ? "NRMSE threshold for the horizon" : "Also compute horizons at this threshold");
    app->add_option("--report", inv.cmp.report, "JSON report output");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jerk-system simulator and trace reproducibility analysis", "jerkrepro"};
    app.require_subcommand(1);
    Invocation inv;
    app.add_option("--config", inv.config_path, "RunConfig JSON file; flags override it");

    auto* sim = app.add_subcommand("simulate", "Integrate the jerk system and write a trace CSV");
    SimulateFlags& sf = inv.sim;
    // "--h" is the step size, so help is long-form only here.
    sim->set_help_flag("--help", "Print this help message and exit");
    sim->add_option("--a", sf.a, "Bifurcation parameter (> 0)");
    sim->add_option("--sign", sf.sign, "Sign of the quadratic term: minus or plus");
    sim->add_option("--time-scale", sf.time_scale, "Seconds per dimensionless time unit (R*C)");
    sim->add_option("--ic", sf.ic, "Initial state X,XD,XDD");
    sim->add_option("--method", sf.method, "euler, rk4 or rk45");
    sim->add_option("--h", sf.h, "Step size (dimensionless)");
    sim->add_option("--t-start", sf.t_start, "Start time (dimensionless)");
    sim->add_option("--t-end", sf.t_end, "End time (dimensionless)");
    sim->add_option("--points", sf.points, "Number of output samples");
    sim->add_option("--rel-tol", sf.rel_tol, "RK45 relative tolerance");
    sim->add_option("--abs-tol", sf.abs_tol, "RK45 absolute tolerance");
    sim->add_option("--signal", sf.signal, "State component to write: x, xd or xdd");
    sim->add_option("--out", sf.out, "Output CSV")->required();
    sim->add_option("--config", inv.config_path, "RunConfig JSON file; flags override it");
    inv.simulate = sim;

    auto* cmp = app.add_subcommand("compare", "Score candidate traces against a measured trace");
    add_trace_flags(cmp, inv, false);
    cmp->add_option("--windows-csv", inv.cmp.windows_csv,
                    "Per-window CSV output (default: next to --report)");
    cmp->add_option("--config", inv.config_path, "RunConfig JSON file; flags override it");
    inv.compare = cmp;

    auto* hor = app.add_subcommand("horizon", "Prediction horizon of each candidate");
    add_trace_flags(hor, inv, true);
    hor->add_option("--config", inv.config_path, "RunConfig JSON file; flags override it");
    inv.horizon = hor;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    const char* command = sim->parsed() ? "simulate" : cmp->parsed() ? "compare" : "horizon";
    try {
        if (sim->parsed()) return cmd_simulate(inv, out);
        if (cmp->parsed()) return cmd_compare(inv, out);
        return cmd_horizon(inv, out);
    } catch (const DomainError& e) {
        err << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << command << ": " << e.what() << "\n";
        return kExitDataError;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("jerkrepro");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace jerkrepro::cli
