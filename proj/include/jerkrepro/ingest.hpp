#pragma once

// Trace file formats.
//
// CSV: "," delimited (configurable), optional single header row, optional
// double-quoted fields without embedded line breaks. LF or CRLF on read, LF on
// write. Blank lines are skipped.
//
// SPICE export: first line is a header whose first field is a time label
// ("time", any case), then tab-separated numeric rows. Scientific notation is
// accepted.
//
// Numbers are read and written without touching the C locale; the decimal
// separator is always '.'. Every parse error carries a 1-based line number.

#include "jerkrepro/series.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

namespace jerkrepro {

struct CsvOptions {
    std::size_t time_column = 0;
    std::size_t value_column = 1;
    char delimiter = ',';
    bool header = false;
    std::string source_id;
};

/// Parses delimited text into a validated TimeSeries. With a header, the
/// value column's label becomes meta.signal.
TimeSeries parse_trace_csv(std::string_view text, const CsvOptions& options = {});

/// Parses a tab-separated SPICE export. The header's value label becomes
/// meta.signal.
TimeSeries parse_spice_export(std::string_view text, std::string_view source_id = {});

/// "t,v" header then one row per sample, each number in the shortest form
/// that reads back to the identical double.
std::string write_series_csv(const TimeSeries& series);
std::string write_series_csv(const UniformSeries& series);

enum class TraceFormat { Csv, CsvWithHeader, SpiceExport };

/// Sniffs the first non-blank line: numeric first field means headerless CSV,
/// a tab-separated header means SPICE export, anything else CSV with header.
TraceFormat detect_trace_format(std::string_view text);

/// detect_trace_format followed by the matching parser.
TimeSeries parse_trace(std::string_view text, std::string_view source_id = {});

/// Whole-file read/write. Throw IoError ("cannot open ...") on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest round-trip decimal form of a finite double.
std::string format_double(double value);

/// Locale-independent strict parse of a whole field; leading '+' allowed.
/// Returns false on any trailing garbage or non-finite result.
bool parse_double(std::string_view text, double& out) noexcept;

}  // namespace jerkrepro
