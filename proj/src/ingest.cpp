#include "jerkrepro/ingest.hpp"

#include "jerkrepro/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace jerkrepro {

namespace {

struct Line {
    std::size_t number;  // 1-based
    std::string_view text;
};

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

// Returns the 1-based line of the first invalid UTF-8 sequence.
std::optional<std::size_t> first_invalid_utf8_line(std::string_view text) {
    std::size_t line = 1;
    std::size_t i = 0;
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
    while (i < text.size()) {
        const unsigned char c = byte(i);
        if (c == '\n') ++line;
        std::size_t len;
        if (c < 0x80) {
            len = 1;
        } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
        } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
            len = 4;
        } else {
            return line;
        }
        if (i + len > text.size()) return line;
        for (std::size_t k = 1; k < len; ++k) {
            if ((byte(i + k) & 0xC0) != 0x80) return line;
        }
        if (len == 3) {
            const unsigned cp = ((c & 0x0Fu) << 12) | ((byte(i + 1) & 0x3Fu) << 6) | (byte(i + 2) & 0x3Fu);
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return line;
        } else if (len == 4) {
            const unsigned cp = ((c & 0x07u) << 18) | ((byte(i + 1) & 0x3Fu) << 12) |
                                ((byte(i + 2) & 0x3Fu) << 6) | (byte(i + 3) & 0x3Fu);
            if (cp < 0x10000 || cp > 0x10FFFF) return line;
        }
        i += len;
    }
    return std::nullopt;
}

// Splits into lines (LF or CRLF), dropping blank ones but keeping numbering.
std::vector<Line> split_lines(std::string_view text) {
    if (const auto bad = first_invalid_utf8_line(text)) {
        throw ParseError(*bad, "input is not valid UTF-8");
    }
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<Line> lines;
    std::size_t number = 1;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (!trim(raw).empty()) lines.push_back({number, raw});
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
        ++number;
    }
    return lines;
}

std::vector<std::string> split_fields(const Line& line, char delimiter) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    const std::string_view s = line.text;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < s.size() && s[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && trim(current).empty() && !was_quoted) {
            current.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == delimiter) {
            fields.emplace_back(was_quoted ? current : std::string(trim(current)));
            current.clear();
            was_quoted = false;
        } else {
            if (!was_quoted) current.push_back(c);
            else if (c != ' ' && c != '\t') throw ParseError(line.number, "text after closing quote");
        }
    }
    if (quoted) throw ParseError(line.number, "unterminated quoted field");
    fields.emplace_back(was_quoted ? current : std::string(trim(current)));
    return fields;
}

double parse_field(const std::vector<std::string>& fields, std::size_t column, const Line& line,
                   const char* what) {
    if (column >= fields.size()) {
        throw ParseError(line.number, std::string("missing ") + what + " column " +
                                          std::to_string(column + 1) + " (row has " +
                                          std::to_string(fields.size()) + " fields)");
    }
    double value = 0.0;
    if (!parse_double(fields[column], value)) {
        throw ParseError(line.number, std::string("malformed ") + what + " value '" + fields[column] + "'");
    }
    return value;
}

struct RowReader {
    TimeSeries series;
    std::size_t last_line = 0;

    void add(double t, double v, std::size_t line) {
        if (!series.t.empty() && !(t > series.t.back())) {
            throw NonMonotoneTimeError(line, "time " + format_double(t) +
                                                 " does not increase (previous " +
                                                 format_double(series.t.back()) + ")");
        }
        series.t.push_back(t);
        series.v.push_back(v);
        last_line = line;
    }

    TimeSeries finish(std::size_t end_line) && {
        if (series.t.size() < 2) {
            throw InsufficientDataError(end_line, "need at least 2 data rows, found " +
                                                      std::to_string(series.t.size()));
        }
        return std::move(series);
    }
};

// Where more data was expected: one past the last non-blank line.
std::size_t line_after(const std::vector<Line>& lines) {
    return lines.empty() ? 1 : lines.back().number + 1;
}

template <typename Samples>
std::string write_rows(std::size_t n, Samples&& sample) {
    std::string out = "t,v\n";
    out.reserve(out.size() + n * 40);
    for (std::size_t k = 0; k < n; ++k) {
        const auto [t, v] = sample(k);
        out += format_double(t);
        out += ',';
        out += format_double(v);
        out += '\n';
    }
    return out;
}

}  // namespace

bool parse_double(std::string_view text, double& out) noexcept {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
        if (!text.empty() && (text.front() == '+' || text.front() == '-')) return false;
    }
    if (text.empty()) return false;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                           std::chars_format::general);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) return false;
    out = value;
    return true;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw DomainError("cannot format number");
    return std::string(buf, ptr);
}

TimeSeries parse_trace_csv(std::string_view text, const CsvOptions& options) {
    if (options.time_column == options.value_column) {
        throw DomainError("time and value columns must differ");
    }
    if (options.delimiter == '"' || options.delimiter == '\n' || options.delimiter == '\r') {
        throw DomainError("invalid delimiter");
    }
    const auto lines = split_lines(text);
    RowReader reader;
    reader.series.meta.source_id = options.source_id;

    auto first = lines.begin();
    if (options.header) {
        if (first == lines.end()) throw InsufficientDataError(1, "empty input, expected a header row");
        const auto labels = split_fields(*first, options.delimiter);
        if (options.value_column < labels.size()) reader.series.meta.signal = labels[options.value_column];
        ++first;
    }
    for (auto it = first; it != lines.end(); ++it) {
        const auto fields = split_fields(*it, options.delimiter);
        const double t = parse_field(fields, options.time_column, *it, "time");
        const double v = parse_field(fields, options.value_column, *it, "value");
        reader.add(t, v, it->number);
    }
    return std::move(reader).finish(line_after(lines));
}

TimeSeries parse_spice_export(std::string_view text, std::string_view source_id) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw MissingHeaderError(1, "empty input, expected a 'time' header");

    const Line& head = lines.front();
    const auto labels = split_fields(head, '\t');
    std::string label = labels.front();
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (label != "time") {
        throw MissingHeaderError(head.number, "expected a header starting with 'time', got '" +
                                                  labels.front() + "'");
    }
    if (labels.size() < 2) throw MissingHeaderError(head.number, "header has no signal column");

    RowReader reader;
    reader.series.meta.source_id = std::string(source_id);
    reader.series.meta.signal = labels[1];
    for (auto it = lines.begin() + 1; it != lines.end(); ++it) {
        const auto fields = split_fields(*it, '\t');
        const double t = parse_field(fields, 0, *it, "time");
        const double v = parse_field(fields, 1, *it, "value");
        reader.add(t, v, it->number);
    }
    return std::move(reader).finish(line_after(lines));
}

std::string write_series_csv(const TimeSeries& series) {
    validate(series);
    return write_rows(series.size(), [&](std::size_t k) { return std::pair{series.t[k], series.v[k]}; });
}

std::string write_series_csv(const UniformSeries& series) {
    validate(series);
    return write_rows(series.size(),
                      [&](std::size_t k) { return std::pair{series.time_at(k), series.values[k]}; });
}

TraceFormat detect_trace_format(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) return TraceFormat::Csv;
    const std::string_view head = lines.front().text;
    const auto first_field = trim(head.substr(0, head.find_first_of(",\t")));
    double ignored = 0.0;
    if (parse_double(first_field, ignored)) return TraceFormat::Csv;
    if (head.find('\t') != std::string_view::npos && head.find(',') == std::string_view::npos) {
        return TraceFormat::SpiceExport;
    }
    return TraceFormat::CsvWithHeader;
}

TimeSeries parse_trace(std::string_view text, std::string_view source_id) {
    switch (detect_trace_format(text)) {
        case TraceFormat::SpiceExport: return parse_spice_export(text, source_id);
        case TraceFormat::CsvWithHeader: {
            CsvOptions options;
            options.header = true;
            options.source_id = std::string(source_id);
            return parse_trace_csv(text, options);
        }
        case TraceFormat::Csv: break;
    }
    CsvOptions options;
    options.source_id = std::string(source_id);
    return parse_trace_csv(text, options);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("cannot write '" + path.string() + "'");
}

}  // namespace jerkrepro
