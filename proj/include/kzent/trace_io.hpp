#pragma once

// Tabular traces, their CSV form and gnuplot scripts that render them.
//
// CSV layout: `# key: value` metadata lines, one header line of column names,
// then rows. Numbers carry 12 significant digits; lines end in LF.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kzent {

inline constexpr int kCsvDigits = 12;

struct Trace {
    std::string name;  ///< file suffix, e.g. "dia" -> <stem>_dia.csv; empty for a lone trace
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column_index(std::string_view column) const;  ///< throws std::out_of_range
    [[nodiscard]] std::vector<double> column(std::string_view column) const;
    [[nodiscard]] const std::string* meta(std::string_view key) const;
};

/// Shortest text of x rounded to 12 significant digits.
std::string format_number(double x);

/// x rounded to 12 significant digits, i.e. what survives a CSV round trip.
double round_to_csv(double x);

/// Checks a concurrence trace: first column strictly increasing and any
/// "concurrence" column within [0, 1]. Throws std::logic_error.
void validate_concurrence_trace(const Trace& trace);

std::string to_csv(const Trace& trace);
Trace parse_csv(std::string_view text);

/// Writes to_csv(trace). Throws std::runtime_error carrying the OS message.
void emit_csv(const Trace& trace, const std::filesystem::path& path);
Trace read_csv(const std::filesystem::path& path);

enum class PlotKind {
    lines,      ///< one concurrence curve per CSV
    compare,    ///< para and dia curves plus an inset with their difference
    heat_map,   ///< long-format (g, t, ..., diff) surface
    table,      ///< no plot (oracle-check)
};

/// gnuplot script for the given CSV files, referenced by file name only so the
/// script can be run from the directory that holds them.
std::string plot_script(PlotKind kind, const std::vector<std::string>& csv_names, std::string_view title);

void emit_plot_script(PlotKind kind, const std::vector<std::string>& csv_names, std::string_view title,
                      const std::filesystem::path& path);

}  // namespace kzent
