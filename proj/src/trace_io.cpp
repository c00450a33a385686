#include "kzent/trace_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace kzent {

std::size_t Trace::column_index(std::string_view col) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == col) return i;
    throw std::out_of_range("no column '" + std::string(col) + "'");
}

std::vector<double> Trace::column(std::string_view col) const
{
    const std::size_t idx = column_index(col);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(idx));
    return out;
}

const std::string* Trace::meta(std::string_view key) const
{
    for (const auto& [k, v] : metadata)
        if (k == key) return &v;
    return nullptr;
}

std::string format_number(double x)
{
    if (x == 0.0) return "0";  // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kCsvDigits);
    if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);  // %.12g semantics: no trailing zeros
}

namespace {

double parse_number(std::string_view s)
{
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("malformed number '" + std::string(s) + "'");
    return x;
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(sep, pos);
        out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

double round_to_csv(double x) { return parse_number(format_number(x)); }

void validate_concurrence_trace(const Trace& trace)
{
    if (trace.columns.empty()) throw std::logic_error("trace has no columns");
    for (std::size_t i = 1; i < trace.rows.size(); ++i)
        if (!(trace.rows[i][0] > trace.rows[i - 1][0]))
            throw std::logic_error("time column is not strictly increasing at row " + std::to_string(i));
    for (std::size_t c = 0; c < trace.columns.size(); ++c) {
        if (trace.columns[c].rfind("concurrence", 0) != 0) continue;
        for (const auto& r : trace.rows)
            if (!(r[c] >= 0.0 && r[c] <= 1.0)) throw std::logic_error("concurrence outside [0, 1]");
    }
}

std::string to_csv(const Trace& trace)
{
    std::string out;
    for (const auto& [k, v] : trace.metadata) {
        if (k.find(':') != std::string::npos || k.find('\n') != std::string::npos ||
            v.find('\n') != std::string::npos)
            throw std::invalid_argument("metadata must be single-line and keys may not contain ':'");
        out += "# " + k + ": " + v + "\n";
    }
    for (std::size_t i = 0; i < trace.columns.size(); ++i) {
        if (i) out += ',';
        out += trace.columns[i];
    }
    out += '\n';
    for (const auto& row : trace.rows) {
        if (row.size() != trace.columns.size()) throw std::invalid_argument("row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

Trace parse_csv(std::string_view text)
{
    Trace t;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (header_seen) throw std::invalid_argument("metadata after the header line");
            std::string_view body = line.substr(1);
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            const std::size_t colon = body.find(": ");
            if (colon == std::string_view::npos) throw std::invalid_argument("metadata line without ': '");
            t.metadata.emplace_back(std::string(body.substr(0, colon)), std::string(body.substr(colon + 2)));
        } else if (!header_seen) {
            for (auto c : split(line, ',')) t.columns.emplace_back(c);
            header_seen = true;
        } else {
            std::vector<double> row;
            for (auto c : split(line, ',')) row.push_back(parse_number(c));
            if (row.size() != t.columns.size()) throw std::invalid_argument("row width differs from header");
            t.rows.push_back(std::move(row));
        }
    }
    if (!header_seen) throw std::invalid_argument("CSV has no header line");
    return t;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    os.close();
    if (!os) throw std::runtime_error("write failed for " + path.string() + ": " + std::strerror(errno));
}

}  // namespace

void emit_csv(const Trace& trace, const std::filesystem::path& path) { write_text(path, to_csv(trace)); }

Trace read_csv(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_csv(ss.str());
}

std::string plot_script(PlotKind kind, const std::vector<std::string>& csv_names, std::string_view title)
{
    for (const auto& n : csv_names)
        if (std::filesystem::path(n).has_parent_path() || std::filesystem::path(n).is_absolute())
            throw std::invalid_argument("plot scripts reference bare file names only");

    std::ostringstream os;
    os << "# gnuplot script; run from the directory holding the CSV files\n"
       << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set key autotitle columnhead\n"
       << "set title '" << title << "'\n";

    switch (kind) {
    case PlotKind::lines:
        os << "set xlabel 't - t_0'\nset ylabel 'C_{AB}'\nset yrange [0:1.05]\n";
        for (std::size_t i = 0; i < csv_names.size(); ++i) {
            os << (i ? ", \\\n     " : "plot ") << "'" << csv_names[i] << "' using 1:2 with lines lw 2 title '"
               << std::filesystem::path(csv_names[i]).stem().string() << "'";
        }
        os << "\n";
        break;
    case PlotKind::compare:
        if (csv_names.size() != 3) throw std::invalid_argument("compare plot needs para, dia and diff CSVs");
        os << "set multiplot\n"
           << "set xlabel 't - t_0'\nset ylabel 'C_{AB}'\nset yrange [0:1.05]\n"
           << "plot '" << csv_names[0] << "' using 1:2 with lines lw 2 title 'paramagnetic', \\\n"
           << "     '" << csv_names[1] << "' using 1:2 with lines lw 2 title 'frozen domains'\n"
           << "set origin 0.15,0.12\nset size 0.4,0.4\nunset title\nset autoscale y\n"
           << "set xlabel ''\nset ylabel 'difference'\n"
           << "plot '" << csv_names[2] << "' using 1:4 with lines notitle\n"
           << "unset multiplot\n";
        break;
    case PlotKind::heat_map:
        if (csv_names.size() != 1) throw std::invalid_argument("heat map needs one long-format CSV");
        os << "set xlabel 'g'\nset ylabel 't - t_0'\nset cblabel 'C_{dia} - C_{para}'\n"
           << "set palette defined (-1 'blue', 0 'white', 1 'red')\n"
           << "plot '" << csv_names[0] << "' using 1:2:5 with image notitle\n";
        break;
    case PlotKind::table:
        os << "# tabular output; nothing to plot\n";
        break;
    }
    return os.str();
}

void emit_plot_script(PlotKind kind, const std::vector<std::string>& csv_names, std::string_view title,
                      const std::filesystem::path& path)
{
    write_text(path, plot_script(kind, csv_names, title));
}

}  // namespace kzent
