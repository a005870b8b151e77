#include "vmdcvm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vmdcvm/errors.hpp"

namespace vmdcvm {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string> split_row(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

} // namespace

std::string format_number(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::vector<double> parse_signal_csv(std::istream& in, std::string_view source) {
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        if (!seen_content && text == "value") {
            seen_content = true;
            continue;
        }
        seen_content = true;
        double v = 0.0;
        if (!parse_double(text, v) || !std::isfinite(v)) {
            throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                            ": not a finite number: '" + std::string(text) + "'");
        }
        out.push_back(v);
    }
    return out;
}

Signal read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    return Signal(parse_signal_csv(in, path.string()));
}

void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples) {
    std::ofstream out = open_out(path);
    out << "value\n";
    for (double v : samples) out << format_number(v) << '\n';
    if (!out) throw DataError("failed writing " + path.string());
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("CSV has no column '" + std::string(name) + "'");
    const auto col = static_cast<std::size_t>(it - header.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double v = 0.0;
        if (col >= rows[r].size() || !parse_double(rows[r][col], v)) {
            throw DataError("CSV row " + std::to_string(r + 2) + ", column '" + std::string(name) +
                            "' is not a number");
        }
        out.push_back(v);
    }
    return out;
}

CsvTable read_csv_table(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_row(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " columns, found " +
                            std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw DataError(path.string() + ": empty CSV");
    return table;
}

void write_csv_table(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out = open_out(path);
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) emit(row);
    if (!out) throw DataError("failed writing " + path.string());
}

void write_modes_csv(const std::filesystem::path& path, const ModeSet& modes) {
    CsvTable t;
    for (std::size_t k = 0; k < modes.count(); ++k) t.header.push_back("u" + std::to_string(k + 1));
    t.header.push_back("residual");
    t.rows.reserve(modes.length());
    for (std::size_t i = 0; i < modes.length(); ++i) {
        std::vector<std::string> row;
        row.reserve(modes.count() + 1);
        for (const auto& m : modes.modes) row.push_back(format_number(m[i]));
        row.push_back(format_number(modes.residual[i]));
        t.rows.push_back(std::move(row));
    }
    write_csv_table(path, t);
}

ModeSet read_modes_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv_table(path);
    if (t.header.size() < 2 || t.header.back() != "residual") {
        throw DataError(path.string() + ": expected columns u1..uK,residual");
    }
    ModeSet m;
    for (std::size_t k = 0; k + 1 < t.header.size(); ++k) {
        m.modes.push_back(t.numeric_column("u" + std::to_string(k + 1)));
    }
    m.residual = t.numeric_column("residual");
    return m;
}

void write_step_cdf_csv(const std::filesystem::path& path, const StepCdf& cdf) {
    CsvTable t{{"z", "E0"}, {}};
    for (std::size_t i = 0; i < cdf.grid().size(); ++i) {
        t.rows.push_back({format_number(cdf.grid()[i]), format_number(cdf.values()[i])});
    }
    write_csv_table(path, t);
}

StepCdf read_step_cdf_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv_table(path);
    return StepCdf(t.numeric_column("z"), t.numeric_column("E0"));
}

void write_threshold_csv(const std::filesystem::path& path, const ThresholdTable& table) {
    CsvTable t{{"lambda", "pfa"}, {}};
    for (std::size_t i = 0; i < table.lambdas.size(); ++i) {
        t.rows.push_back({format_number(table.lambdas[i]), format_number(table.pfa[i])});
    }
    write_csv_table(path, t);
}

ThresholdTable read_threshold_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv_table(path);
    return ThresholdTable{t.numeric_column("lambda"), t.numeric_column("pfa")};
}

nlohmann::json to_json(const ModePartition& p) {
    return nlohmann::json{{"distances", p.distances}, {"slopes", p.slopes},
                          {"k1", p.k1},               {"k2", p.k2},
                          {"relevant", p.relevant()}, {"rejected", p.rejected()}};
}

nlohmann::json to_json(const DenoiseReport& r) {
    return nlohmann::json{
        {"partition", to_json(r.partition)},
        {"center_freqs", r.center_freqs},
        {"vmd", {{"iterations", r.vmd_iterations}, {"converged", r.vmd_converged}}},
        {"noise_model", {{"segment_len", r.segment_len}, {"segments_used", r.segments_used}}},
        {"per_mode_lambda", r.per_mode_lambda},
        {"per_mode_kept_fraction", r.per_mode_kept_fraction},
    };
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw DataError("failed writing " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace vmdcvm
