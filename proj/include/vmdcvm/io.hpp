#pragma once

// File formats: single-column signal CSV, multi-column numeric CSV tables
// (modes, noise CDF, threshold table, benchmark results) and JSON exports.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vmdcvm/denoiser.hpp"
#include "vmdcvm/gof.hpp"
#include "vmdcvm/modesel.hpp"
#include "vmdcvm/noisest.hpp"
#include "vmdcvm/signal.hpp"
#include "vmdcvm/vmd.hpp"

namespace vmdcvm {

/// 17 significant digits, enough to round-trip any double.
[[nodiscard]] std::string format_number(double v);

/// One sample per line with an optional `value` header; blank lines are
/// skipped. DataError messages name `source` and the offending line.
[[nodiscard]] std::vector<double> parse_signal_csv(std::istream& in, std::string_view source = "<stream>");
[[nodiscard]] Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples);

/// Header row plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws DataError if the column is missing or holds a non-number.
    [[nodiscard]] std::vector<double> numeric_column(std::string_view name) const;
};

[[nodiscard]] CsvTable read_csv_table(const std::filesystem::path& path);
void write_csv_table(const std::filesystem::path& path, const CsvTable& table);

/// N rows of u1..uK,residual.
void write_modes_csv(const std::filesystem::path& path, const ModeSet& modes);
/// Modes and residual back from write_modes_csv output; iteration metadata
/// and center frequencies are not stored in the CSV.
[[nodiscard]] ModeSet read_modes_csv(const std::filesystem::path& path);

/// Two columns z,E0.
void write_step_cdf_csv(const std::filesystem::path& path, const StepCdf& cdf);
[[nodiscard]] StepCdf read_step_cdf_csv(const std::filesystem::path& path);

/// Two columns lambda,pfa.
void write_threshold_csv(const std::filesystem::path& path, const ThresholdTable& table);
[[nodiscard]] ThresholdTable read_threshold_csv(const std::filesystem::path& path);

/// {distances, slopes, k1, k2, relevant, rejected}
[[nodiscard]] nlohmann::json to_json(const ModePartition& p);
[[nodiscard]] nlohmann::json to_json(const DenoiseReport& r);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
[[nodiscard]] nlohmann::json read_json(const std::filesystem::path& path);

} // namespace vmdcvm
