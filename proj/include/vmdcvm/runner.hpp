#pragma once

// Subcommand drivers shared by the command-line tool and the tests: each
// takes a RunConfig, does the work and writes its files into output_dir.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vmdcvm/denoiser.hpp"
#include "vmdcvm/signal.hpp"
#include "vmdcvm/testbench.hpp"

namespace vmdcvm {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kRngName = "mt19937_64 + Box-Muller";

enum class Subcommand { Decompose, Denoise, Calibrate, Benchmark };

[[nodiscard]] std::string_view to_string(Subcommand s) noexcept;
[[nodiscard]] std::optional<Subcommand> parse_subcommand(std::string_view name);

struct SweepConfig {
    std::vector<std::string> signals; ///< test-signal names or paths to clean-signal CSVs
    std::vector<double> snrs_db;
    std::vector<std::size_t> lengths;
    std::size_t realizations = 20; ///< J
};

struct RunConfig {
    Subcommand subcommand = Subcommand::Denoise;
    std::optional<std::string> input_path;
    std::optional<std::string> signal; ///< synthetic test signal for single runs
    std::size_t n = 4096;
    std::optional<double> snr_db; ///< noise added to a synthetic signal when set
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 0;
    DenoiseConfig denoise;
    std::optional<SweepConfig> sweep;
    std::size_t threads = 0; ///< 0 picks the hardware concurrency

    /// Throws ConfigError when the subcommand's required inputs are missing.
    void validate() const;
};

/// Flat object keyed like the command-line flags (snake_case).
[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);

/// Applies the keys present in `j` on top of `cfg`. A manifest written by
/// run_benchmark is accepted as well (its "config" member is used).
void apply_json(const nlohmann::json& j, RunConfig& cfg);

struct BenchmarkRow {
    std::string signal;
    std::size_t n = 0;
    double input_snr_db = 0.0;
    double mean_out_snr_db = 0.0;
    double std_out_snr_db = 0.0;
    double mean_mse = 0.0;
};

/// Runs every (signal, length, SNR) cell for J realizations with noise seeds
/// seed + j, and writes results.csv and manifest.json to output_dir.
std::vector<BenchmarkRow> run_benchmark(const RunConfig& cfg);

/// Loads --input or synthesizes --signal (plus noise when snr_db is set).
struct LoadedInput {
    Signal noisy;
    std::optional<Signal> clean;
};
[[nodiscard]] LoadedInput load_input(const RunConfig& cfg);

/// Writes denoised.csv, report.json, distances.csv, thresholds.csv and
/// noise_cdf.csv.
DenoiseResult run_denoise(const RunConfig& cfg);

/// Writes modes.csv and decomposition.json.
ModeSet run_decompose(const RunConfig& cfg);

/// Writes partition.json, distances.csv, thresholds.csv and noise_cdf.csv.
ThresholdTable run_calibrate(const RunConfig& cfg);

} // namespace vmdcvm
