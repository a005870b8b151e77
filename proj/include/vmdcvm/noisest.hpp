#pragma once

// Empirical noise model from the rejected modes: the averaged EDF of their
// non-overlapping segments, and the false-alarm table of window CVM
// statistics measured against that EDF.

#include <cstddef>
#include <span>
#include <vector>

#include "vmdcvm/gof.hpp"

namespace vmdcvm {

struct NoiseModel {
    StepCdf cdf;
    std::size_t segment_len;   ///< window length L+1
    std::size_t segments_used; ///< segments across all rejected modes
};

/// Smallest number of segments a noise model is built from.
inline constexpr std::size_t kMinNoiseSegments = 8;

/// Splits each mode into floor(N / window) non-overlapping segments (a short
/// trailing piece is dropped) and averages their EDFs on `grid_size` points
/// spanning the range of all rejected samples.
/// Throws DataError when there is no mode, mode lengths differ, a mode is
/// shorter than the window, or fewer than kMinNoiseSegments segments result.
[[nodiscard]] NoiseModel estimate_noise_cdf(std::span<const std::vector<double>> rejected_modes,
                                            std::size_t window, std::size_t grid_size = 512);

/// Empirical exceedance curve: pfa[i] is the fraction of calibration windows
/// whose statistic is strictly greater than lambdas[i].
struct ThresholdTable {
    std::vector<double> lambdas; ///< 0 followed by the distinct window statistics, ascending
    std::vector<double> pfa;     ///< nonincreasing, last entry 0
};

/// CVM statistic of every non-overlapping window of every rejected mode
/// against model.cdf. Throws DataError if `window` differs from the model's
/// segment length.
[[nodiscard]] ThresholdTable calibrate_thresholds(std::span<const std::vector<double>> rejected_modes,
                                                  const NoiseModel& model, std::size_t window);

/// Smallest tabulated lambda whose false-alarm rate does not exceed
/// `target_pfa` (clamped to [0, 1]).
[[nodiscard]] double lookup_threshold(const ThresholdTable& table, double target_pfa);

/// Decaying per-mode false-alarm target exp(-(k - 1)), k >= 1.
[[nodiscard]] double pfa_schedule(std::size_t k);

} // namespace vmdcvm
