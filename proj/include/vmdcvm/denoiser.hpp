#pragma once

// Full denoising pipeline: decompose, pick relevant modes, model the noise
// from the rejected ones, then zero every sample of a relevant mode whose
// surrounding window fits the noise model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vmdcvm/modesel.hpp"
#include "vmdcvm/noisest.hpp"
#include "vmdcvm/signal.hpp"
#include "vmdcvm/vmd.hpp"

namespace vmdcvm {

struct DenoiseConfig {
    VmdConfig vmd;
    std::size_t window = 32;   ///< local window length L+1
    std::size_t grid_size = 512;
    /// Per-mode false-alarm targets (one per VMD mode); the decaying
    /// exp(-(k-1)) schedule is used when absent.
    std::optional<std::vector<double>> pfa_override;

    void validate() const;
};

struct DenoiseReport {
    ModePartition partition;
    std::vector<double> center_freqs;
    std::size_t vmd_iterations = 0;
    bool vmd_converged = false;
    std::size_t segment_len = 0;
    std::size_t segments_used = 0;
    std::vector<double> per_mode_lambda;        ///< one per relevant mode
    std::vector<double> per_mode_kept_fraction; ///< one per relevant mode
    std::vector<std::vector<std::uint8_t>> masks; ///< 1 where a relevant-mode sample is kept
};

struct DenoiseResult {
    Signal output;
    DenoiseReport report;
    ModeSet modes;
    NoiseModel noise;
    ThresholdTable thresholds;
};

/// CVM statistic of the window around every sample of `mode` against `noise`.
/// A window of length W covers [t - W/2, t - W/2 + W); indices past either
/// end are reflected about the boundary sample edge.
/// Throws DataError when the window is longer than the mode.
[[nodiscard]] std::vector<double> local_statistics(std::span<const double> mode, const StepCdf& noise,
                                                   std::size_t window);

/// Keeps u(t) where the local statistic exceeds lambda and zeroes it otherwise.
[[nodiscard]] std::vector<double> threshold_mode(std::span<const double> mode, const NoiseModel& model,
                                                 double lambda, std::size_t window);

[[nodiscard]] DenoiseResult denoise(const Signal& y, const DenoiseConfig& cfg);

} // namespace vmdcvm
