#include "vmdcvm/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vmdcvm/errors.hpp"
#include "vmdcvm/gof.hpp"

namespace vmdcvm {
namespace {

// Half-sample symmetric reflection into [0, n).
std::size_t reflect(std::ptrdiff_t i, std::ptrdiff_t n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return static_cast<std::size_t>(i);
}

} // namespace

void DenoiseConfig::validate() const {
    vmd.validate();
    if (vmd.k_modes < 3) throw ConfigError("denoising needs at least 3 VMD modes");
    if (window < 9) throw ConfigError("denoising window must be at least 9 samples");
    if (grid_size < 2) throw ConfigError("noise CDF grid needs at least 2 points");
    if (pfa_override) {
        if (pfa_override->size() != vmd.k_modes) {
            throw ConfigError("false-alarm override needs one value per mode (" +
                              std::to_string(vmd.k_modes) + "), got " +
                              std::to_string(pfa_override->size()));
        }
        for (double p : *pfa_override) {
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("false-alarm targets must lie in [0, 1]");
        }
    }
}

std::vector<double> local_statistics(std::span<const double> mode, const StepCdf& noise,
                                     std::size_t window) {
    if (window > mode.size()) {
        throw DataError("window of " + std::to_string(window) + " samples is longer than the " +
                        std::to_string(mode.size()) + "-sample mode");
    }
    const auto n = static_cast<std::ptrdiff_t>(mode.size());
    const auto before = static_cast<std::ptrdiff_t>(window / 2);
    std::vector<double> stats(mode.size());
    std::vector<double> buf(window);
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < window; ++i) {
            buf[i] = mode[reflect(t - before + static_cast<std::ptrdiff_t>(i), n)];
        }
        stats[static_cast<std::size_t>(t)] = cvm_distance(buf, noise).delta;
    }
    return stats;
}

std::vector<double> threshold_mode(std::span<const double> mode, const NoiseModel& model,
                                   double lambda, std::size_t window) {
    const std::vector<double> stats = local_statistics(mode, model.cdf, window);
    std::vector<double> out(mode.size(), 0.0);
    for (std::size_t t = 0; t < mode.size(); ++t) {
        if (stats[t] > lambda) out[t] = mode[t];
    }
    return out;
}

DenoiseResult denoise(const Signal& y, const DenoiseConfig& cfg) {
    cfg.validate();
    if (y.size() < 8 * cfg.window) {
        throw DataError("signal of " + std::to_string(y.size()) + " samples is too short for a " +
                        std::to_string(cfg.window) + "-sample window (needs " +
                        std::to_string(8 * cfg.window) + ")");
    }

    ModeSet modes = decompose(y, cfg.vmd);
    for (const auto& m : modes.modes) {
        if (!std::all_of(m.begin(), m.end(), [](double v) { return std::isfinite(v); })) {
            throw NumericalError("VMD produced a non-finite mode");
        }
    }

    ModePartition part = partition(mode_distances(y, modes));
    const std::span<const std::vector<double>> rejected(modes.modes.data() + part.k2,
                                                        modes.count() - part.k2);
    NoiseModel noise = estimate_noise_cdf(rejected, cfg.window, cfg.grid_size);
    ThresholdTable table = calibrate_thresholds(rejected, noise, cfg.window);

    DenoiseReport report;
    report.center_freqs = modes.center_freqs;
    report.vmd_iterations = modes.iterations_used;
    report.vmd_converged = modes.converged;
    report.segment_len = noise.segment_len;
    report.segments_used = noise.segments_used;

    std::vector<double> estimate(y.size(), 0.0);
    for (std::size_t k = 1; k <= part.k2; ++k) {
        const auto& mode = modes.modes[k - 1];
        const double target = cfg.pfa_override ? (*cfg.pfa_override)[k - 1] : pfa_schedule(k);
        const double lambda = lookup_threshold(table, target);
        const std::vector<double> stats = local_statistics(mode, noise.cdf, cfg.window);

        std::vector<std::uint8_t> mask(mode.size(), 0);
        std::size_t kept = 0;
        for (std::size_t t = 0; t < mode.size(); ++t) {
            if (stats[t] > lambda) {
                mask[t] = 1;
                ++kept;
                estimate[t] += mode[t];
            }
        }
        report.per_mode_lambda.push_back(lambda);
        report.per_mode_kept_fraction.push_back(static_cast<double>(kept) /
                                                static_cast<double>(mode.size()));
        report.masks.push_back(std::move(mask));
    }
    report.partition = std::move(part);

    return DenoiseResult{Signal(std::move(estimate)), std::move(report), std::move(modes),
                         std::move(noise), std::move(table)};
}

} // namespace vmdcvm
