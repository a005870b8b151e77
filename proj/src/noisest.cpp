#include "vmdcvm/noisest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vmdcvm/errors.hpp"

namespace vmdcvm {
namespace {

void check_modes(std::span<const std::vector<double>> modes, std::size_t window) {
    if (modes.empty()) {
        throw DataError("noise model needs at least one rejected mode; the mode partition always "
                        "leaves one, so pass the partition's rejected modes");
    }
    if (window < 2) throw ConfigError("noise window must hold at least 2 samples");
    const std::size_t n = modes.front().size();
    for (const auto& m : modes) {
        if (m.size() != n) throw DataError("rejected modes differ in length");
    }
    if (n < window) {
        throw DataError("rejected modes (" + std::to_string(n) + " samples) are shorter than the " +
                        std::to_string(window) + "-sample window");
    }
}

} // namespace

NoiseModel estimate_noise_cdf(std::span<const std::vector<double>> rejected_modes, std::size_t window,
                              std::size_t grid_size) {
    check_modes(rejected_modes, window);
    if (grid_size < 2) throw ConfigError("noise CDF grid needs at least 2 points");

    const std::size_t per_mode = rejected_modes.front().size() / window;
    const std::size_t segments = per_mode * rejected_modes.size();
    if (segments < kMinNoiseSegments) {
        throw DataError("only " + std::to_string(segments) + " noise segments of length " +
                        std::to_string(window) + "; at least " + std::to_string(kMinNoiseSegments) +
                        " are needed");
    }

    double lo = rejected_modes.front().front();
    double hi = lo;
    std::vector<double> pooled;
    pooled.reserve(segments * window);
    for (const auto& mode : rejected_modes) {
        for (double v : mode) {
            if (!std::isfinite(v)) throw DataError("rejected mode contains a non-finite sample");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        pooled.insert(pooled.end(), mode.begin(),
                      mode.begin() + static_cast<std::ptrdiff_t>(per_mode * window));
    }
    std::sort(pooled.begin(), pooled.end());

    // Every segment has the same size, so the mean of the segment EDFs is the
    // EDF of the pooled segment samples; counting the pool gives it exactly.
    std::vector<double> grid;
    std::vector<double> values;
    if (hi > lo) {
        grid.resize(grid_size);
        const double step = (hi - lo) / static_cast<double>(grid_size - 1);
        for (std::size_t i = 0; i < grid_size; ++i) grid[i] = lo + step * static_cast<double>(i);
        grid.back() = hi;
    } else {
        grid.push_back(lo);
    }
    values.reserve(grid.size());
    const auto total = static_cast<double>(pooled.size());
    for (double z : grid) {
        const auto count = std::upper_bound(pooled.begin(), pooled.end(), z) - pooled.begin();
        values.push_back(static_cast<double>(count) / total);
    }
    return NoiseModel{StepCdf(std::move(grid), std::move(values)), window, segments};
}

ThresholdTable calibrate_thresholds(std::span<const std::vector<double>> rejected_modes,
                                    const NoiseModel& model, std::size_t window) {
    if (window != model.segment_len) {
        throw DataError("calibration window " + std::to_string(window) +
                        " differs from the noise model's segment length " +
                        std::to_string(model.segment_len));
    }
    check_modes(rejected_modes, window);

    std::vector<double> stats;
    for (const auto& mode : rejected_modes) {
        const std::size_t count = mode.size() / window;
        for (std::size_t j = 0; j < count; ++j) {
            const std::span<const double> seg(mode.data() + j * window, window);
            stats.push_back(cvm_distance(seg, model.cdf).delta);
        }
    }
    std::sort(stats.begin(), stats.end());

    ThresholdTable table;
    table.lambdas.push_back(0.0);
    for (double s : stats) {
        if (s != table.lambdas.back()) table.lambdas.push_back(s);
    }
    const auto total = static_cast<double>(stats.size());
    table.pfa.reserve(table.lambdas.size());
    for (double lambda : table.lambdas) {
        const auto above = stats.end() - std::upper_bound(stats.begin(), stats.end(), lambda);
        table.pfa.push_back(static_cast<double>(above) / total);
    }
    return table;
}

double lookup_threshold(const ThresholdTable& table, double target_pfa) {
    if (table.lambdas.empty()) throw DataError("empty threshold table");
    const double target = std::clamp(target_pfa, 0.0, 1.0);
    // pfa is nonincreasing: find the first entry at or below the target.
    const auto it = std::partition_point(table.pfa.begin(), table.pfa.end(),
                                         [target](double p) { return p > target; });
    if (it == table.pfa.end()) return table.lambdas.back();
    return table.lambdas[static_cast<std::size_t>(it - table.pfa.begin())];
}

double pfa_schedule(std::size_t k) {
    if (k < 1) throw ConfigError("false-alarm schedule is indexed from mode 1");
    return std::exp(-static_cast<double>(k - 1));
}

} // namespace vmdcvm
