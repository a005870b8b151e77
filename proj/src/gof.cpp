#include "vmdcvm/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vmdcvm/errors.hpp"

namespace vmdcvm {
namespace {

template <typename Cdf>
CvmStatistic cvm_impl(std::span<const double> data, const Cdf& reference) {
    if (data.size() < 2) {
        throw DataError("CVM statistic needs at least 2 samples, got " + std::to_string(data.size()));
    }
    if (!std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); })) {
        throw DataError("CVM statistic of a non-finite sample");
    }
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double delta = 1.0 / (12.0 * n);
    for (std::size_t t = 0; t < sorted.size(); ++t) {
        const double expected = (2.0 * static_cast<double>(t) + 1.0) / (2.0 * n);
        const double d = reference(sorted[t]) - expected;
        delta += d * d;
    }
    return CvmStatistic{delta, sorted.size()};
}

} // namespace

Edf::Edf(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
    if (sorted_.empty()) throw DataError("EDF of an empty sample");
    if (!std::all_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isfinite(v); })) {
        throw DataError("EDF sample contains a non-finite value");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double Edf::operator()(double z) const noexcept {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), z) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

Edf edf_of(std::span<const double> samples) { return Edf(samples); }

StepCdf::StepCdf(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.empty() || grid_.size() != values_.size()) {
        throw DataError("step CDF needs matching, non-empty grid and value arrays");
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!std::isfinite(grid_[i]) || !(values_[i] >= 0.0 && values_[i] <= 1.0)) {
            throw DataError("step CDF entry " + std::to_string(i) + " is out of range");
        }
        if (i > 0 && !(grid_[i] > grid_[i - 1])) {
            throw DataError("step CDF grid is not strictly ascending at entry " + std::to_string(i));
        }
        if (i > 0 && values_[i] < values_[i - 1]) {
            throw DataError("step CDF values decrease at entry " + std::to_string(i));
        }
    }
}

double StepCdf::operator()(double z) const noexcept {
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), z);
    if (it == grid_.begin()) return 0.0;
    return values_[static_cast<std::size_t>(it - grid_.begin()) - 1];
}

CvmStatistic cvm_distance(std::span<const double> data, const Edf& reference) {
    return cvm_impl(data, reference);
}

CvmStatistic cvm_distance(std::span<const double> data, const StepCdf& reference) {
    return cvm_impl(data, reference);
}

CvmStatistic cvm_distance(std::span<const double> data, const CdfFunction& reference) {
    return cvm_impl(data, reference);
}

GofDecision gof_decide(const CvmStatistic& stat, double lambda) noexcept {
    return stat.delta <= lambda ? GofDecision::CloseFit : GofDecision::NoFit;
}

double gaussian_cdf(double z, double mean, double sigma) noexcept {
    return 0.5 * std::erfc(-(z - mean) / (sigma * std::numbers::sqrt2));
}

} // namespace vmdcvm
