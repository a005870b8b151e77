#pragma once

// Empirical distribution functions and the one-sample Cramer-von Mises
// goodness-of-fit statistic.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vmdcvm {

/// Empirical distribution function of a finite sample: E(z) = #{x <= z} / n.
class Edf {
public:
    /// Throws DataError on an empty or non-finite sample.
    explicit Edf(std::span<const double> samples);

    [[nodiscard]] double operator()(double z) const noexcept;
    [[nodiscard]] std::span<const double> sorted_samples() const noexcept { return sorted_; }
    [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

[[nodiscard]] Edf edf_of(std::span<const double> samples);

/// Right-continuous step function on an ascending grid: the value at z is
/// values[i] for the largest grid[i] <= z, and 0 left of grid[0].
class StepCdf {
public:
    /// Throws DataError unless the grid is non-empty and strictly ascending and
    /// the values are nondecreasing within [0, 1].
    StepCdf(std::vector<double> grid, std::vector<double> values);

    [[nodiscard]] double operator()(double z) const noexcept;
    [[nodiscard]] std::span<const double> grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

using CdfFunction = std::function<double(double)>;

struct CvmStatistic {
    double delta;  ///< 1/(12n) + sum_t (E0(z_(t)) - (2t-1)/(2n))^2
    std::size_t n;
};

/// Cramer-von Mises statistic of `data` against a reference CDF. The data is
/// sorted internally, so the result does not depend on sample order.
/// Throws DataError for fewer than 2 samples.
[[nodiscard]] CvmStatistic cvm_distance(std::span<const double> data, const Edf& reference);
[[nodiscard]] CvmStatistic cvm_distance(std::span<const double> data, const StepCdf& reference);
[[nodiscard]] CvmStatistic cvm_distance(std::span<const double> data, const CdfFunction& reference);

enum class GofDecision { CloseFit, NoFit };

/// CloseFit iff delta <= lambda.
[[nodiscard]] GofDecision gof_decide(const CvmStatistic& stat, double lambda) noexcept;

/// Normal CDF via erfc.
[[nodiscard]] double gaussian_cdf(double z, double mean = 0.0, double sigma = 1.0) noexcept;

} // namespace vmdcvm
