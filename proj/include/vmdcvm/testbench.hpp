#pragma once

// Benchmark signal generators, seeded noise injection and SNR/MSE scoring.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "vmdcvm/signal.hpp"

namespace vmdcvm {

enum class TestSignal { Blocks, Bumps, HeavySine, Doppler };

[[nodiscard]] std::string_view to_string(TestSignal s) noexcept;

/// Case-insensitive; accepts "HeavySine", "heavy_sine" and "heavy-sine".
[[nodiscard]] std::optional<TestSignal> parse_test_signal(std::string_view name);

/// Donoho-Johnstone test signal sampled on t = (1..n)/n, scaled to a sample
/// standard deviation of 7. Throws DataError for n < 8.
[[nodiscard]] Signal generate(TestSignal which, std::size_t n);

/// Standard normal variates from mt19937_64 through the Box-Muller transform.
/// Both stages are fully specified, so a seed reproduces the same stream on
/// every conforming toolchain (unlike std::normal_distribution).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double operator()();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

struct NoisyPair {
    Signal clean;
    Signal noisy;
    double noise_sigma;
    std::uint64_t seed;
};

/// Adds white Gaussian noise with variance (sum(x^2)/N) * 10^(-snr/10).
/// Throws DataError for an all-zero clean signal.
[[nodiscard]] NoisyPair add_noise(const Signal& clean, double input_snr_db, std::uint64_t seed);

struct ScoreReport {
    double snr_db; ///< +infinity when the estimate is exact
    double mse;
};

/// SNR = 10 log10(sum x^2 / sum (x - xhat)^2), MSE = sum (x - xhat)^2 / N.
[[nodiscard]] ScoreReport score(std::span<const double> clean, std::span<const double> estimate);
[[nodiscard]] ScoreReport score(const Signal& clean, const Signal& estimate);

} // namespace vmdcvm
