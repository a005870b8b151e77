#include "vmdcvm/testbench.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "vmdcvm/errors.hpp"

namespace vmdcvm {
namespace {

constexpr std::array<double, 11> kJumpPositions = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                                                   0.44, 0.65, 0.76, 0.78, 0.81};
constexpr std::array<double, 11> kBlockHeights = {4.0, -5.0, 3.0,  -4.0, 5.0, -4.2,
                                                  2.1, 4.3,  -3.1, 2.1,  -4.2};
constexpr std::array<double, 11> kBumpHeights = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                                 2.1, 4.3, 3.1, 5.1, 4.2};
constexpr std::array<double, 11> kBumpWidths = {0.005, 0.005, 0.006, 0.01,  0.01, 0.03,
                                                0.01,  0.01,  0.005, 0.008, 0.005};

constexpr double kTargetStd = 7.0;

double sign(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

double blocks(double t) {
    double v = 0.0;
    for (std::size_t j = 0; j < kJumpPositions.size(); ++j) {
        // Right-continuous unit step: a grid point that lands on a jump already
        // takes the new level, so each jump shows up as one sample difference.
        if (t >= kJumpPositions[j]) v += kBlockHeights[j];
    }
    return v;
}

double bumps(double t) {
    double v = 0.0;
    for (std::size_t j = 0; j < kJumpPositions.size(); ++j) {
        const double r = std::abs((t - kJumpPositions[j]) / kBumpWidths[j]);
        v += kBumpHeights[j] / std::pow(1.0 + r, 4);
    }
    return v;
}

double heavy_sine(double t) {
    return 4.0 * std::sin(4.0 * std::numbers::pi * t) - sign(t - 0.3) - sign(0.72 - t);
}

double doppler(double t) {
    return std::sqrt(t * (1.0 - t)) * std::sin(2.1 * std::numbers::pi / (t + 0.05));
}

std::string lower_alnum(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

} // namespace

std::string_view to_string(TestSignal s) noexcept {
    switch (s) {
    case TestSignal::Blocks: return "Blocks";
    case TestSignal::Bumps: return "Bumps";
    case TestSignal::HeavySine: return "HeavySine";
    case TestSignal::Doppler: return "Doppler";
    }
    return "?";
}

std::optional<TestSignal> parse_test_signal(std::string_view name) {
    const std::string key = lower_alnum(name);
    if (key == "blocks") return TestSignal::Blocks;
    if (key == "bumps") return TestSignal::Bumps;
    if (key == "heavysine") return TestSignal::HeavySine;
    if (key == "doppler") return TestSignal::Doppler;
    return std::nullopt;
}

Signal generate(TestSignal which, std::size_t n) {
    if (n < Signal::kMinLength) {
        throw DataError("test signal length must be at least 8, got " + std::to_string(n));
    }
    double (*shape)(double) = nullptr;
    switch (which) {
    case TestSignal::Blocks: shape = blocks; break;
    case TestSignal::Bumps: shape = bumps; break;
    case TestSignal::HeavySine: shape = heavy_sine; break;
    case TestSignal::Doppler: shape = doppler; break;
    }

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = shape(static_cast<double>(i + 1) / static_cast<double>(n));
    }

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd > 0.0) {
        const double gain = kTargetStd / sd;
        for (double& v : x) v *= gain;
    }
    return Signal(std::move(x));
}

double GaussianSource::operator()() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    constexpr double kScale = 0x1p-53;
    // u1 in (0, 1] keeps the logarithm finite; u2 in [0, 1).
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;
    const double u2 = static_cast<double>(engine_() >> 11) * kScale;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    return r * std::cos(phi);
}

NoisyPair add_noise(const Signal& clean, double input_snr_db, std::uint64_t seed) {
    if (!std::isfinite(input_snr_db)) throw ConfigError("input SNR must be finite");
    const auto x = clean.samples();
    double power = 0.0;
    for (double v : x) power += v * v;
    power /= static_cast<double>(x.size());
    if (power <= 0.0) throw DataError("cannot add noise at a target SNR to an all-zero signal");

    const double sigma = std::sqrt(power * std::pow(10.0, -input_snr_db / 10.0));
    GaussianSource gauss(seed);
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y) v += sigma * gauss();
    return NoisyPair{clean, Signal(std::move(y)), sigma, seed};
}

ScoreReport score(std::span<const double> clean, std::span<const double> estimate) {
    if (clean.size() != estimate.size()) {
        throw DataError("score: length mismatch (" + std::to_string(clean.size()) + " vs " +
                        std::to_string(estimate.size()) + ")");
    }
    if (clean.empty()) throw DataError("score: empty signals");
    double signal_energy = 0.0;
    double error_energy = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double e = clean[i] - estimate[i];
        signal_energy += clean[i] * clean[i];
        error_energy += e * e;
    }
    const double mse = error_energy / static_cast<double>(clean.size());
    const double snr = error_energy == 0.0 ? std::numeric_limits<double>::infinity()
                                           : 10.0 * std::log10(signal_energy / error_energy);
    return ScoreReport{snr, mse};
}

ScoreReport score(const Signal& clean, const Signal& estimate) {
    return score(clean.samples(), estimate.samples());
}

} // namespace vmdcvm
