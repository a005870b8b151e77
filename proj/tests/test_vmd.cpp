#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vmdcvm/errors.hpp"
#include "vmdcvm/testbench.hpp"
#include "vmdcvm/vmd.hpp"

using namespace vmdcvm;

namespace {

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_CASE("decompose: a single tone is found at its spectral peak") {
    const auto x = oracle::cosine(1024, 0.05);
    const double f0 = oracle::dft_peak_freq(x);
    VmdConfig cfg;
    cfg.k_modes = 2;
    const ModeSet m = decompose(Signal(x), cfg);
    REQUIRE(m.count() == 2);
    const bool hit = std::abs(m.center_freqs[0] - f0) <= 0.05 * f0 || std::abs(m.center_freqs[1] - f0) <= 0.05 * f0;
    CHECK(hit);
    CHECK(m.modes[0].size() == 1024);
    CHECK(m.residual.size() == 1024);
}

TEST_CASE("decompose: two tones are separated in ascending frequency order") {
    std::vector<double> x = oracle::cosine(1024, 0.04);
    const std::vector<double> hi = oracle::cosine(1024, 0.20, 0.5);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += hi[i];
    VmdConfig cfg;
    cfg.k_modes = 2;
    const ModeSet m = decompose(Signal(x), cfg);
    CHECK(m.center_freqs[0] == doctest::Approx(0.04).epsilon(0.05));
    CHECK(m.center_freqs[1] == doctest::Approx(0.20).epsilon(0.05));
    CHECK(oracle::dft_peak_freq(m.modes[0]) == doctest::Approx(0.04).epsilon(0.05));
    CHECK(oracle::dft_peak_freq(m.modes[1]) == doctest::Approx(0.20).epsilon(0.05));
}

TEST_CASE("decompose: zero input gives zero modes") {
    const Signal y(std::vector<double>(256, 0.0));
    VmdConfig cfg;
    cfg.k_modes = 4;
    const ModeSet m = decompose(y, cfg);
    for (const auto& mode : m.modes) {
        for (double v : mode) CHECK(v == 0.0);
    }
}

TEST_CASE("decompose: modes plus residual reproduce the input") {
    const Signal y = add_noise(generate(TestSignal::Doppler, 1024), 5.0, 3).noisy;
    VmdConfig cfg;
    cfg.k_modes = 6;
    const ModeSet m = decompose(y, cfg);
    CHECK(m.count() == 6);
    CHECK(m.length() == 1024);
    const Signal r = reconstruct(m);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(r[i] + m.residual[i] == doctest::Approx(y[i]).epsilon(1e-9).scale(1.0));
    }
    for (std::size_t k = 1; k < m.count(); ++k) CHECK(m.center_freqs[k - 1] <= m.center_freqs[k]);
    for (double w : m.center_freqs) {
        CHECK(w >= 0.0);
        CHECK(w <= 0.5);
    }
}

TEST_CASE("decompose: with dual ascent a band-limited input is reconstructed") {
    for (std::size_t n : {1000u, 1024u, 2048u}) {
        CAPTURE(n);
        std::vector<double> x = oracle::cosine(n, 0.04);
        const std::vector<double> hi = oracle::cosine(n, 0.20, 1.0, 0.3);
        for (std::size_t i = 0; i < n; ++i) x[i] += hi[i];
        VmdConfig cfg;
        cfg.k_modes = 2;
        cfg.tau = 0.1;
        const ModeSet m = decompose(Signal(x), cfg);
        CHECK(rel_l2(reconstruct(m).vector(), x) <= 0.05);
    }
}

TEST_CASE("reconstruct: an all-zero mode set gives a zero signal") {
    ModeSet m;
    m.modes.assign(3, std::vector<double>(32, 0.0));
    m.center_freqs = {0.1, 0.2, 0.3};
    m.residual.assign(32, 0.0);
    const Signal r = reconstruct(m);
    for (double v : r.samples()) CHECK(v == 0.0);
}

TEST_CASE("decompose: a time-reversal symmetric input gives symmetric modes") {
    // The mirror extension of an even-symmetric record is itself symmetric,
    // so every mode inherits the symmetry.
    const std::size_t n = 512;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) - static_cast<double>(n - 1) / 2.0;
        x[i] = std::cos(0.07 * t) + 0.5 * std::cos(0.9 * t) + std::exp(-t * t / 800.0);
    }
    VmdConfig cfg;
    cfg.k_modes = 3;
    const ModeSet m = decompose(Signal(x), cfg);
    for (const auto& mode : m.modes) {
        double scale = 0.0;
        for (double v : mode) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(mode[i] - mode[n - 1 - i]) <= 1e-9 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("decompose: deterministic for a given input and configuration") {
    const Signal y = add_noise(generate(TestSignal::Bumps, 512), 0.0, 11).noisy;
    VmdConfig cfg;
    cfg.k_modes = 5;
    const ModeSet a = decompose(y, cfg);
    const ModeSet b = decompose(y, cfg);
    CHECK(a.modes == b.modes);
    CHECK(a.center_freqs == b.center_freqs);
    CHECK(a.iterations_used == b.iterations_used);
}

TEST_CASE("decompose: argument validation") {
    const Signal y(oracle::cosine(16, 0.1));
    VmdConfig cfg;
    cfg.k_modes = 9;
    CHECK_THROWS_AS((void)decompose(y, cfg), DataError);

    VmdConfig bad;
    bad.k_modes = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = VmdConfig{};
    bad.alpha = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = VmdConfig{};
    bad.tol = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = VmdConfig{};
    bad.tau = -0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = VmdConfig{};
    bad.max_iters = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("decompose: an exhausted iteration budget is reported") {
    const Signal y = add_noise(generate(TestSignal::Blocks, 512), 0.0, 2).noisy;
    VmdConfig cfg;
    cfg.k_modes = 6;
    cfg.max_iters = 2;
    cfg.tol = 1e-12;
    const ModeSet m = decompose(y, cfg);
    CHECK_FALSE(m.converged);
    CHECK(m.iterations_used == 2);
}
