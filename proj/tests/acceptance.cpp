// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and never adjusted per run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vmdcvm/denoiser.hpp"
#include "vmdcvm/io.hpp"
#include "vmdcvm/runner.hpp"
#include "vmdcvm/testbench.hpp"

using namespace vmdcvm;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> white(std::size_t n, std::uint64_t seed) {
    GaussianSource g(seed);
    std::vector<double> v(n);
    for (double& x : v) x = g();
    return v;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. CVM statistic against the brute-force oracle, 1000 random pairs.
Verdict cvm_oracle() {
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> len(9, 64);
    std::uniform_int_distribution<int> kind(0, 2);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto n = static_cast<std::size_t>(len(gen));
        std::vector<double> data = white(n, 10000 + rep);
        for (double& x : data) x = 1.5 * x + 0.2;
        double got = 0.0;
        double want = 0.0;
        switch (kind(gen)) {
        case 0: {
            const auto ref = white(static_cast<std::size_t>(len(gen)), 20000 + rep);
            got = cvm_distance(data, Edf(ref)).delta;
            want = oracle::cvm_bruteforce(data, [&](double z) { return oracle::count_le(ref, z); });
            break;
        }
        case 1: {
            std::vector<double> grid;
            std::vector<double> vals;
            for (int i = 0; i <= 40; ++i) {
                grid.push_back(-4.0 + 0.2 * i);
                vals.push_back(oracle::phi(grid.back()));
            }
            const StepCdf ref(grid, vals);
            got = cvm_distance(data, ref).delta;
            want = oracle::cvm_bruteforce(data, [&](double z) {
                double v = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (grid[i] <= z) v = vals[i];
                }
                return v;
            });
            break;
        }
        default: {
            const CdfFunction ref = [](double z) { return oracle::phi(z); };
            got = cvm_distance(data, ref).delta;
            want = oracle::cvm_bruteforce(data, ref);
            break;
        }
        }
        worst = std::max(worst, std::abs(got - want));
    }
    return {worst <= 1e-12, fmt("max |diff| = %.3g over 1000 pairs (tol 1e-12)", worst)};
}

// 2. Pooled noise CDF from Gaussian modes against the analytic CDF.
Verdict noise_cdf_gaussian() {
    const std::vector<std::vector<double>> modes = {white(1 << 14, 1), white(1 << 14, 2), white(1 << 14, 3)};
    const NoiseModel m = estimate_noise_cdf(modes, 32);
    double sup = 0.0;
    for (std::size_t i = 0; i < m.cdf.grid().size(); ++i) {
        sup = std::max(sup, std::abs(m.cdf.values()[i] - oracle::phi(m.cdf.grid()[i])));
    }
    return {sup <= 0.02, fmt("sup-norm = %.4f on %zu grid points (tol 0.02)", sup, m.cdf.grid().size())};
}

// 3. Realized false-alarm rate of held-out noise windows. Both sets are
// large enough (8192 calibration, 4096 held-out windows) that the sampling
// error of the two exceedance fractions stays well inside the tolerance.
Verdict calibration_conservative() {
    const std::size_t w = 32;
    std::vector<std::vector<double>> train;
    for (std::uint64_t s = 100; s < 116; ++s) train.push_back(white(1 << 14, s));
    const NoiseModel m = estimate_noise_cdf(train, w);
    const ThresholdTable t = calibrate_thresholds(train, m, w);
    std::vector<double> held_stats;
    for (std::uint64_t s = 200; s < 208; ++s) {
        const auto mode = white(1 << 14, s);
        for (std::size_t j = 0; j + w <= mode.size(); j += w) {
            held_stats.push_back(cvm_distance(std::span<const double>(mode.data() + j, w), m.cdf).delta);
        }
    }
    bool ok = true;
    std::string detail = fmt("%zu held-out windows;", held_stats.size());
    for (double target : {0.5, std::exp(-1.0), 0.1, 0.01}) {
        const double lambda = lookup_threshold(t, target);
        std::size_t above = 0;
        for (double d : held_stats) above += (d > lambda) ? 1 : 0;
        const double realized = static_cast<double>(above) / static_cast<double>(held_stats.size());
        ok = ok && realized <= target + 0.03;
        detail += fmt(" %.3f->%.3f", target, realized);
    }
    ok = ok && held_stats.size() >= 500;
    return {ok, detail + " (target -> realized, tol +0.03)"};
}

// 4. Two-tone VMD recovery.
Verdict two_tone() {
    auto x = oracle::cosine(4096, 0.04);
    const auto hi = oracle::cosine(4096, 0.20);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += hi[i];
    const Signal y(x);
    VmdConfig cfg;
    cfg.k_modes = 2;
    cfg.alpha = 2000;
    cfg.tau = 0.1;
    const ModeSet m = decompose(y, cfg);
    const double e0 = std::abs(m.center_freqs[0] - 0.04) / 0.04;
    const double e1 = std::abs(m.center_freqs[1] - 0.20) / 0.20;
    const Signal r = reconstruct(m);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (r[i] - x[i]) * (r[i] - x[i]);
        den += x[i] * x[i];
    }
    const double rel = std::sqrt(num / den);
    return {e0 <= 0.05 && e1 <= 0.05 && rel <= 0.05,
            fmt("omega = (%.5f, %.5f), rel. errors (%.4f, %.4f), recon rel. L2 = %.4f (tol 0.05)",
                m.center_freqs[0], m.center_freqs[1], e0, e1, rel)};
}

// 5. Partition of the hand-evaluated distance curve.
Verdict partition_oracle() {
    const ModePartition p = partition(std::vector<double>{10, 2, 1.9, 1.8, 0.2, 0.19});
    return {p.k1 == 1 && p.k2 == 4, fmt("(k1, k2) = (%zu, %zu), expected (1, 4)", p.k1, p.k2)};
}

// 6. Benchmark cells with the default pipeline, J = 20.
Verdict benchmark_floors() {
    const auto dir = oracle::scratch_dir("acceptance_bench");
    struct Cell {
        const char* signal;
        double snr;
        double floor;
    };
    const Cell cells[] = {{"bumps", 10.0, 18.0}, {"blocks", -5.0, 8.0}, {"blocks", 10.0, 16.0}};
    bool ok = true;
    std::string detail;
    for (const Cell& c : cells) {
        RunConfig cfg;
        cfg.subcommand = Subcommand::Benchmark;
        cfg.output_dir = dir / (std::string(c.signal) + fmt("_%g", c.snr));
        cfg.sweep = SweepConfig{{c.signal}, {c.snr}, {4096}, 20};
        const auto rows = run_benchmark(cfg);
        const double mean = rows.at(0).mean_out_snr_db;
        const bool cell_ok = mean >= c.floor;
        ok = ok && cell_ok;
        detail += fmt("%s%s@%gdB: %.2f dB (sd %.2f, floor %g)%s", detail.empty() ? "" : "; ", c.signal, c.snr,
                      mean, rows.at(0).std_out_snr_db, c.floor, cell_ok ? "" : " BELOW");
    }
    return {ok, detail};
}

// 7. Halving every target never raises a kept fraction.
Verdict monotone_aggressiveness() {
    const Signal clean = generate(TestSignal::Bumps, 4096);
    std::size_t violations = 0;
    std::size_t compared = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Signal y = add_noise(clean, 10.0, seed).noisy;
        DenoiseConfig base;
        std::vector<double> targets;
        for (std::size_t k = 1; k <= base.vmd.k_modes; ++k) targets.push_back(pfa_schedule(k));
        base.pfa_override = targets;
        DenoiseConfig half = base;
        for (double& p : *half.pfa_override) p *= 0.5;
        const DenoiseReport a = denoise(y, base).report;
        const DenoiseReport b = denoise(y, half).report;
        for (std::size_t k = 0; k < a.per_mode_kept_fraction.size(); ++k) {
            ++compared;
            if (b.per_mode_kept_fraction[k] > a.per_mode_kept_fraction[k]) ++violations;
        }
    }
    return {violations == 0, fmt("%zu violations across %zu mode comparisons on 10 instances", violations, compared)};
}

// 8. Replaying a benchmark manifest reproduces results.csv byte for byte.
Verdict determinism() {
    const auto dir = oracle::scratch_dir("acceptance_determinism");
    RunConfig cfg;
    cfg.subcommand = Subcommand::Benchmark;
    cfg.seed = 1234;
    cfg.output_dir = dir / "first";
    cfg.sweep = SweepConfig{{"bumps", "heavysine"}, {0.0, 10.0}, {1024, 2048}, 3};
    (void)run_benchmark(cfg);
    RunConfig replay;
    apply_json(read_json(dir / "first" / "manifest.json"), replay);
    replay.output_dir = dir / "second";
    (void)run_benchmark(replay);
    const std::string a = slurp(dir / "first" / "results.csv");
    const std::string b = slurp(dir / "second" / "results.csv");
    return {!a.empty() && a == b, fmt("results.csv %zu bytes, identical = %s", a.size(), a == b ? "yes" : "no")};
}

// 9. Pure white noise is rejected.
Verdict pure_noise() {
    std::size_t good = 0;
    std::string fractions;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Signal y(white(4096, seed));
        const DenoiseResult r = denoise(y, DenoiseConfig{});
        const double frac = oracle::energy(r.output.vector()) / oracle::energy(y.vector());
        good += (frac <= 0.10) ? 1 : 0;
        fractions += fmt("%s%.3f", fractions.empty() ? "" : " ", frac);
    }
    return {good >= 18, fmt("%zu/20 seeds retain <= 10%% energy (need 18); retained: %s", good, fractions.c_str())};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s; // 0: no runtime bound
        std::function<Verdict()> run;
    };
    const Criterion criteria[] = {
        {1, "CVM oracle equivalence", 5.0, cvm_oracle},
        {2, "noise CDF vs Gaussian", 2.0, noise_cdf_gaussian},
        {3, "calibration conservativeness", 5.0, calibration_conservative},
        {4, "VMD two-tone recovery", 10.0, two_tone},
        {5, "partition hand oracle", 0.0, partition_oracle},
        {6, "benchmark SNR floors (J=20)", 300.0, benchmark_floors},
        {7, "monotone aggressiveness", 0.0, monotone_aggressiveness},
        {8, "benchmark determinism", 0.0, determinism},
        {9, "pure-noise rejection", 0.0, pure_noise},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt("%.2f s", secs);
        if (c.budget_s > 0.0) {
            timing += fmt(" (budget %g s)", c.budget_s);
            if (secs >= c.budget_s) {
                v.pass = false;
                timing += " OVER BUDGET";
            }
        }
        if (!v.pass) ++failed;
        std::printf("[%s] %d %s: %s [%s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
