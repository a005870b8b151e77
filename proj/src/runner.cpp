#include "vmdcvm/runner.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vmdcvm/errors.hpp"
#include "vmdcvm/io.hpp"
#include "vmdcvm/modesel.hpp"
#include "vmdcvm/noisest.hpp"

namespace vmdcvm {
namespace {

using nlohmann::json;

std::string_view to_string(OmegaInit init) {
    return init == OmegaInit::Zero ? "zero" : "uniform";
}

OmegaInit parse_init(const std::string& s) {
    if (s == "zero") return OmegaInit::Zero;
    if (s == "uniform") return OmegaInit::UniformSpread;
    throw ConfigError("unknown omega initialization '" + s + "' (expected zero or uniform)");
}

template <typename T>
void take(const json& j, const char* key, T& out) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

template <typename T>
void take(const json& j, const char* key, std::optional<T>& out) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    T v{};
    take(j, key, v);
    out = std::move(v);
}

// A benchmark signal: a named generator, or a clean-signal CSV on disk.
struct SignalSource {
    std::string label;
    std::optional<TestSignal> generator;
    std::optional<Signal> recorded;
};

SignalSource resolve_signal(const std::string& name) {
    if (auto gen = parse_test_signal(name)) return SignalSource{std::string(to_string(*gen)), gen, {}};
    std::error_code ec;
    if (std::filesystem::is_regular_file(name, ec)) {
        return SignalSource{name, std::nullopt, read_signal_csv(name)};
    }
    throw ConfigError("unknown signal name '" + name +
                      "' (expected Blocks, Bumps, HeavySine, Doppler or a CSV path)");
}

// Calls fn(i) for i in [0, count) on up to `threads` workers; rethrows the
// first failure.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

void write_distances_csv(const std::filesystem::path& path, const ModePartition& p,
                         const std::vector<double>& center_freqs) {
    CsvTable t{{"k", "center_freq", "distance"}, {}};
    for (std::size_t k = 0; k < p.distances.size(); ++k) {
        t.rows.push_back({std::to_string(k + 1), format_number(center_freqs[k]),
                          format_number(p.distances[k])});
    }
    write_csv_table(path, t);
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
}

} // namespace

std::string_view to_string(Subcommand s) noexcept {
    switch (s) {
    case Subcommand::Decompose: return "decompose";
    case Subcommand::Denoise: return "denoise";
    case Subcommand::Calibrate: return "calibrate";
    case Subcommand::Benchmark: return "benchmark";
    }
    return "?";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
    for (auto s : {Subcommand::Decompose, Subcommand::Denoise, Subcommand::Calibrate,
                   Subcommand::Benchmark}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

void RunConfig::validate() const {
    // Decomposition alone has no denoiser window or schedule to check.
    if (subcommand == Subcommand::Decompose) {
        denoise.vmd.validate();
    } else {
        denoise.validate();
    }
    if (subcommand == Subcommand::Benchmark) {
        if (!sweep) throw ConfigError("benchmark needs a sweep (signals, SNRs, lengths)");
        if (sweep->signals.empty()) throw ConfigError("benchmark needs at least one signal");
        if (sweep->snrs_db.empty()) throw ConfigError("benchmark needs at least one input SNR");
        if (sweep->realizations < 1) throw ConfigError("realizations must be positive");
        for (double s : sweep->snrs_db) {
            if (!std::isfinite(s)) throw ConfigError("input SNR must be finite");
        }
        const bool any_named = std::any_of(sweep->signals.begin(), sweep->signals.end(),
                                           [](const std::string& s) { return parse_test_signal(s).has_value(); });
        if (any_named && sweep->lengths.empty()) {
            throw ConfigError("benchmark needs at least one signal length");
        }
        return;
    }
    if (input_path.has_value() == signal.has_value()) {
        throw ConfigError(std::string(to_string(subcommand)) +
                          " needs exactly one of --input or --signal");
    }
    if (signal && !parse_test_signal(*signal)) {
        throw ConfigError("unknown signal name '" + *signal + "'");
    }
    if (input_path && snr_db) throw ConfigError("--snr-db only applies to synthetic --signal input");
}

json to_json(const RunConfig& cfg) {
    json j{
        {"subcommand", to_string(cfg.subcommand)},
        {"n", cfg.n},
        {"out_dir", cfg.output_dir.string()},
        {"seed", cfg.seed},
        {"k_modes", cfg.denoise.vmd.k_modes},
        {"alpha", cfg.denoise.vmd.alpha},
        {"tau", cfg.denoise.vmd.tau},
        {"tol", cfg.denoise.vmd.tol},
        {"max_iters", cfg.denoise.vmd.max_iters},
        {"init", to_string(cfg.denoise.vmd.init)},
        {"window", cfg.denoise.window},
        {"grid_size", cfg.denoise.grid_size},
        {"threads", cfg.threads},
    };
    if (cfg.input_path) j["input"] = *cfg.input_path;
    if (cfg.signal) j["signal"] = *cfg.signal;
    if (cfg.snr_db) j["snr_db"] = *cfg.snr_db;
    if (cfg.denoise.pfa_override) j["pfa_override"] = *cfg.denoise.pfa_override;
    if (cfg.sweep) {
        j["signals"] = cfg.sweep->signals;
        j["snrs_db"] = cfg.sweep->snrs_db;
        j["lengths"] = cfg.sweep->lengths;
        j["realizations"] = cfg.sweep->realizations;
    }
    return j;
}

void apply_json(const json& in, RunConfig& cfg) {
    const json& j = (in.contains("config") && in.at("config").is_object()) ? in.at("config") : in;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    if (j.contains("subcommand")) {
        std::string name;
        take(j, "subcommand", name);
        auto s = parse_subcommand(name);
        if (!s) throw ConfigError("unknown subcommand '" + name + "' in config");
        cfg.subcommand = *s;
    }
    take(j, "input", cfg.input_path);
    take(j, "signal", cfg.signal);
    take(j, "n", cfg.n);
    take(j, "snr_db", cfg.snr_db);
    if (j.contains("out_dir")) {
        std::string dir;
        take(j, "out_dir", dir);
        cfg.output_dir = dir;
    }
    take(j, "seed", cfg.seed);
    take(j, "threads", cfg.threads);

    auto& vmd = cfg.denoise.vmd;
    take(j, "k_modes", vmd.k_modes);
    take(j, "alpha", vmd.alpha);
    take(j, "tau", vmd.tau);
    take(j, "tol", vmd.tol);
    take(j, "max_iters", vmd.max_iters);
    if (j.contains("init")) {
        std::string init;
        take(j, "init", init);
        vmd.init = parse_init(init);
    }
    take(j, "window", cfg.denoise.window);
    take(j, "grid_size", cfg.denoise.grid_size);
    take(j, "pfa_override", cfg.denoise.pfa_override);

    if (j.contains("signals") || j.contains("snrs_db") || j.contains("lengths") ||
        j.contains("realizations")) {
        SweepConfig sweep = cfg.sweep.value_or(SweepConfig{});
        take(j, "signals", sweep.signals);
        take(j, "snrs_db", sweep.snrs_db);
        take(j, "lengths", sweep.lengths);
        take(j, "realizations", sweep.realizations);
        cfg.sweep = std::move(sweep);
    }
}

std::vector<BenchmarkRow> run_benchmark(const RunConfig& cfg) {
    cfg.validate();
    const SweepConfig& sweep = *cfg.sweep;

    struct Cell {
        std::size_t source;
        Signal clean;
        double snr_db;
    };
    std::vector<SignalSource> sources;
    for (const auto& name : sweep.signals) sources.push_back(resolve_signal(name));

    std::vector<Cell> cells;
    for (std::size_t s = 0; s < sources.size(); ++s) {
        std::vector<Signal> cleans;
        if (sources[s].generator) {
            for (std::size_t n : sweep.lengths) cleans.push_back(generate(*sources[s].generator, n));
        } else {
            cleans.push_back(*sources[s].recorded);
        }
        for (const auto& clean : cleans) {
            for (double snr : sweep.snrs_db) cells.push_back(Cell{s, clean, snr});
        }
    }

    const std::size_t reps = sweep.realizations;
    std::vector<ScoreReport> scores(cells.size() * reps, ScoreReport{0.0, 0.0});
    parallel_for(scores.size(), cfg.threads, [&](std::size_t task) {
        const Cell& cell = cells[task / reps];
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(task % reps);
        const NoisyPair pair = add_noise(cell.clean, cell.snr_db, seed);
        const DenoiseResult result = denoise(pair.noisy, cfg.denoise);
        scores[task] = score(pair.clean, result.output);
    });

    std::vector<BenchmarkRow> rows;
    json manifest_cells = json::array();
    for (std::size_t c = 0; c < cells.size(); ++c) {
        double sum_snr = 0.0;
        double sum_mse = 0.0;
        for (std::size_t j = 0; j < reps; ++j) {
            sum_snr += scores[c * reps + j].snr_db;
            sum_mse += scores[c * reps + j].mse;
        }
        const double mean = sum_snr / static_cast<double>(reps);
        double ss = 0.0;
        for (std::size_t j = 0; j < reps; ++j) {
            const double d = scores[c * reps + j].snr_db - mean;
            ss += d * d;
        }
        const double sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
        rows.push_back(BenchmarkRow{sources[cells[c].source].label, cells[c].clean.size(),
                                    cells[c].snr_db, mean, sd, sum_mse / static_cast<double>(reps)});

        json seeds = json::array();
        for (std::size_t j = 0; j < reps; ++j) seeds.push_back(cfg.seed + j);
        manifest_cells.push_back({{"signal", rows.back().signal},
                                  {"n", rows.back().n},
                                  {"input_snr_db", rows.back().input_snr_db},
                                  {"seeds", std::move(seeds)}});
    }

    ensure_dir(cfg.output_dir);
    CsvTable table{{"signal", "n", "input_snr_db", "mean_out_snr_db", "std_out_snr_db", "mean_mse"}, {}};
    for (const auto& r : rows) {
        table.rows.push_back({r.signal, std::to_string(r.n), format_number(r.input_snr_db),
                              format_number(r.mean_out_snr_db), format_number(r.std_out_snr_db),
                              format_number(r.mean_mse)});
    }
    write_csv_table(cfg.output_dir / "results.csv", table);

    const json manifest{
        {"tool", "vmdcvm"},
        {"version", kToolVersion},
        {"compiler", __VERSION__},
        {"rng", kRngName},
        {"config", to_json(cfg)},
        {"cells", std::move(manifest_cells)},
        {"results", "results.csv"},
    };
    write_json(cfg.output_dir / "manifest.json", manifest);
    return rows;
}

LoadedInput load_input(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.input_path) return LoadedInput{read_signal_csv(*cfg.input_path), std::nullopt};
    const Signal clean = generate(*parse_test_signal(*cfg.signal), cfg.n);
    if (!cfg.snr_db) return LoadedInput{clean, clean};
    NoisyPair pair = add_noise(clean, *cfg.snr_db, cfg.seed);
    return LoadedInput{std::move(pair.noisy), std::move(pair.clean)};
}

DenoiseResult run_denoise(const RunConfig& cfg) {
    const LoadedInput input = load_input(cfg);
    DenoiseResult result = denoise(input.noisy, cfg.denoise);

    ensure_dir(cfg.output_dir);
    write_signal_csv(cfg.output_dir / "denoised.csv", result.output.samples());
    write_distances_csv(cfg.output_dir / "distances.csv", result.report.partition,
                        result.report.center_freqs);
    write_threshold_csv(cfg.output_dir / "thresholds.csv", result.thresholds);
    write_step_cdf_csv(cfg.output_dir / "noise_cdf.csv", result.noise.cdf);

    json report = to_json(result.report);
    report["config"] = to_json(cfg);
    if (input.clean) {
        write_signal_csv(cfg.output_dir / "clean.csv", input.clean->samples());
        write_signal_csv(cfg.output_dir / "noisy.csv", input.noisy.samples());
        const ScoreReport in_score = score(*input.clean, input.noisy);
        const ScoreReport out_score = score(*input.clean, result.output);
        // JSON has no infinity; an exact estimate reports null.
        auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
        report["score"] = {{"input_snr_db", finite_or_null(in_score.snr_db)},
                           {"output_snr_db", finite_or_null(out_score.snr_db)},
                           {"output_mse", out_score.mse}};
    }
    write_json(cfg.output_dir / "report.json", report);
    return result;
}

ModeSet run_decompose(const RunConfig& cfg) {
    const LoadedInput input = load_input(cfg);
    ModeSet modes = decompose(input.noisy, cfg.denoise.vmd);
    ensure_dir(cfg.output_dir);
    write_modes_csv(cfg.output_dir / "modes.csv", modes);
    write_json(cfg.output_dir / "decomposition.json",
               json{{"center_freqs", modes.center_freqs},
                    {"iterations", modes.iterations_used},
                    {"converged", modes.converged},
                    {"config", to_json(cfg)}});
    return modes;
}

ThresholdTable run_calibrate(const RunConfig& cfg) {
    const LoadedInput input = load_input(cfg);
    cfg.denoise.validate();
    const ModeSet modes = decompose(input.noisy, cfg.denoise.vmd);
    const ModePartition part = partition(mode_distances(input.noisy, modes));
    const std::span<const std::vector<double>> rejected(modes.modes.data() + part.k2,
                                                        modes.count() - part.k2);
    const NoiseModel noise = estimate_noise_cdf(rejected, cfg.denoise.window, cfg.denoise.grid_size);
    ThresholdTable table = calibrate_thresholds(rejected, noise, cfg.denoise.window);

    ensure_dir(cfg.output_dir);
    json pj = to_json(part);
    pj["segments_used"] = noise.segments_used;
    pj["segment_len"] = noise.segment_len;
    write_json(cfg.output_dir / "partition.json", pj);
    write_distances_csv(cfg.output_dir / "distances.csv", part, modes.center_freqs);
    write_threshold_csv(cfg.output_dir / "thresholds.csv", table);
    write_step_cdf_csv(cfg.output_dir / "noise_cdf.csv", noise.cdf);
    return table;
}

} // namespace vmdcvm
