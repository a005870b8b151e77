// vmdcvm: decompose, denoise, calibrate and benchmark from the command line.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "vmdcvm/errors.hpp"
#include "vmdcvm/io.hpp"
#include "vmdcvm/runner.hpp"

namespace {

using namespace vmdcvm;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

bool use_color() {
    const char* no_color = std::getenv("NO_COLOR");
    return (no_color == nullptr || *no_color == '\0') && isatty(STDERR_FILENO);
}

void warn(const std::string& msg) {
    if (use_color()) {
        std::cerr << "\033[33mwarning:\033[0m " << msg << '\n';
    } else {
        std::cerr << "warning: " << msg << '\n';
    }
}

void error(const std::string& msg) {
    if (use_color()) {
        std::cerr << "\033[31merror:\033[0m " << msg << '\n';
    } else {
        std::cerr << "error: " << msg << '\n';
    }
}

struct Flags {
    std::string config;
    std::vector<std::string> signals;
    std::string input;
    std::vector<std::size_t> lengths;
    std::vector<double> snrs;
    std::uint64_t seed = 0;
    std::size_t k_modes = 0;
    double alpha = 0.0;
    double tau = 0.0;
    double tol = 0.0;
    std::size_t max_iters = 0;
    std::string init;
    std::size_t window = 0;
    std::size_t grid_size = 0;
    std::string out_dir;
    std::size_t realizations = 0;
    std::size_t threads = 0;
};

struct Options {
    CLI::Option* config;
    CLI::Option* signal;
    CLI::Option* input;
    CLI::Option* n;
    CLI::Option* snr;
    CLI::Option* seed;
    CLI::Option* k_modes;
    CLI::Option* alpha;
    CLI::Option* tau;
    CLI::Option* tol;
    CLI::Option* max_iters;
    CLI::Option* init;
    CLI::Option* window;
    CLI::Option* grid_size;
    CLI::Option* out_dir;
    CLI::Option* realizations;
    CLI::Option* threads;
};

Options add_flags(CLI::App& cmd, Flags& f, bool sweep) {
    Options o{};
    o.config = cmd.add_option("--config", f.config, "JSON config (or benchmark manifest); flags override it")
                   ->check(CLI::ExistingFile);
    o.signal = cmd.add_option("--signal", f.signals,
                              sweep ? "Signals to sweep: Blocks, Bumps, HeavySine, Doppler or clean CSV paths"
                                    : "Synthetic test signal: Blocks, Bumps, HeavySine or Doppler")
                   ->delimiter(',');
    if (!sweep) o.input = cmd.add_option("--input", f.input, "Single-column CSV signal")->check(CLI::ExistingFile);
    o.n = cmd.add_option("--n", f.lengths, sweep ? "Signal lengths to sweep" : "Synthetic signal length")
              ->delimiter(',');
    o.snr = cmd.add_option("--snr-db", f.snrs,
                           sweep ? "Input SNRs (dB) to sweep" : "Add white Gaussian noise at this SNR (dB)")
                ->delimiter(',');
    o.seed = cmd.add_option("--seed", f.seed, "Noise seed (benchmark: base seed)");
    o.k_modes = cmd.add_option("--k-modes", f.k_modes, "Number of VMD modes (default 10)");
    o.alpha = cmd.add_option("--alpha", f.alpha, "VMD bandwidth penalty (default 2000)");
    o.tau = cmd.add_option("--tau", f.tau, "VMD dual ascent step (default 0)");
    o.tol = cmd.add_option("--tol", f.tol, "VMD convergence tolerance (default 1e-7)");
    o.max_iters = cmd.add_option("--max-iters", f.max_iters, "VMD iteration cap (default 500)");
    o.init = cmd.add_option("--init", f.init, "Center frequency initialization: uniform or zero")
                 ->check(CLI::IsMember({"uniform", "zero"}));
    o.window = cmd.add_option("--window", f.window, "Local window length L+1 (default 32)");
    o.grid_size = cmd.add_option("--grid-size", f.grid_size, "Noise CDF grid points (default 512)");
    o.out_dir = cmd.add_option("--out-dir", f.out_dir, "Output directory (default .)");
    if (sweep) {
        o.realizations = cmd.add_option("--realizations", f.realizations, "Noise realizations per cell (J)");
        o.threads = cmd.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
    }
    return o;
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

RunConfig build_config(Subcommand sub, const Flags& f, const Options& o) {
    RunConfig cfg;
    cfg.subcommand = sub;
    if (given(o.config)) apply_json(read_json(f.config), cfg);
    cfg.subcommand = sub;

    const bool sweep = sub == Subcommand::Benchmark;
    if (sweep) {
        SweepConfig s = cfg.sweep.value_or(SweepConfig{});
        if (given(o.signal)) s.signals = f.signals;
        if (given(o.snr)) s.snrs_db = f.snrs;
        if (given(o.n)) s.lengths = f.lengths;
        if (given(o.realizations)) s.realizations = f.realizations;
        cfg.sweep = std::move(s);
        if (given(o.threads)) cfg.threads = f.threads;
    } else {
        if (given(o.signal)) {
            if (f.signals.size() != 1) throw ConfigError("--signal takes one name outside benchmark");
            cfg.signal = f.signals.front();
            cfg.input_path.reset();
        }
        if (given(o.input)) {
            cfg.input_path = f.input;
            cfg.signal.reset();
        }
        if (given(o.n)) {
            if (f.lengths.size() != 1) throw ConfigError("--n takes one length outside benchmark");
            cfg.n = f.lengths.front();
        }
        if (given(o.snr)) {
            if (f.snrs.size() != 1) throw ConfigError("--snr-db takes one value outside benchmark");
            cfg.snr_db = f.snrs.front();
        }
    }
    if (given(o.seed)) cfg.seed = f.seed;
    if (given(o.k_modes)) cfg.denoise.vmd.k_modes = f.k_modes;
    if (given(o.alpha)) cfg.denoise.vmd.alpha = f.alpha;
    if (given(o.tau)) cfg.denoise.vmd.tau = f.tau;
    if (given(o.tol)) cfg.denoise.vmd.tol = f.tol;
    if (given(o.max_iters)) cfg.denoise.vmd.max_iters = f.max_iters;
    if (given(o.init)) cfg.denoise.vmd.init = f.init == "zero" ? OmegaInit::Zero : OmegaInit::UniformSpread;
    if (given(o.window)) cfg.denoise.window = f.window;
    if (given(o.grid_size)) cfg.denoise.grid_size = f.grid_size;
    if (given(o.out_dir)) cfg.output_dir = f.out_dir;
    cfg.validate();
    return cfg;
}

void report_convergence(std::size_t iterations, bool converged) {
    if (!converged) warn("VMD did not converge within " + std::to_string(iterations) + " iterations");
}

int run(Subcommand sub, const RunConfig& cfg) {
    switch (sub) {
    case Subcommand::Decompose: {
        const ModeSet m = run_decompose(cfg);
        report_convergence(m.iterations_used, m.converged);
        std::cout << "wrote " << (cfg.output_dir / "modes.csv").string() << " (" << m.count()
                  << " modes, " << m.iterations_used << " iterations)\n";
        break;
    }
    case Subcommand::Denoise: {
        const DenoiseResult r = run_denoise(cfg);
        report_convergence(r.report.vmd_iterations, r.report.vmd_converged);
        std::cout << "wrote " << (cfg.output_dir / "denoised.csv").string() << " (relevant modes 1.."
                  << r.report.partition.k2 << " of " << r.report.partition.mode_count() << ")\n";
        break;
    }
    case Subcommand::Calibrate: {
        const ThresholdTable t = run_calibrate(cfg);
        std::cout << "wrote " << (cfg.output_dir / "thresholds.csv").string() << " (" << t.lambdas.size()
                  << " thresholds)\n";
        break;
    }
    case Subcommand::Benchmark: {
        const auto rows = run_benchmark(cfg);
        std::cout << "signal,n,input_snr_db,mean_out_snr_db,std_out_snr_db,mean_mse\n";
        for (const auto& r : rows) {
            std::printf("%s,%zu,%.2f,%.2f,%.2f,%.4g\n", r.signal.c_str(), r.n, r.input_snr_db,
                        r.mean_out_snr_db, r.std_out_snr_db, r.mean_mse);
        }
        break;
    }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signal denoising with variational mode decomposition and local Cramer-von Mises tests"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    struct Entry {
        Subcommand sub;
        CLI::App* cmd;
        Flags flags;
        Options opts;
    };
    std::vector<Entry> entries;
    entries.reserve(4);
    const std::pair<Subcommand, const char*> defs[] = {
        {Subcommand::Decompose, "Split a signal into band-limited modes"},
        {Subcommand::Denoise, "Denoise a signal and write diagnostics"},
        {Subcommand::Calibrate, "Estimate the noise model and threshold table only"},
        {Subcommand::Benchmark, "Sweep test signals, SNRs and lengths over seeded realizations"},
    };
    for (const auto& [sub, help] : defs) {
        Entry& e = entries.emplace_back(Entry{sub, app.add_subcommand(std::string(to_string(sub)), help), {}, {}});
        e.opts = add_flags(*e.cmd, e.flags, sub == Subcommand::Benchmark);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (auto& e : entries) {
        if (!e.cmd->parsed()) continue;
        try {
            const RunConfig cfg = build_config(e.sub, e.flags, e.opts);
            return run(e.sub, cfg);
        } catch (const ConfigError& ex) {
            error(ex.what());
            return kExitUsage;
        } catch (const DataError& ex) {
            error(ex.what());
            return kExitData;
        } catch (const NumericalError& ex) {
            error(ex.what());
            return kExitNumerical;
        } catch (const std::exception& ex) {
            error(ex.what());
            return kExitNumerical;
        }
    }
    return kExitUsage;
}
