#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "vmdcvm/errors.hpp"
#include "vmdcvm/io.hpp"
#include "vmdcvm/testbench.hpp"

using namespace vmdcvm;

TEST_CASE("parse_signal_csv: header, blank lines and signs") {
    std::istringstream in("value\n1.5\n\n-2\n+3e-1\n  4 \n");
    CHECK(parse_signal_csv(in) == std::vector<double>{1.5, -2.0, 0.3, 4.0});
    std::istringstream bare("0\n1\n");
    CHECK(parse_signal_csv(bare) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("parse_signal_csv: a bad line is reported with its number") {
    std::istringstream in("value\n1\n2\nabc\n4\n");
    try {
        (void)parse_signal_csv(in, "x.csv");
        FAIL("expected a DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("x.csv:4") != std::string::npos);
    }
    std::istringstream nan_in("1\nnan\n");
    CHECK_THROWS_AS((void)parse_signal_csv(nan_in), DataError);
}

TEST_CASE("signal CSV round-trips bit-exactly") {
    const auto dir = oracle::scratch_dir("io_signal");
    const Signal x = add_noise(generate(TestSignal::Doppler, 300), 3.0, 5).noisy;
    write_signal_csv(dir / "s.csv", x.samples());
    CHECK(read_signal_csv(dir / "s.csv") == x);
}

TEST_CASE("modes, noise CDF and threshold CSVs round-trip") {
    const auto dir = oracle::scratch_dir("io_tables");
    const Signal y = add_noise(generate(TestSignal::Bumps, 512), 10.0, 6).noisy;
    DenoiseConfig cfg;
    cfg.vmd.k_modes = 5;
    const DenoiseResult r = denoise(y, cfg);

    write_modes_csv(dir / "modes.csv", r.modes);
    const ModeSet m = read_modes_csv(dir / "modes.csv");
    CHECK(m.modes == r.modes.modes);
    CHECK(m.residual == r.modes.residual);
    CHECK(read_csv_table(dir / "modes.csv").header ==
          std::vector<std::string>{"u1", "u2", "u3", "u4", "u5", "residual"});

    write_step_cdf_csv(dir / "cdf.csv", r.noise.cdf);
    const StepCdf c = read_step_cdf_csv(dir / "cdf.csv");
    CHECK(std::vector<double>(c.grid().begin(), c.grid().end()) ==
          std::vector<double>(r.noise.cdf.grid().begin(), r.noise.cdf.grid().end()));
    CHECK(std::vector<double>(c.values().begin(), c.values().end()) ==
          std::vector<double>(r.noise.cdf.values().begin(), r.noise.cdf.values().end()));

    write_threshold_csv(dir / "t.csv", r.thresholds);
    const ThresholdTable t = read_threshold_csv(dir / "t.csv");
    CHECK(t.lambdas == r.thresholds.lambdas);
    CHECK(t.pfa == r.thresholds.pfa);
}

TEST_CASE("JSON exports carry the partition and report fields") {
    const auto dir = oracle::scratch_dir("io_json");
    const ModePartition p = partition(std::vector<double>{10, 2, 1.9, 1.8, 0.2, 0.19});
    const auto j = to_json(p);
    CHECK(j.at("k1") == 1);
    CHECK(j.at("k2") == 4);
    CHECK(j.at("distances").size() == 6);
    CHECK(j.at("slopes").size() == 5);
    write_json(dir / "p.json", j);
    CHECK(read_json(dir / "p.json") == j);

    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK_THROWS_AS((void)read_json(dir / "bad.json"), DataError);
    CHECK_THROWS_AS((void)read_signal_csv(dir / "missing.csv"), DataError);
}
