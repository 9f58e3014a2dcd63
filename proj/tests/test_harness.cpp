#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cellwave/config.hpp"
#include "cellwave/report.hpp"
#include "cellwave/scenario.hpp"
#include "cellwave/spectral.hpp"

using namespace cellwave;
using namespace cellwave::harness;

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
    std::string text;
    for (const auto& l : lines) {
        text += l;
        text += '\n';
    }
    return text;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// config parsing
// ---------------------------------------------------------------------------

TEST_CASE("config: full phonon run materializes every field with unit conversion") {
    const std::string text = join_lines({
        "# an end-to-end run description",
        "[scenario]",
        "kind = phonon-sim",
        "seed = 42",
        "strict = true",
        "hbar = 2.5",
        "",
        "[lattice]",
        "dimension = 2",
        "sites_per_axis = 8",
        "mass = 3.0",
        "gamma = 4.0",
        "lattice_constant = 500 nm",
        "",
        "[excitation]",
        "kind = occupation",
        "k_index = 2, 1",
        "occupation = 3",
        "branch = 1",
        "phase = 0.25",
        "",
        "[integrator]",
        "dt = 0.01",
        "steps = 500",
        "",
        "[output]",
        "stride = 5",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.ok());
    const ScenarioConfig& cfg = *res.config;
    CHECK(cfg.kind == ScenarioKind::phonon_sim);
    CHECK(cfg.seed == 42);
    CHECK(cfg.strict);
    CHECK(cfg.hbar == 2.5);
    REQUIRE(cfg.lattice_spec.has_value());
    CHECK(cfg.lattice_spec->dimension == 2);
    CHECK(cfg.lattice_spec->sites_per_axis == 8);
    CHECK(cfg.lattice_spec->mass == 3.0);
    CHECK(cfg.lattice_spec->gamma == 4.0);
    CHECK(cfg.lattice_spec->lattice_constant == doctest::Approx(5e-5).epsilon(1e-12));  // 500 nm in cm
    CHECK(!cfg.net_spec.has_value());
    CHECK(cfg.excitation.kind == Excitation::Kind::occupation);
    CHECK(cfg.excitation.k_index == Idx3{2, 1, 0});
    CHECK(cfg.excitation.occupation == 3.0);
    CHECK(cfg.excitation.branch == 1);
    CHECK(cfg.excitation.phase == 0.25);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.steps == 500);
    CHECK(cfg.stride == 5);
}

TEST_CASE("config: photon sections convert nm / fs / cm per s into base units") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = hop-trace",
        "[photon]",
        "wavelength = 500 nm",
        "light_speed = 29979245800 cm/s",
        "cell_size = 50 nm",
        "origin = 1 cm, 0.5 cm, 0.25 cm",
        "emission_time = 0 s",
        "duration = 0.2 fs",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.ok());
    const PhotonParams& ph = res.config->photon;
    CHECK(ph.wavelength == doctest::Approx(5e-5).epsilon(1e-12));
    CHECK(ph.cell_size == doctest::Approx(5e-6).epsilon(1e-12));
    CHECK(ph.light_speed == 29979245800.0);
    CHECK(ph.origin[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ph.origin[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ph.origin[2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ph.duration == doctest::Approx(2e-16).epsilon(1e-12));
    // period omitted: derived from wavelength / light_speed
    CHECK(ph.period == doctest::Approx(5e-5 / 29979245800.0).epsilon(1e-12));
}

TEST_CASE("config: every problem is collected with its source line") {
    const std::string text = join_lines({
        "[scenario]",            // 1
        "kind = phonon-sim",     // 2
        "seed = notanumber",     // 3
        "[lattice]",             // 4
        "dimension = 5",         // 5
        "sites_per_axis = 8",    // 6
        "mass = 1",              // 7
        "gamma = 1",             // 8
        "lattice_constant = 1",  // 9
        "bogus_key = 3",         // 10
    });
    const ParseResult res = parse_config_text(text);
    CHECK(!res.ok());
    CHECK(!res.config.has_value());
    REQUIRE(res.errors.size() == 3);
    CHECK(res.errors[0].line == 3);
    CHECK(res.errors[0].message.find("non-negative integer") != std::string::npos);
    CHECK(res.errors[1].line == 5);
    CHECK(res.errors[1].message.find("outside allowed range") != std::string::npos);
    CHECK(res.errors[2].line == 10);
    CHECK(res.errors[2].message.find("unknown key 'bogus_key'") != std::string::npos);

    const std::string formatted = format_errors("run.cfg", res.errors);
    CHECK(formatted.find("run.cfg:3: ") != std::string::npos);
    CHECK(formatted.find("run.cfg:10: ") != std::string::npos);
}

TEST_CASE("config: duplicate keys name the earlier definition") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = lifetime-calc",
        "kind = phonon-sim",
        "[photon]",
        "wavelength = 1",
        "period = 2",
        "cell_size = 0.25",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].line == 3);
    CHECK(res.errors[0].message.find("duplicate key 'kind'") != std::string::npos);
    CHECK(res.errors[0].message.find("line 2") != std::string::npos);
}

TEST_CASE("config: unknown sections are reported once, their keys suppressed") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = lifetime-calc",
        "[bogus]",
        "whatever = 1",
        "[photon]",
        "wavelength = 1",
        "period = 2",
        "cell_size = 0.25",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].line == 3);
    CHECK(res.errors[0].message.find("unknown section [bogus]") != std::string::npos);
}

TEST_CASE("config: keys before any section header are rejected") {
    const ParseResult res = parse_config_text("kind = phonon-sim\n");
    REQUIRE(res.errors.size() == 2);  // stray key + missing [scenario]
    CHECK(res.errors[0].line == 0);
    CHECK(res.errors[0].message.find("missing [scenario]") != std::string::npos);
    CHECK(res.errors[1].line == 1);
    CHECK(res.errors[1].message.find("before any [section]") != std::string::npos);
}

TEST_CASE("config: scenario kind restricts which geometry sections may appear") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = lifetime-calc",
        "[photon]",
        "wavelength = 1",
        "period = 2",
        "cell_size = 0.25",
        "[lattice]",  // 7: not used by lifetime-calc
        "dimension = 1",
        "sites_per_axis = 8",
        "mass = 1",
        "gamma = 1",
        "lattice_constant = 1",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].line == 7);
    CHECK(res.errors[0].message.find("[lattice] is not used by scenario lifetime-calc") !=
          std::string::npos);
}

TEST_CASE("config: integrator dt beyond the stability bound cites the dt line") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = phonon-sim",
        "[lattice]",
        "dimension = 1",
        "sites_per_axis = 8",
        "mass = 1",
        "gamma = 1",
        "lattice_constant = 1",
        "[integrator]",
        "dt = 1.5",  // 10: omega_max = 2, so the bound is dt < 1
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].line == 10);
    CHECK(res.errors[0].message.find("2/omega_max") != std::string::npos);
}

TEST_CASE("config: branch and polarization are aliases and mutually exclusive") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = photon-field-sim",
        "[cellnet]",
        "cells_per_axis = 4",
        "cell_size = 1",
        "light_speed = 1",
        "[excitation]",
        "kind = plane_wave",
        "k_index = 0, 0, 1",
        "branch = 0",
        "polarization = 1",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].message.find("either 'branch' or 'polarization'") != std::string::npos);

    // alone, 'polarization' is accepted and lands in the branch slot
    const std::string ok_text = join_lines({
        "[scenario]",
        "kind = photon-field-sim",
        "[cellnet]",
        "cells_per_axis = 4",
        "cell_size = 1",
        "light_speed = 1",
        "[excitation]",
        "kind = plane_wave",
        "k_index = 0, 0, 1",
        "polarization = 1",
    });
    const ParseResult ok = parse_config_text(ok_text);
    REQUIRE(ok.ok());
    CHECK(ok.config->excitation.branch == 1);
}

TEST_CASE("config: hop-trace rejects an inconsistent period / light_speed pair") {
    const std::string text = join_lines({
        "[scenario]",
        "kind = hop-trace",
        "[photon]",
        "wavelength = 1 cm",
        "period = 1 s",
        "light_speed = 2 cm/s",  // 6: lambda/T = 1 cm/s, disagrees
        "cell_size = 0.1 cm",
        "duration = 3 s",
    });
    const ParseResult res = parse_config_text(text);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].line == 6);
    CHECK(res.errors[0].message.find("disagrees with wavelength/period") != std::string::npos);
}

TEST_CASE("config: scenario kind names round-trip through their string forms") {
    const std::vector<ScenarioKind> kinds = {
        ScenarioKind::phonon_sim,   ScenarioKind::photon_field_sim, ScenarioKind::dispersion_scan,
        ScenarioKind::quantize_report, ScenarioKind::hop_trace,     ScenarioKind::lifetime_calc,
    };
    for (ScenarioKind k : kinds) {
        const auto back = scenario_kind_from_string(to_string(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK(!scenario_kind_from_string("made-up").has_value());
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

TEST_CASE("report: JSON serialization round-trips every field") {
    RunReport r;
    r.scenario = "demo";
    r.seed = 77;
    r.columns = {"t", "x"};
    r.rows = {{0.0, 1.5}, {0.1, -2.25}};
    r.summary = {{"alpha", 0.1}, {"beta", 3.0}};
    r.notes = {"first note", "second, with comma and \"quotes\""};
    r.oracles = {make_oracle("check_rel", 2.0, 2.0 + 1e-9, 1e-6, "rel"),
                 make_oracle("check_bound", 0.0, 0.5, 1.0, "bound"),
                 make_oracle("check_abs", 1.0, 1.5, 0.1, "abs")};
    RunReport::Table tbl;
    tbl.name = "aux";
    tbl.columns = {"i", "v"};
    tbl.rows = {{1.0, 2.0}, {2.0, 4.0}};
    r.tables = {tbl};

    CHECK(r.oracles[0].pass);
    CHECK(r.oracles[1].pass);
    CHECK(!r.oracles[2].pass);  // |1.5 - 1| = 0.5 > 0.1
    CHECK(!r.all_pass());

    const std::string j = to_json(r);
    const RunReport back = report_from_json(j);
    CHECK(back == r);
    CHECK(to_json(back) == j);
    CHECK_THROWS(report_from_json("{\"format\": \"something-else\"}"));
}

TEST_CASE("report: CSV carries metadata as comments and data as plain rows") {
    RunReport r;
    r.scenario = "demo";
    r.seed = 9;
    r.columns = {"t", "x"};
    r.rows = {{0.5, -1.25}};
    r.add_summary("alpha", 2.0);
    r.notes = {"multi\nline note"};
    r.oracles = {make_oracle("bound_check", 0.0, 0.25, 1.0, "bound")};

    const std::string csv = to_csv(r);
    CHECK(csv.find("# scenario = demo") != std::string::npos);
    CHECK(csv.find("# seed = 9") != std::string::npos);
    CHECK(csv.find("# summary alpha = 2") != std::string::npos);
    CHECK(csv.find("bound_check") != std::string::npos);
    CHECK(csv.find("t,x\n") != std::string::npos);
    CHECK(csv.find("0.5,-1.25\n") != std::string::npos);
    CHECK(csv.find("multi line note") != std::string::npos);  // newline flattened
    CHECK(to_csv(r) == csv);
}

TEST_CASE("report: doubles are printed with shortest exact round-trip form") {
    const double values[] = {0.1,    1.0 / 3.0,          1e300, 5e-324, -0.0,
                             1.0e15, 9007199254740992.0, 2.5,   6.02214076e23};
    for (double v : values) {
        const std::string s = format_double(v);
        const double parsed = std::strtod(s.c_str(), nullptr);
        CHECK(std::memcmp(&parsed, &v, sizeof v) == 0);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(HUGE_VAL) == "inf");
    CHECK(format_double(-HUGE_VAL) == "-inf");
}

// ---------------------------------------------------------------------------
// scenario runs
// ---------------------------------------------------------------------------

namespace {

ScenarioConfig random_phonon_config(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.kind = ScenarioKind::phonon_sim;
    cfg.seed = seed;
    cfg.lattice_spec = lattice::LatticeSpec{};
    cfg.lattice_spec->dimension = 1;
    cfg.lattice_spec->sites_per_axis = 16;
    cfg.excitation.kind = Excitation::Kind::random;
    cfg.excitation.amplitude = 1e-3;
    cfg.steps = 200;
    cfg.stride = 10;
    return cfg;
}

}  // namespace

TEST_CASE("run_scenario: identical config and seed give byte-identical output") {
    const ScenarioConfig cfg = random_phonon_config(7);
    const RunReport r1 = run_scenario(cfg);
    const RunReport r2 = run_scenario(cfg);
    CHECK(r1.all_pass());
    CHECK(to_json(r1) == to_json(r2));
    CHECK(to_csv(r1) == to_csv(r2));

    const RunReport r3 = run_scenario(random_phonon_config(8));
    CHECK(to_json(r3) != to_json(r1));  // a different seed draws a different state
}

TEST_CASE("run_scenario: non-finite observables raise a stepped numeric failure") {
    ScenarioConfig cfg = random_phonon_config(3);
    cfg.excitation.amplitude = 1e308;  // spring energy overflows immediately
    cfg.steps = 10;
    bool thrown = false;
    try {
        run_scenario(cfg);
    } catch (const NumericFailure& e) {
        thrown = true;
        CHECK(e.step == 0);
        CHECK(std::string(e.what()).find("finite") != std::string::npos);
    }
    CHECK(thrown);
}

// ---------------------------------------------------------------------------
// spectral estimators
// ---------------------------------------------------------------------------

TEST_CASE("spectral: peak estimator resolves a tone to a small fraction of a bin") {
    const double omega = 2.37, dt = 0.05;
    const std::size_t n = 6000;  // ~113 periods; bin width ~ 0.0153
    std::vector<cplx> pure(n), noisy(n);
    std::mt19937_64 eng(11);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        pure[i] = std::exp(cplx{0.0, -omega * t});
        noisy[i] = pure[i] + cplx{2e-3 * (unit_double(eng()) - 0.5), 2e-3 * (unit_double(eng()) - 0.5)};
    }
    CHECK(spectral::peak_frequency(pure, dt) == doctest::Approx(omega).epsilon(5e-4));
    CHECK(spectral::peak_frequency(noisy, dt) == doctest::Approx(omega).epsilon(1e-3));

    // positive-frequency series measures the same magnitude
    std::vector<cplx> conj_series(n);
    for (std::size_t i = 0; i < n; ++i) conj_series[i] = std::conj(pure[i]);
    CHECK(spectral::peak_frequency(conj_series, dt) == doctest::Approx(omega).epsilon(5e-4));

    CHECK_THROWS_AS(spectral::peak_frequency(std::vector<cplx>(4), dt), std::invalid_argument);
    CHECK_THROWS_AS(spectral::peak_frequency(pure, 0.0), std::invalid_argument);
}

TEST_CASE("spectral: phase-slope estimator is exact for a clean tone") {
    const double omega = 0.7331, dt = 0.2;
    std::vector<cplx> fwd(400), bwd(400);
    for (std::size_t i = 0; i < fwd.size(); ++i) {
        const double t = static_cast<double>(i) * dt;
        fwd[i] = 1.7 * std::exp(cplx{0.0, -omega * t + 0.4});
        bwd[i] = std::exp(cplx{0.0, omega * t});
    }
    CHECK(spectral::phase_slope_frequency(fwd, dt) == doctest::Approx(omega).epsilon(1e-12));
    CHECK(spectral::phase_slope_frequency(bwd, dt) == doctest::Approx(omega).epsilon(1e-12));
    CHECK_THROWS_AS(spectral::phase_slope_frequency(std::vector<cplx>(2), dt), std::invalid_argument);
    std::vector<cplx> with_zero(8, cplx{1.0, 0.0});
    with_zero[3] = 0.0;
    CHECK_THROWS_AS(spectral::phase_slope_frequency(with_zero, dt), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// command-line tool (exit codes and file output)
// ---------------------------------------------------------------------------

namespace {

struct CliResult {
    int code = -1;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CELLWAVE_BIN) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    CliResult res;
    res.code = WEXITSTATUS(rc);
    return res;
}

std::filesystem::path tmp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "cellwave_harness_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path write_tmp(const std::string& name, const std::string& content) {
    const auto path = tmp_dir() / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(static_cast<bool>(out));
    out << content;
    return path;
}

std::string scenario_path(const std::string& name) {
    return std::string(SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("cli: a passing run exits 0 and writes the requested file") {
    const auto out = tmp_dir() / "lifetime.json";
    const CliResult res = run_cli("lifetime-calc --config " + scenario_path("lifetime_profile.cfg") +
                                  " --out " + out.string() + " --format json");
    CHECK(res.code == 0);
    const RunReport rep = report_from_json(slurp(out));
    CHECK(rep.scenario == "lifetime-calc");
    CHECK(!rep.summary.empty());
}

TEST_CASE("cli: a failing built-in check exits 1") {
    // An undersampled scan measures frequencies far off the curve on purpose.
    const auto cfg = write_tmp("undersampled_scan.cfg", join_lines({
                                                            "[scenario]",
                                                            "kind = dispersion-scan",
                                                            "[lattice]",
                                                            "dimension = 1",
                                                            "sites_per_axis = 64",
                                                            "mass = 1",
                                                            "gamma = 1",
                                                            "lattice_constant = 1",
                                                            "[scan]",
                                                            "periods = 0.4",
                                                        }));
    const auto out = tmp_dir() / "undersampled.json";
    const CliResult res =
        run_cli("dispersion-scan --config " + cfg.string() + " --out " + out.string() + " --format json");
    CHECK(res.code == 1);
    const RunReport rep = report_from_json(slurp(out));  // report is still written
    CHECK(!rep.all_pass());
}

TEST_CASE("cli: config problems exit 2") {
    const auto bad = write_tmp("broken.cfg", "this is not a run description\n");
    CHECK(run_cli("phonon-sim --config " + bad.string()).code == 2);
    CHECK(run_cli("phonon-sim --config " + tmp_dir().string() + "/no_such_file.cfg").code == 2);
    // kind/subcommand mismatch is also a config error
    CHECK(run_cli("phonon-sim --config " + scenario_path("lifetime_profile.cfg")).code == 2);
}

TEST_CASE("cli: numeric blow-ups exit 3") {
    const auto cfg = write_tmp("overflow.cfg", join_lines({
                                                   "[scenario]",
                                                   "kind = phonon-sim",
                                                   "[lattice]",
                                                   "dimension = 1",
                                                   "sites_per_axis = 8",
                                                   "mass = 1",
                                                   "gamma = 1",
                                                   "lattice_constant = 1",
                                                   "[excitation]",
                                                   "kind = random",
                                                   "amplitude = 1e308",
                                                   "[integrator]",
                                                   "steps = 10",
                                               }));
    CHECK(run_cli("phonon-sim --config " + cfg.string()).code == 3);
}

TEST_CASE("cli: reruns with the same seed produce byte-identical files") {
    const auto out1 = tmp_dir() / "rerun1.json";
    const auto out2 = tmp_dir() / "rerun2.json";
    const std::string base = "phonon-sim --config " + scenario_path("phonon_chain.cfg") + " --seed 123 ";
    CHECK(run_cli(base + "--out " + out1.string() + " --format json").code == 0);
    CHECK(run_cli(base + "--out " + out2.string() + " --format json").code == 0);
    CHECK(slurp(out1) == slurp(out2));

    const auto csv1 = tmp_dir() / "rerun1.csv";
    const auto csv2 = tmp_dir() / "rerun2.csv";
    CHECK(run_cli(base + "--out " + csv1.string() + " --format csv").code == 0);
    CHECK(run_cli(base + "--out " + csv2.string() + " --format csv").code == 0);
    CHECK(slurp(csv1) == slurp(csv2));
}
