#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cellwave/config.hpp"
#include "cellwave/report.hpp"
#include "cellwave/scenario.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitOracleFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericFailure = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool strict = false;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Scenario config file (key = value sections)")
        ->required();
    cmd->add_option("--out", opts.out_path, "Output path ('-' or omitted = stdout)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Override the config seed")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_flag("--strict", opts.strict, "Refuse queries the model leaves undefined");
}

int run_command(cellwave::harness::ScenarioKind kind, const CommonOptions& opts) {
    using namespace cellwave::harness;

    ParseResult parsed = parse_config_file(opts.config_path);
    if (!parsed.errors.empty()) {
        std::cerr << format_errors(opts.config_path, parsed.errors);
        return kExitConfigError;
    }
    ScenarioConfig cfg = *parsed.config;
    if (cfg.kind != kind) {
        std::cerr << opts.config_path << ":0: config declares scenario '" << to_string(cfg.kind)
                  << "' but the '" << to_string(kind) << "' subcommand was invoked\n";
        return kExitConfigError;
    }
    if (opts.seed_given) cfg.seed = opts.seed;
    if (opts.strict) cfg.strict = true;

    RunReport report;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        report = run_scenario(cfg);
    } catch (const cellwave::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumericFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    try {
        write_output(opts.out_path, opts.format == "csv" ? to_csv(report) : to_json(report));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    // Diagnostics go to stderr only; reports stay byte-identical across runs.
    std::cerr << to_string(kind) << ": " << report.oracles.size() << " oracle(s), "
              << (report.all_pass() ? "all passed" : "FAILURES") << ", " << elapsed.count() << " s\n";
    for (const OracleRow& o : report.oracles) {
        if (!o.pass)
            std::cerr << "  oracle failed: " << o.name << " (measured " << format_double(o.measured)
                      << ", expected " << format_double(o.expected) << " within " << format_double(o.tolerance)
                      << " " << o.kind << ")\n";
    }
    return report.all_pass() ? kExitSuccess : kExitOracleFailure;
}

}  // namespace

int main(int argc, char** argv) {
    using cellwave::harness::ScenarioKind;

    CLI::App app{
        "cellwave: mass-spring lattice and cell-net field simulator with "
        "normal-mode quantization and hopping-excitation kinematics"};
    app.require_subcommand(1);

    struct Entry {
        ScenarioKind kind;
        const char* name;
        const char* help;
    };
    const Entry entries[] = {
        {ScenarioKind::phonon_sim, "phonon-sim",
         "Integrate the mass-spring lattice and report conserved-energy and mode diagnostics"},
        {ScenarioKind::photon_field_sim, "photon-field-sim",
         "Integrate the cell-net polarization field and report energy and mode diagnostics"},
        {ScenarioKind::dispersion_scan, "dispersion-scan",
         "Measure oscillation frequencies across wavevectors (lattice) or grid refinements (cell net)"},
        {ScenarioKind::quantize_report, "quantize-report",
         "Decompose a state into normal modes and report ladder occupations and zero-point sums"},
        {ScenarioKind::hop_trace, "hop-trace",
         "Trace the cell-to-cell hop schedule of a moving core excitation"},
        {ScenarioKind::lifetime_calc, "lifetime-calc",
         "Evaluate cells-per-wavelength / dwell-time arithmetic for given photon parameters"},
    };

    CommonOptions opts[std::size(entries)];
    CLI::App* cmds[std::size(entries)];
    for (std::size_t i = 0; i < std::size(entries); ++i) {
        cmds[i] = app.add_subcommand(entries[i].name, entries[i].help);
        add_common_options(cmds[i], opts[i]);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(entries); ++i) {
        if (cmds[i]->parsed()) return run_command(entries[i].kind, opts[i]);
    }
    return kExitConfigError;  // unreachable: require_subcommand(1)
}
