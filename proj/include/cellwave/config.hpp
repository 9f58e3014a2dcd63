#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellwave/cellnet.hpp"
#include "cellwave/core.hpp"
#include "cellwave/lattice.hpp"

namespace cellwave::harness {

/// The six runnable scenario kinds, one per CLI subcommand.
enum class ScenarioKind {
    phonon_sim,
    photon_field_sim,
    dispersion_scan,
    quantize_report,
    hop_trace,
    lifetime_calc,
};

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(const std::string& text);

/// How the initial state of a field/lattice run is built.
struct Excitation {
    enum class Kind { none, plane_wave, occupation, random };

    Kind kind = Kind::none;
    Idx3 k_index{0, 0, 0};
    double amplitude = 1e-3;  // plane_wave displacement / random half-width
    double phase = 0.0;       // plane_wave spatial phase / occupation temporal phase
    double occupation = 0.0;  // target quantum number for kind = occupation
    int branch = 0;           // lattice branch index / net polarization index
};

std::string to_string(Excitation::Kind kind);

/// Inputs for the hop-trace and lifetime-calc scenarios. Lengths are stored
/// in cm, times in s, speeds in cm/s (unit suffixes are converted at parse).
struct PhotonParams {
    double wavelength = 0.0;
    double period = 0.0;       // 0 = derive from light_speed
    double light_speed = 0.0;  // 0 = derive from period
    double cell_size = 0.0;
    Vec3 origin{1.0, 0.0, 0.0};
    double emission_time = 0.0;
    double duration = 0.0;
    std::optional<double> reference_n;    // externally supplied cells-per-wavelength
    std::optional<double> reference_tau;  // externally supplied per-cell dwell time
};

/// Fully validated scenario description built from a config file.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::phonon_sim;
    std::uint64_t seed = 0;
    bool strict = false;
    double hbar = 1.0;

    std::optional<lattice::LatticeSpec> lattice_spec;
    std::optional<cellnet::CellNetSpec> net_spec;
    Excitation excitation;

    double dt = 0.0;  // 0 = choose the scenario default
    long steps = 1000;
    int stride = 10;

    // dispersion-scan controls
    double scan_periods = 60.0;      // oscillation periods sampled per wavevector
    int max_k_index = 0;             // lattice scan: cap on |m| (0 = every bin)
    std::vector<int> refine;         // net scan: grid sizes (default 8,16,32)

    PhotonParams photon;
};

/// One parse/validation problem, tied to the source line that caused it
/// (line 0 = file-level problem such as a missing section).
struct ConfigError {
    int line = 0;
    std::string message;
};

struct ParseResult {
    std::optional<ScenarioConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return errors.empty() && config.has_value(); }
};

/// Parses `key = value` text with [section] headers and # comments.
/// Never throws on bad input: every problem in the file is collected into
/// `errors` so a user can fix the whole file in one pass.
ParseResult parse_config_text(const std::string& text);

/// Reads and parses a file; unreadable paths become a line-0 error.
ParseResult parse_config_file(const std::string& path);

/// "path:line: message" lines, one per error, ready for stderr.
std::string format_errors(const std::string& path, const std::vector<ConfigError>& errors);

}  // namespace cellwave::harness
