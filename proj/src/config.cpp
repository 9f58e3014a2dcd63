#include "cellwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cellwave/units.hpp"

namespace cellwave::harness {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::phonon_sim: return "phonon-sim";
        case ScenarioKind::photon_field_sim: return "photon-field-sim";
        case ScenarioKind::dispersion_scan: return "dispersion-scan";
        case ScenarioKind::quantize_report: return "quantize-report";
        case ScenarioKind::hop_trace: return "hop-trace";
        case ScenarioKind::lifetime_calc: return "lifetime-calc";
    }
    return "?";
}

std::optional<ScenarioKind> scenario_kind_from_string(const std::string& text) {
    static const std::map<std::string, ScenarioKind> table = {
        {"phonon-sim", ScenarioKind::phonon_sim},
        {"photon-field-sim", ScenarioKind::photon_field_sim},
        {"dispersion-scan", ScenarioKind::dispersion_scan},
        {"quantize-report", ScenarioKind::quantize_report},
        {"hop-trace", ScenarioKind::hop_trace},
        {"lifetime-calc", ScenarioKind::lifetime_calc},
    };
    auto it = table.find(text);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::string to_string(Excitation::Kind kind) {
    switch (kind) {
        case Excitation::Kind::none: return "none";
        case Excitation::Kind::plane_wave: return "plane_wave";
        case Excitation::Kind::occupation: return "occupation";
        case Excitation::Kind::random: return "random";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct Item {
    std::string value;
    int line = 0;
};

/// Raw parse pass: sections, comments, key = value, duplicates.
struct RawFile {
    std::map<std::string, Item> items;       // "section.key" -> value
    std::map<std::string, int> section_line; // first header line per section
    std::vector<ConfigError> errors;
};

const std::set<std::string>& known_sections() {
    static const std::set<std::string> s = {"scenario", "lattice",    "cellnet", "excitation",
                                            "integrator", "output", "scan",    "photon"};
    return s;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> s = {
        "scenario.kind",        "scenario.seed",         "scenario.strict",     "scenario.hbar",
        "lattice.dimension",    "lattice.sites_per_axis", "lattice.mass",       "lattice.gamma",
        "lattice.lattice_constant",
        "cellnet.cells_per_axis", "cellnet.cell_size",   "cellnet.light_speed",
        "excitation.kind",      "excitation.k_index",    "excitation.amplitude", "excitation.phase",
        "excitation.occupation", "excitation.branch",    "excitation.polarization",
        "integrator.dt",        "integrator.steps",
        "output.stride",
        "scan.periods",         "scan.max_k_index",      "scan.refine",
        "photon.wavelength",    "photon.period",         "photon.light_speed",  "photon.cell_size",
        "photon.origin",        "photon.emission_time",  "photon.duration",     "photon.reference_n",
        "photon.reference_tau",
    };
    return s;
}

RawFile parse_raw(const std::string& text) {
    RawFile raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    bool section_known = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                raw.errors.push_back({lineno, "malformed section header '" + line + "'"});
                section.clear();
                section_known = false;
                continue;
            }
            section = lower(trim(line.substr(1, line.size() - 2)));
            section_known = known_sections().count(section) > 0;
            if (!section_known) {
                raw.errors.push_back({lineno, "unknown section [" + section + "]"});
            } else if (!raw.section_line.count(section)) {
                raw.section_line[section] = lineno;
            }
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            raw.errors.push_back({lineno, "expected 'key = value', got '" + line + "'"});
            continue;
        }
        std::string key = lower(trim(line.substr(0, eq)));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            raw.errors.push_back({lineno, "missing key before '='"});
            continue;
        }
        if (section.empty()) {
            raw.errors.push_back({lineno, "key '" + key + "' appears before any [section] header"});
            continue;
        }
        if (!section_known) continue;  // one error for the section is enough
        std::string full = section + "." + key;
        if (!known_keys().count(full)) {
            raw.errors.push_back({lineno, "unknown key '" + key + "' in section [" + section + "]"});
            continue;
        }
        if (value.empty()) {
            raw.errors.push_back({lineno, "key '" + key + "' has an empty value"});
            continue;
        }
        auto [it, inserted] = raw.items.emplace(full, Item{value, lineno});
        if (!inserted) {
            raw.errors.push_back({lineno, "duplicate key '" + key + "' in section [" + section +
                                              "] (first set on line " + std::to_string(it->second.line) + ")"});
        }
    }
    return raw;
}

/// Typed access over the raw items; every conversion failure lands in
/// `errors` with the line of the offending value.
class Fields {
  public:
    Fields(const RawFile& raw, std::vector<ConfigError>& errors) : raw_(raw), errors_(errors) {}

    bool has(const std::string& full) const { return raw_.items.count(full) > 0; }
    bool has_section(const std::string& section) const { return raw_.section_line.count(section) > 0; }
    int section_line(const std::string& section) const {
        auto it = raw_.section_line.find(section);
        return it == raw_.section_line.end() ? 0 : it->second;
    }
    int line_of(const std::string& full) const {
        auto it = raw_.items.find(full);
        return it == raw_.items.end() ? 0 : it->second.line;
    }

    bool get_double(const std::string& full, units::Dimension dim, double& out) {
        const Item* item = find(full);
        if (!item) return false;
        try {
            out = units::parse_value(item->value, dim);
            return true;
        } catch (const std::exception& e) {
            fail(full, e.what());
            return false;
        }
    }

    bool get_int(const std::string& full, long long lo, long long hi, long long& out) {
        const Item* item = find(full);
        if (!item) return false;
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(item->value.c_str(), &end, 10);
        if (errno != 0 || end == item->value.c_str() || *end != '\0') {
            fail(full, "expected an integer, got '" + item->value + "'");
            return false;
        }
        if (v < lo || v > hi) {
            fail(full, "value " + std::to_string(v) + " outside allowed range [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
            return false;
        }
        out = v;
        return true;
    }

    bool get_uint64(const std::string& full, std::uint64_t& out) {
        const Item* item = find(full);
        if (!item) return false;
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(item->value.c_str(), &end, 10);
        if (errno != 0 || end == item->value.c_str() || *end != '\0' || item->value.front() == '-') {
            fail(full, "expected a non-negative integer, got '" + item->value + "'");
            return false;
        }
        out = v;
        return true;
    }

    bool get_bool(const std::string& full, bool& out) {
        const Item* item = find(full);
        if (!item) return false;
        std::string v = lower(item->value);
        if (v == "true" || v == "1" || v == "yes" || v == "on") {
            out = true;
            return true;
        }
        if (v == "false" || v == "0" || v == "no" || v == "off") {
            out = false;
            return true;
        }
        fail(full, "expected a boolean (true/false), got '" + item->value + "'");
        return false;
    }

    bool get_string(const std::string& full, std::string& out) {
        const Item* item = find(full);
        if (!item) return false;
        out = item->value;
        return true;
    }

    /// Whitespace- or comma-separated integers; count must be in [min_n, max_n].
    bool get_int_list(const std::string& full, size_t min_n, size_t max_n, std::vector<long long>& out) {
        const Item* item = find(full);
        if (!item) return false;
        std::string v = item->value;
        std::replace(v.begin(), v.end(), ',', ' ');
        std::istringstream in(v);
        std::vector<long long> vals;
        std::string tok;
        while (in >> tok) {
            errno = 0;
            char* end = nullptr;
            long long x = std::strtoll(tok.c_str(), &end, 10);
            if (errno != 0 || end == tok.c_str() || *end != '\0') {
                fail(full, "expected integers, got '" + item->value + "'");
                return false;
            }
            vals.push_back(x);
        }
        if (vals.size() < min_n || vals.size() > max_n) {
            fail(full, "expected between " + std::to_string(min_n) + " and " + std::to_string(max_n) +
                           " integers, got " + std::to_string(vals.size()));
            return false;
        }
        out = std::move(vals);
        return true;
    }

    /// Exactly n reals sharing one dimension. Comma-separated components may
    /// each carry a unit ("1 cm, 0.5 cm"); without commas, whitespace
    /// separates plain or unit-attached numbers ("1 0.5 0.25").
    bool get_double_list(const std::string& full, units::Dimension dim, size_t n, std::vector<double>& out) {
        const Item* item = find(full);
        if (!item) return false;
        std::vector<std::string> tokens;
        if (item->value.find(',') != std::string::npos) {
            std::istringstream in(item->value);
            std::string part;
            while (std::getline(in, part, ',')) tokens.push_back(trim(part));
        } else {
            std::istringstream in(item->value);
            std::string part;
            while (in >> part) tokens.push_back(part);
        }
        std::vector<double> vals;
        for (const std::string& tok : tokens) {
            try {
                vals.push_back(units::parse_value(tok, dim));
            } catch (const std::exception& e) {
                fail(full, e.what());
                return false;
            }
        }
        if (vals.size() != n) {
            fail(full, "expected " + std::to_string(n) + " values, got " + std::to_string(vals.size()));
            return false;
        }
        out = std::move(vals);
        return true;
    }

    void fail(const std::string& full, const std::string& message) {
        errors_.push_back({line_of(full), key_name(full) + ": " + message});
    }
    void fail_at(int line, const std::string& message) { errors_.push_back({line, message}); }

    static std::string key_name(const std::string& full) {
        size_t dot = full.find('.');
        return "'" + full.substr(dot + 1) + "'";
    }

  private:
    const Item* find(const std::string& full) const {
        auto it = raw_.items.find(full);
        return it == raw_.items.end() ? nullptr : &it->second;
    }

    const RawFile& raw_;
    std::vector<ConfigError>& errors_;
};

bool requires_geometry(ScenarioKind kind) {
    return kind == ScenarioKind::phonon_sim || kind == ScenarioKind::photon_field_sim ||
           kind == ScenarioKind::dispersion_scan || kind == ScenarioKind::quantize_report;
}

bool accepts_photon(ScenarioKind kind) {
    return kind == ScenarioKind::hop_trace || kind == ScenarioKind::lifetime_calc;
}

void extract_lattice(Fields& f, ScenarioConfig& cfg) {
    lattice::LatticeSpec spec;
    long long v;
    if (f.get_int("lattice.dimension", 1, 3, v)) spec.dimension = static_cast<int>(v);
    if (f.get_int("lattice.sites_per_axis", 2, 4096, v)) spec.sites_per_axis = static_cast<int>(v);
    f.get_double("lattice.mass", units::Dimension::none, spec.mass);
    f.get_double("lattice.gamma", units::Dimension::none, spec.gamma);
    f.get_double("lattice.lattice_constant", units::Dimension::length, spec.lattice_constant);
    try {
        spec.validate();
        cfg.lattice_spec = spec;
    } catch (const std::exception& e) {
        f.fail_at(f.section_line("lattice"), std::string("[lattice] ") + e.what());
    }
}

void extract_cellnet(Fields& f, ScenarioConfig& cfg) {
    cellnet::CellNetSpec spec;
    long long v;
    if (f.get_int("cellnet.cells_per_axis", 1, 1024, v)) spec.cells_per_axis = static_cast<int>(v);
    f.get_double("cellnet.cell_size", units::Dimension::length, spec.cell_size);
    f.get_double("cellnet.light_speed", units::Dimension::speed, spec.light_speed);
    try {
        spec.validate();
        cfg.net_spec = spec;
    } catch (const std::exception& e) {
        f.fail_at(f.section_line("cellnet"), std::string("[cellnet] ") + e.what());
    }
}

void extract_excitation(Fields& f, ScenarioConfig& cfg) {
    Excitation& ex = cfg.excitation;
    std::string kind_text;
    if (f.get_string("excitation.kind", kind_text)) {
        std::string k = lower(kind_text);
        if (k == "none")
            ex.kind = Excitation::Kind::none;
        else if (k == "plane_wave" || k == "plane-wave")
            ex.kind = Excitation::Kind::plane_wave;
        else if (k == "occupation")
            ex.kind = Excitation::Kind::occupation;
        else if (k == "random")
            ex.kind = Excitation::Kind::random;
        else
            f.fail("excitation.kind",
                   "unknown kind '" + kind_text + "' (expected none, plane_wave, occupation, or random)");
    }
    std::vector<long long> kidx;
    if (f.get_int_list("excitation.k_index", 1, 3, kidx)) {
        for (size_t i = 0; i < kidx.size(); ++i) ex.k_index[i] = static_cast<int>(kidx[i]);
    }
    f.get_double("excitation.amplitude", units::Dimension::none, ex.amplitude);
    f.get_double("excitation.phase", units::Dimension::none, ex.phase);
    if (f.get_double("excitation.occupation", units::Dimension::none, ex.occupation)) {
        if (!(ex.occupation >= 0.0) || !std::isfinite(ex.occupation))
            f.fail("excitation.occupation", "occupation must be finite and >= 0");
    }
    long long branch;
    bool have_branch = f.get_int("excitation.branch", 0, 2, branch);
    if (f.has("excitation.polarization")) {
        if (have_branch)
            f.fail("excitation.polarization", "give either 'branch' or 'polarization', not both");
        else if (f.get_int("excitation.polarization", 0, 2, branch))
            have_branch = true;
    }
    if (have_branch) ex.branch = static_cast<int>(branch);

    if (ex.kind == Excitation::Kind::plane_wave || ex.kind == Excitation::Kind::occupation) {
        if (!f.has("excitation.k_index"))
            f.fail_at(f.section_line("excitation"),
                      "[excitation] kind " + to_string(ex.kind) + " requires 'k_index'");
    }
    if (ex.kind == Excitation::Kind::occupation && !f.has("excitation.occupation"))
        f.fail_at(f.section_line("excitation"), "[excitation] kind occupation requires 'occupation'");
    if (ex.kind == Excitation::Kind::random && !(ex.amplitude > 0.0))
        f.fail("excitation.amplitude", "random excitation needs amplitude > 0");
    if (!std::isfinite(ex.amplitude)) f.fail("excitation.amplitude", "amplitude must be finite");
    if (!std::isfinite(ex.phase)) f.fail("excitation.phase", "phase must be finite");
}

void extract_photon(Fields& f, ScenarioConfig& cfg) {
    PhotonParams& ph = cfg.photon;
    if (f.get_double("photon.wavelength", units::Dimension::length, ph.wavelength)) {
        if (!(ph.wavelength > 0.0)) f.fail("photon.wavelength", "wavelength must be > 0");
    }
    if (f.get_double("photon.period", units::Dimension::time, ph.period)) {
        if (!(ph.period > 0.0)) f.fail("photon.period", "period must be > 0");
    }
    if (f.get_double("photon.light_speed", units::Dimension::speed, ph.light_speed)) {
        if (!(ph.light_speed > 0.0)) f.fail("photon.light_speed", "light_speed must be > 0");
    }
    if (f.get_double("photon.cell_size", units::Dimension::length, ph.cell_size)) {
        if (!(ph.cell_size > 0.0)) f.fail("photon.cell_size", "cell_size must be > 0");
    }
    std::vector<double> origin;
    if (f.get_double_list("photon.origin", units::Dimension::length, 3, origin)) {
        ph.origin = {origin[0], origin[1], origin[2]};
        if (!(norm(ph.origin) > 0.0))
            f.fail("photon.origin", "origin must be nonzero (it fixes the propagation direction)");
    }
    f.get_double("photon.emission_time", units::Dimension::time, ph.emission_time);
    if (f.get_double("photon.duration", units::Dimension::time, ph.duration)) {
        if (!(ph.duration >= 0.0)) f.fail("photon.duration", "duration must be >= 0");
    }
    double ref;
    if (f.get_double("photon.reference_n", units::Dimension::none, ref)) {
        if (!(ref > 0.0))
            f.fail("photon.reference_n", "reference_n must be > 0");
        else
            ph.reference_n = ref;
    }
    if (f.get_double("photon.reference_tau", units::Dimension::time, ref)) {
        if (!(ref > 0.0))
            f.fail("photon.reference_tau", "reference_tau must be > 0");
        else
            ph.reference_tau = ref;
    }

    const int sline = f.section_line("photon");
    if (!f.has("photon.wavelength")) f.fail_at(sline, "[photon] requires 'wavelength'");
    if (!f.has("photon.cell_size")) f.fail_at(sline, "[photon] requires 'cell_size'");
    const bool have_period = f.has("photon.period");
    const bool have_speed = f.has("photon.light_speed");
    if (!have_period && !have_speed)
        f.fail_at(sline, "[photon] requires 'period' or 'light_speed' (either determines the other)");
    if (have_period && have_speed && cfg.kind == ScenarioKind::hop_trace && ph.wavelength > 0.0 &&
        ph.period > 0.0 && ph.light_speed > 0.0) {
        const double implied = ph.wavelength / ph.period;
        const double rel = std::fabs(implied - ph.light_speed) / ph.light_speed;
        if (rel > 1e-9)
            f.fail_at(f.line_of("photon.light_speed"),
                      "'light_speed' disagrees with wavelength/period (relative difference " +
                          std::to_string(rel) + "); drop one of the two for hop-trace");
    }
    // Derive whichever of (period, speed) was omitted.
    if (ph.wavelength > 0.0 && ph.period > 0.0 && !(ph.light_speed > 0.0))
        ph.light_speed = ph.wavelength / ph.period;
    if (ph.wavelength > 0.0 && ph.light_speed > 0.0 && !(ph.period > 0.0))
        ph.period = ph.wavelength / ph.light_speed;
    if (cfg.kind == ScenarioKind::hop_trace && !f.has("photon.duration"))
        f.fail_at(sline, "[photon] hop-trace requires 'duration'");
}

void validate_cross(Fields& f, ScenarioConfig& cfg) {
    // Geometry sections must match the scenario kind.
    const bool has_lat = f.has_section("lattice");
    const bool has_net = f.has_section("cellnet");
    const bool has_ph = f.has_section("photon");
    const std::string kind_name = to_string(cfg.kind);
    switch (cfg.kind) {
        case ScenarioKind::phonon_sim:
            if (!has_lat) f.fail_at(0, "scenario " + kind_name + " requires a [lattice] section");
            if (has_net)
                f.fail_at(f.section_line("cellnet"), "[cellnet] is not used by scenario " + kind_name);
            break;
        case ScenarioKind::photon_field_sim:
            if (!has_net) f.fail_at(0, "scenario " + kind_name + " requires a [cellnet] section");
            if (has_lat)
                f.fail_at(f.section_line("lattice"), "[lattice] is not used by scenario " + kind_name);
            break;
        case ScenarioKind::dispersion_scan:
        case ScenarioKind::quantize_report:
            if (has_lat == has_net)
                f.fail_at(0, "scenario " + kind_name + " requires exactly one of [lattice] or [cellnet]");
            break;
        case ScenarioKind::hop_trace:
        case ScenarioKind::lifetime_calc:
            if (!has_ph) f.fail_at(0, "scenario " + kind_name + " requires a [photon] section");
            if (has_lat)
                f.fail_at(f.section_line("lattice"), "[lattice] is not used by scenario " + kind_name);
            if (has_net)
                f.fail_at(f.section_line("cellnet"), "[cellnet] is not used by scenario " + kind_name);
            break;
    }
    if (has_ph && !accepts_photon(cfg.kind))
        f.fail_at(f.section_line("photon"), "[photon] is not used by scenario " + kind_name);
    if (f.has_section("excitation") && !requires_geometry(cfg.kind))
        f.fail_at(f.section_line("excitation"), "[excitation] is not used by scenario " + kind_name);

    // Excitation indices must fit the geometry that is actually present.
    if (requires_geometry(cfg.kind)) {
        const Excitation& ex = cfg.excitation;
        if (cfg.lattice_spec) {
            if (ex.branch >= cfg.lattice_spec->dimension)
                f.fail("excitation.branch", "branch " + std::to_string(ex.branch) +
                                                " out of range for a " +
                                                std::to_string(cfg.lattice_spec->dimension) +
                                                "-dimensional lattice");
            for (int d = cfg.lattice_spec->dimension; d < 3; ++d) {
                if (ex.k_index[d] != 0)
                    f.fail("excitation.k_index", "k_index component " + std::to_string(d) +
                                                     " must be 0 for a " +
                                                     std::to_string(cfg.lattice_spec->dimension) +
                                                     "-dimensional lattice");
            }
        }
        if (cfg.net_spec && ex.branch > 1)
            f.fail("excitation.branch", "polarization must be 0 or 1 on the cell net");
        if (ex.kind == Excitation::Kind::plane_wave || ex.kind == Excitation::Kind::occupation) {
            const int n = cfg.lattice_spec ? cfg.lattice_spec->sites_per_axis
                                           : (cfg.net_spec ? cfg.net_spec->cells_per_axis : 0);
            if (n > 0) {
                bool zero = true;
                for (int d = 0; d < 3; ++d)
                    if (((ex.k_index[d] % n) + n) % n != 0) zero = false;
                if (zero)
                    f.fail("excitation.k_index",
                           to_string(ex.kind) + " excitation needs a wavevector that is nonzero modulo " +
                               std::to_string(n));
            }
        }
    }

    // Integrator bounds against the stability limit of the present geometry.
    if (cfg.dt < 0.0 || !std::isfinite(cfg.dt)) f.fail("integrator.dt", "dt must be finite and >= 0");
    if (cfg.dt > 0.0 && cfg.lattice_spec) {
        const lattice::Lattice lat(*cfg.lattice_spec);
        const double bound = 2.0 / lat.omega_max();
        if (cfg.dt >= bound) {
            std::ostringstream msg;
            msg << "dt = " << cfg.dt << " violates the stability bound dt < 2/omega_max = " << bound;
            f.fail("integrator.dt", msg.str());
        }
    }
    if (cfg.dt > 0.0 && cfg.net_spec) {
        const cellnet::CellNet net(*cfg.net_spec);
        const double bound = net.max_stable_dt();
        if (cfg.dt > bound * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "dt = " << cfg.dt << " violates the stability bound dt <= a/(c*sqrt(3)) = " << bound;
            f.fail("integrator.dt", msg.str());
        }
    }

    if (cfg.kind == ScenarioKind::dispersion_scan && cfg.net_spec) {
        if (cfg.refine.size() < 2)
            f.fail_at(f.has("scan.refine") ? f.line_of("scan.refine") : f.section_line("cellnet"),
                      "net dispersion-scan needs at least two grid sizes in 'refine' "
                      "to estimate a convergence order");
        for (size_t i = 1; i < cfg.refine.size(); ++i) {
            if (cfg.refine[i] <= cfg.refine[i - 1]) {
                f.fail("scan.refine", "grid sizes must be strictly increasing");
                break;
            }
        }
    }
}

}  // namespace

ParseResult parse_config_text(const std::string& text) {
    ParseResult result;
    RawFile raw = parse_raw(text);
    result.errors = raw.errors;
    Fields f(raw, result.errors);

    ScenarioConfig cfg;

    std::string kind_text;
    bool have_kind = false;
    if (!f.has_section("scenario")) {
        f.fail_at(0, "missing [scenario] section");
    } else if (!f.get_string("scenario.kind", kind_text)) {
        f.fail_at(f.section_line("scenario"), "[scenario] requires 'kind'");
    } else if (auto kind = scenario_kind_from_string(kind_text)) {
        cfg.kind = *kind;
        have_kind = true;
    } else {
        f.fail("scenario.kind",
               "unknown scenario kind '" + kind_text +
                   "' (expected phonon-sim, photon-field-sim, dispersion-scan, quantize-report, "
                   "hop-trace, or lifetime-calc)");
    }
    f.get_uint64("scenario.seed", cfg.seed);
    f.get_bool("scenario.strict", cfg.strict);
    if (f.get_double("scenario.hbar", units::Dimension::none, cfg.hbar)) {
        if (!(cfg.hbar > 0.0) || !std::isfinite(cfg.hbar)) f.fail("scenario.hbar", "hbar must be finite and > 0");
    }

    if (f.has_section("lattice")) extract_lattice(f, cfg);
    if (f.has_section("cellnet")) extract_cellnet(f, cfg);
    if (f.has_section("excitation")) extract_excitation(f, cfg);

    f.get_double("integrator.dt", units::Dimension::none, cfg.dt);
    long long v;
    if (f.get_int("integrator.steps", 1, 100000000LL, v)) cfg.steps = static_cast<long>(v);
    if (f.get_int("output.stride", 1, 1000000000LL, v)) cfg.stride = static_cast<int>(v);
    if (f.get_double("scan.periods", units::Dimension::none, cfg.scan_periods)) {
        if (!(cfg.scan_periods > 0.0)) f.fail("scan.periods", "periods must be > 0");
    }
    if (f.get_int("scan.max_k_index", 0, 1000000LL, v)) cfg.max_k_index = static_cast<int>(v);
    std::vector<long long> refine;
    if (f.get_int_list("scan.refine", 1, 16, refine)) {
        cfg.refine.clear();
        for (long long r : refine) {
            if (r < 4 || r > 512) {
                f.fail("scan.refine", "grid sizes must lie in [4, 512]");
                cfg.refine.clear();
                break;
            }
            cfg.refine.push_back(static_cast<int>(r));
        }
    }
    if (cfg.refine.empty()) cfg.refine = {8, 16, 32};

    if (f.has_section("photon")) extract_photon(f, cfg);

    if (have_kind) validate_cross(f, cfg);

    if (result.errors.empty()) result.config = std::move(cfg);
    std::stable_sort(result.errors.begin(), result.errors.end(),
                     [](const ConfigError& a, const ConfigError& b) { return a.line < b.line; });
    return result;
}

ParseResult parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.errors.push_back({0, "cannot open config file '" + path + "'"});
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string format_errors(const std::string& path, const std::vector<ConfigError>& errors) {
    std::ostringstream out;
    for (const ConfigError& e : errors) {
        out << path << ":" << e.line << ": " << e.message << "\n";
    }
    return out.str();
}

}  // namespace cellwave::harness
