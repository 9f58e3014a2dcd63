#include "cellwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cellwave/cellnet.hpp"
#include "cellwave/dft.hpp"
#include "cellwave/lattice.hpp"
#include "cellwave/modes.hpp"
#include "cellwave/photon.hpp"
#include "cellwave/spectral.hpp"

namespace cellwave::harness {

namespace {

// ---------------------------------------------------------------------------
// Built-in oracle tolerances (every pass/fail threshold the runners apply).
// ---------------------------------------------------------------------------
constexpr double kDriftTol = 1e-6;        // staggered-energy relative drift
constexpr double kParsevalTol = 1e-10;    // real-space vs mode-sum energy
constexpr double kPurityMinFraction = 0.999;   // excited pair / total energy
constexpr double kRoundTripTol = 1e-6;    // prepared vs measured occupation
constexpr double kDispersionTol = 1e-2;   // measured vs analytic branch
constexpr double kOrderExpected = 2.0;    // spatial convergence order
constexpr double kOrderTol = 0.2;
constexpr double kSpeedTol = 1e-2;        // extrapolated signal speed vs c
constexpr double kGridDispersionTol = 2e-4;  // measured vs grid-formula omega
constexpr double kTauSpeedTol = 1e-12;    // tau * c vs cell size
constexpr double kPhaseReturnTol = 1e-9;  // carrier phase under d -> d+lambda

double sym_unit(std::mt19937_64& eng) { return 2.0 * unit_double(eng()) - 1.0; }

void require_finite(double value, long step, const char* what) {
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " became non-finite at step " << step;
        throw NumericFailure(step, msg.str());
    }
}

/// Relative drift of a conserved series against its first element; falls back
/// to absolute deviation when the first element is (numerically) zero.
class DriftTracker {
  public:
    void observe(double value, long step, const char* what) {
        require_finite(value, step, what);
        if (!have_first_) {
            first_ = value;
            have_first_ = true;
            return;
        }
        peak_ = std::max(peak_, std::fabs(value - first_));
    }
    double relative_drift() const {
        if (!have_first_) return 0.0;
        const double denom = std::fabs(first_) > 1e-300 ? std::fabs(first_) : 1.0;
        return peak_ / denom;
    }

  private:
    bool have_first_ = false;
    double first_ = 0.0;
    double peak_ = 0.0;
};

/// Unitary projection of one lattice branch onto e^{-i k.x}: reproduces the
/// decompose() amplitude A_{k,s} = sqrt(m/N) sum_n u_{n,s} e^{-i k.x_n}.
struct LatticeProjector {
    std::vector<cplx> phase;
    double scale = 1.0;
    int dim = 1;
    int branch = 0;

    LatticeProjector(const lattice::Lattice& lat, const Idx3& k_index, int branch_) {
        const auto& spec = lat.spec();
        dim = spec.dimension;
        branch = branch_;
        const Vec3 k = lat.wavevector(k_index);
        phase.resize(lat.site_count());
        for (int site = 0; site < lat.site_count(); ++site) {
            const double arg = dot(k, lat.site_position(site));
            phase[site] = cplx(std::cos(arg), -std::sin(arg));
        }
        scale = std::sqrt(spec.mass / lat.site_count());
    }

    cplx project(const std::vector<double>& values) const {
        cplx acc{0.0, 0.0};
        for (std::size_t site = 0; site < phase.size(); ++site)
            acc += values[site * dim + branch] * phase[site];
        return scale * acc;
    }
};

/// Same for the cell net: script-A_{ks} = a^{3/2}/sqrt(cells) *
/// sum_x (A(x).e_s) e^{-i k.x}, matching field_to_modes.
struct NetProjector {
    std::vector<cplx> phase;
    Vec3 pol{0.0, 0.0, 0.0};
    double scale = 1.0;

    NetProjector(const cellnet::CellNet& net, const Idx3& k_index, int polarization) {
        const auto& spec = net.spec();
        const int nax = spec.cells_per_axis;
        Idx3 principal;
        for (int d = 0; d < 3; ++d) {
            const int wrapped = ((k_index[d] % nax) + nax) % nax;
            principal[d] = dft::principal_index(wrapped, nax);
        }
        const Vec3 k = net.wavevector(principal);
        const Vec3 k_hat = (1.0 / norm(k)) * k;
        Vec3 e1, e2;
        cellnet::polarization_basis(k_hat, e1, e2);
        pol = polarization == 0 ? e1 : e2;
        phase.resize(net.cell_count());
        for (long cell = 0; cell < net.cell_count(); ++cell) {
            const Idx3 cc = net.cell_coords(cell);
            const Vec3 x{spec.cell_size * cc[0], spec.cell_size * cc[1], spec.cell_size * cc[2]};
            const double arg = dot(k, x);
            phase[cell] = cplx(std::cos(arg), -std::sin(arg));
        }
        scale = std::pow(spec.cell_size, 1.5) / std::sqrt(static_cast<double>(net.cell_count()));
    }

    cplx project(const std::vector<double>& values) const {
        cplx acc{0.0, 0.0};
        for (std::size_t cell = 0; cell < phase.size(); ++cell) {
            const double comp = values[cell * 3 + 0] * pol[0] + values[cell * 3 + 1] * pol[1] +
                                values[cell * 3 + 2] * pol[2];
            acc += comp * phase[cell];
        }
        return scale * acc;
    }
};

lattice::LatticeState initial_lattice_state(const lattice::Lattice& lat, const ScenarioConfig& cfg) {
    const Excitation& ex = cfg.excitation;
    switch (ex.kind) {
        case Excitation::Kind::none:
            return lattice::zero_state(lat);
        case Excitation::Kind::plane_wave:
            return lattice::excite_plane_wave(lat, ex.k_index, ex.amplitude, ex.phase, ex.branch);
        case Excitation::Kind::occupation:
            return modes::prepare_occupation(lat, ex.k_index, ex.branch, ex.occupation, {cfg.hbar}, 0.0,
                                             ex.phase);
        case Excitation::Kind::random: {
            lattice::LatticeState state = lattice::zero_state(lat);
            std::mt19937_64 eng(cfg.seed);
            for (double& u : state.displacement) u = ex.amplitude * sym_unit(eng);
            for (double& v : state.velocity) v = ex.amplitude * sym_unit(eng);
            return state;
        }
    }
    throw std::logic_error("initial_lattice_state: unhandled excitation kind");
}

cellnet::CellNetField initial_net_field(const cellnet::CellNet& net, const ScenarioConfig& cfg) {
    const Excitation& ex = cfg.excitation;
    switch (ex.kind) {
        case Excitation::Kind::none:
            return cellnet::zero_field(net);
        case Excitation::Kind::plane_wave:
            return cellnet::excite_plane_wave(net, ex.k_index, ex.branch, ex.amplitude, ex.phase);
        case Excitation::Kind::occupation:
            return cellnet::prepare_occupation(net, ex.k_index, ex.branch, ex.occupation, {cfg.hbar},
                                               ex.phase);
        case Excitation::Kind::random: {
            cellnet::CellNetField field = cellnet::zero_field(net);
            std::mt19937_64 eng(cfg.seed);
            for (double& a : field.potential) a = ex.amplitude * sym_unit(eng);
            for (double& ad : field.potential_dot) ad = ex.amplitude * sym_unit(eng);
            return field;
        }
    }
    throw std::logic_error("initial_net_field: unhandled excitation kind");
}

bool single_mode_excitation(const Excitation& ex) {
    return ex.kind == Excitation::Kind::plane_wave || ex.kind == Excitation::Kind::occupation;
}

// ---------------------------------------------------------------------------
// phonon-sim
// ---------------------------------------------------------------------------
RunReport run_phonon_sim(const ScenarioConfig& cfg) {
    const lattice::Lattice lat(*cfg.lattice_spec);
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.1 / lat.omega_max();
    const modes::QuantizationConstants qc{cfg.hbar};

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;
    report.columns = {"time", "kinetic_energy", "potential_energy", "total_energy",
                      "mode_amplitude_re", "mode_amplitude_im"};

    lattice::LatticeState state = initial_lattice_state(lat, cfg);
    const LatticeProjector projector(lat, cfg.excitation.k_index, cfg.excitation.branch);
    DriftTracker drift;

    // Prepare/measure round trip is a property of the quantization maps, so it
    // is evaluated on the state as prepared; the integrator's synchronized
    // energy wobbles by O((omega dt)^2) and is tracked separately below.
    if (cfg.excitation.kind == Excitation::Kind::occupation) {
        const modes::ModeSpectrum initial = modes::decompose(lat, state, qc);
        const auto& entry = initial.at(cfg.excitation.k_index, cfg.excitation.branch);
        report.oracles.push_back(make_oracle("occupation_round_trip", cfg.excitation.occupation,
                                             entry.occupation_raw + 0.5, kRoundTripTol, "rel"));
    }

    lattice::LatticeState prev = state;
    for (long step = 0;; ++step) {
        if (step % cfg.stride == 0 || step == cfg.steps) {
            const lattice::LagrangianParts parts = lattice::lagrangian(lat, state);
            const double total = parts.kinetic + parts.potential;
            require_finite(total, step, "total energy");
            const cplx a = projector.project(state.displacement);
            report.rows.push_back({state.time, parts.kinetic, parts.potential, total, a.real(), a.imag()});
        }
        if (step == cfg.steps) break;
        prev = state;
        lattice::step_inplace(lat, state, dt);
        drift.observe(lattice::staggered_energy(lat, prev, state, dt), step + 1, "conserved energy");
    }

    const modes::ModeSpectrum spectrum = modes::decompose(lat, state, qc);
    double mode_sum = 0.0;
    for (const auto& e : spectrum.entries) mode_sum += e.energy;
    const double total = lattice::total_energy(lat, state);
    const double parseval_err = std::fabs(mode_sum - total) / (std::fabs(total) > 1e-300 ? std::fabs(total) : 1.0);

    report.oracles.push_back(make_oracle("energy_drift_staggered", 0.0, drift.relative_drift(), kDriftTol, "bound"));
    report.oracles.push_back(make_oracle("parseval_energy_identity", 0.0, parseval_err, kParsevalTol, "bound"));
    if (single_mode_excitation(cfg.excitation) && total > 0.0) {
        const double purity =
            modes::pair_energy(spectrum, cfg.excitation.k_index, cfg.excitation.branch) / total;
        report.oracles.push_back(
            make_oracle("single_mode_purity", 1.0, purity, 1.0 - kPurityMinFraction, "abs"));
    }
    if (cfg.excitation.kind == Excitation::Kind::occupation) {
        const auto& entry = spectrum.at(cfg.excitation.k_index, cfg.excitation.branch);
        report.add_summary("occupation_raw_final", entry.occupation_raw);
    }

    const quantization::LadderTotals totals = modes::hamiltonian_total(spectrum, qc);
    report.add_summary("dt", dt);
    report.add_summary("steps", static_cast<double>(cfg.steps));
    report.add_summary("omega_max", lat.omega_max());
    report.add_summary("total_energy_final", total);
    report.add_summary("energy_drift_staggered", drift.relative_drift());
    report.add_summary("parseval_error", parseval_err);
    report.add_summary("ladder_total", totals.ladder_total);
    report.add_summary("zero_point_total", totals.zero_point_total);
    report.add_summary("zero_mode_energy", totals.zero_mode_energy);
    report.add_summary("mode_count", static_cast<double>(totals.mode_count));
    return report;
}

// ---------------------------------------------------------------------------
// photon-field-sim
// ---------------------------------------------------------------------------
RunReport run_photon_field_sim(const ScenarioConfig& cfg) {
    const cellnet::CellNet net(*cfg.net_spec);
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.3 * net.max_stable_dt();
    const cellnet::QuantizationConstants qc{cfg.hbar};

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;
    report.columns = {"time", "field_energy", "field_energy_curl_form", "lagrangian_density",
                      "mode_amplitude_re", "mode_amplitude_im"};

    cellnet::CellNetField field = initial_net_field(net, cfg);
    Idx3 probe = cfg.excitation.k_index;
    if (probe[0] == 0 && probe[1] == 0 && probe[2] == 0) probe = {0, 0, 1};
    const NetProjector projector(net, probe, cfg.excitation.branch);
    DriftTracker drift;

    // As in the lattice runner: the round trip checks the quantization maps on
    // the prepared state; integrator wobble is what the drift oracle tracks.
    if (cfg.excitation.kind == Excitation::Kind::occupation) {
        const cellnet::EmModeSpectrum initial = cellnet::field_to_modes(net, field, qc);
        const auto& entry = initial.at(cfg.excitation.k_index, cfg.excitation.branch);
        report.oracles.push_back(make_oracle("occupation_round_trip", cfg.excitation.occupation,
                                             entry.occupation_raw + 0.5, kRoundTripTol, "rel"));
    }

    cellnet::CellNetField prev = field;
    for (long step = 0;; ++step) {
        if (step % cfg.stride == 0 || step == cfg.steps) {
            const double energy = cellnet::field_energy(net, field);
            require_finite(energy, step, "field energy");
            const double energy_curl = cellnet::field_energy_curl(net, field);
            const auto density = cellnet::em_lagrangian_density(net, field);
            const cplx a = projector.project(field.potential);
            report.rows.push_back({field.time, energy, energy_curl, density.density(), a.real(), a.imag()});
        }
        if (step == cfg.steps) break;
        prev = field;
        cellnet::step_wave_inplace(net, field, dt);
        drift.observe(cellnet::staggered_energy(net, prev, field, dt), step + 1, "conserved energy");
    }

    const cellnet::EmModeSpectrum spectrum = cellnet::field_to_modes(net, field, qc);
    double mode_sum = spectrum.zero_mode_energy + spectrum.longitudinal_residual;
    for (const auto& e : spectrum.entries) mode_sum += e.energy;
    const double total = cellnet::field_energy(net, field);
    const double denom = std::fabs(total) > 1e-300 ? std::fabs(total) : 1.0;
    const double parseval_err = std::fabs(mode_sum - total) / denom;

    report.oracles.push_back(make_oracle("energy_drift_staggered", 0.0, drift.relative_drift(), kDriftTol, "bound"));
    report.oracles.push_back(make_oracle("parseval_energy_identity", 0.0, parseval_err, kParsevalTol, "bound"));
    if (single_mode_excitation(cfg.excitation) && total > 0.0) {
        const double purity =
            cellnet::pair_energy(spectrum, cfg.excitation.k_index, cfg.excitation.branch) / total;
        report.oracles.push_back(
            make_oracle("single_mode_purity", 1.0, purity, 1.0 - kPurityMinFraction, "abs"));
        report.oracles.push_back(make_oracle("transversality_preserved", 0.0,
                                             spectrum.longitudinal_residual / denom, kParsevalTol, "bound"));
    }
    if (cfg.excitation.kind == Excitation::Kind::occupation) {
        const auto& entry = spectrum.at(cfg.excitation.k_index, cfg.excitation.branch);
        report.add_summary("occupation_raw_final", entry.occupation_raw);
    }

    const quantization::LadderTotals totals = cellnet::photon_hamiltonian(spectrum, qc);
    report.add_summary("dt", dt);
    report.add_summary("steps", static_cast<double>(cfg.steps));
    report.add_summary("cfl_bound_dt", net.max_stable_dt());
    report.add_summary("field_energy_final", total);
    report.add_summary("energy_drift_staggered", drift.relative_drift());
    report.add_summary("parseval_error", parseval_err);
    report.add_summary("longitudinal_residual", spectrum.longitudinal_residual);
    report.add_summary("zero_bin_energy", spectrum.zero_mode_energy);
    report.add_summary("ladder_total", totals.ladder_total);
    report.add_summary("zero_point_total", totals.zero_point_total);
    report.add_summary("mode_count", static_cast<double>(totals.mode_count));
    return report;
}

// ---------------------------------------------------------------------------
// dispersion-scan (lattice variant)
// ---------------------------------------------------------------------------
RunReport run_lattice_dispersion_scan(const ScenarioConfig& cfg) {
    const lattice::Lattice lat(*cfg.lattice_spec);
    const auto& spec = lat.spec();
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.1 / lat.omega_max();
    const int nax = spec.sites_per_axis;
    const int m_cap = cfg.max_k_index > 0 ? std::min(cfg.max_k_index, nax - 1) : nax - 1;
    const int branch = cfg.excitation.branch;
    const double amplitude = cfg.excitation.amplitude;

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;
    report.columns = {"axis", "k_index", "wavenumber", "omega_measured", "omega_analytic", "rel_error"};

    double max_rel_error = 0.0;
    for (int axis = 0; axis < spec.dimension; ++axis) {
        for (int m = 1; m <= m_cap; ++m) {
            Idx3 k_index{0, 0, 0};
            k_index[axis] = m;
            const double omega = modes::dispersion(lat, k_index, branch);
            const double period = 2.0 * pi / omega;
            const long steps_total = static_cast<long>(std::ceil(cfg.scan_periods * period / dt));
            const long sample_stride = std::max<long>(1, steps_total / 2048);

            lattice::LatticeState state = lattice::excite_plane_wave(lat, k_index, amplitude, 0.0, branch);
            const LatticeProjector projector(lat, k_index, branch);
            std::vector<cplx> series;
            series.reserve(steps_total / sample_stride + 2);
            for (long step = 0;; ++step) {
                if (step % sample_stride == 0) series.push_back(projector.project(state.displacement));
                if (step >= steps_total) break;
                lattice::step_inplace(lat, state, dt);
            }
            require_finite(series.back().real(), steps_total, "mode amplitude");

            const double omega_measured = spectral::peak_frequency(series, dt * sample_stride);
            const double rel_error = std::fabs(omega_measured - omega) / omega;
            max_rel_error = std::max(max_rel_error, rel_error);
            report.rows.push_back({static_cast<double>(axis), static_cast<double>(m),
                                   norm(lat.wavevector(k_index)), omega_measured, omega, rel_error});
        }
    }

    report.oracles.push_back(
        make_oracle("dispersion_max_rel_error", 0.0, max_rel_error, kDispersionTol, "bound"));
    report.add_summary("dt", dt);
    report.add_summary("sampled_wavevectors", static_cast<double>(report.rows.size()));
    report.add_summary("periods_per_wavevector", cfg.scan_periods);
    report.add_summary("dispersion_max_rel_error", max_rel_error);
    return report;
}

// ---------------------------------------------------------------------------
// dispersion-scan (cell-net variant): refinement study of the signal speed
// ---------------------------------------------------------------------------
RunReport run_net_dispersion_scan(const ScenarioConfig& cfg) {
    const cellnet::CellNetSpec base = *cfg.net_spec;
    const double c = base.light_speed;
    const double a = base.cell_size;
    Idx3 probe = cfg.excitation.k_index;
    if (probe[0] == 0 && probe[1] == 0 && probe[2] == 0) probe = {0, 0, 1};
    const int polarization = cfg.excitation.branch;
    const double amplitude = cfg.excitation.amplitude;

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;
    report.columns = {"cells_per_axis", "ka",           "omega_measured", "omega_grid",
                      "omega_continuum", "speed_measured", "speed_rel_error"};

    std::vector<double> log_ka, log_err, speeds, kas;
    double max_grid_mismatch = 0.0;
    for (int nax : cfg.refine) {
        cellnet::CellNetSpec spec = base;
        spec.cells_per_axis = nax;
        const cellnet::CellNet net(spec);
        Idx3 bin;
        for (int d = 0; d < 3; ++d) bin[d] = ((probe[d] % nax) + nax) % nax;

        const double dt = cfg.dt > 0.0 ? cfg.dt : 0.05 * a / c;
        Idx3 principal;
        for (int d = 0; d < 3; ++d) principal[d] = dft::principal_index(bin[d], nax);
        const double k_mag = norm(net.wavevector(principal));
        const double omega_grid = c * net.grid_wavenumber(bin);
        const double omega_continuum = c * k_mag;
        const double period = 2.0 * pi / omega_grid;
        const long steps_total = static_cast<long>(std::ceil(4.0 * period / dt));
        const long sample_stride = std::max<long>(1, steps_total / 4000);

        cellnet::CellNetField field = cellnet::excite_plane_wave(net, probe, polarization, amplitude, 0.0);
        const NetProjector projector(net, probe, polarization);
        std::vector<cplx> series;
        series.reserve(steps_total / sample_stride + 2);
        for (long step = 0;; ++step) {
            if (step % sample_stride == 0) series.push_back(projector.project(field.potential));
            if (step >= steps_total) break;
            cellnet::step_wave_inplace(net, field, dt);
        }
        require_finite(series.back().real(), steps_total, "mode amplitude");

        const double omega_measured = spectral::phase_slope_frequency(series, dt * sample_stride);
        const double speed = omega_measured / k_mag;
        const double speed_err = std::fabs(speed - c) / c;
        const double ka = k_mag * a;
        max_grid_mismatch =
            std::max(max_grid_mismatch, std::fabs(omega_measured - omega_grid) / omega_grid);

        report.rows.push_back({static_cast<double>(nax), ka, omega_measured, omega_grid, omega_continuum,
                               speed, speed_err});
        log_ka.push_back(std::log(ka));
        log_err.push_back(std::log(std::max(speed_err, 1e-300)));
        speeds.push_back(speed);
        kas.push_back(ka);
    }

    // Least-squares slope of ln(error) against ln(ka): the convergence order.
    const std::size_t n = log_ka.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += log_ka[i];
        sy += log_err[i];
        sxx += log_ka[i] * log_ka[i];
        sxy += log_ka[i] * log_err[i];
    }
    const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    // Richardson extrapolation of the two finest grids at the fitted order 2.
    const double r = kas[n - 2] / kas[n - 1];
    const double speed_extrapolated = (r * r * speeds[n - 1] - speeds[n - 2]) / (r * r - 1.0);

    report.oracles.push_back(make_oracle("convergence_order", kOrderExpected, order, kOrderTol, "abs"));
    report.oracles.push_back(make_oracle("extrapolated_signal_speed", c, speed_extrapolated, kSpeedTol, "rel"));
    report.oracles.push_back(
        make_oracle("grid_dispersion_match", 0.0, max_grid_mismatch, kGridDispersionTol, "bound"));
    report.add_summary("light_speed", c);
    report.add_summary("convergence_order", order);
    report.add_summary("speed_extrapolated", speed_extrapolated);
    report.add_summary("speed_rel_error_extrapolated", std::fabs(speed_extrapolated - c) / c);
    report.add_summary("grid_dispersion_max_mismatch", max_grid_mismatch);
    return report;
}

// ---------------------------------------------------------------------------
// quantize-report
// ---------------------------------------------------------------------------
RunReport run_quantize_report(const ScenarioConfig& cfg) {
    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;

    if (cfg.lattice_spec) {
        const lattice::Lattice lat(*cfg.lattice_spec);
        const modes::QuantizationConstants qc{cfg.hbar};
        const lattice::LatticeState state = initial_lattice_state(lat, cfg);
        const modes::ModeSpectrum spectrum = modes::decompose(lat, state, qc);

        report.columns = {"k_index_x", "k_index_y", "k_index_z", "branch",
                          "omega",     "energy",    "occupation_raw", "occupation_rounded"};
        double mode_sum = 0.0;
        for (const auto& e : spectrum.entries) {
            mode_sum += e.energy;
            const double rounded =
                e.zero_mode ? 0.0 : static_cast<double>(quantization::occupation_rounded(e.occupation_raw));
            report.rows.push_back({static_cast<double>(e.k_index[0]), static_cast<double>(e.k_index[1]),
                                   static_cast<double>(e.k_index[2]), static_cast<double>(e.branch),
                                   e.omega, e.energy, e.occupation_raw, rounded});
        }
        const double total = lattice::total_energy(lat, state);
        const double denom = std::fabs(total) > 1e-300 ? std::fabs(total) : 1.0;
        const double parseval_err = std::fabs(mode_sum - total) / denom;
        const quantization::LadderTotals totals = modes::hamiltonian_total(spectrum, qc);

        report.oracles.push_back(
            make_oracle("parseval_energy_identity", 0.0, parseval_err, kParsevalTol, "bound"));
        if (cfg.excitation.kind == Excitation::Kind::occupation) {
            const auto& entry = spectrum.at(cfg.excitation.k_index, cfg.excitation.branch);
            report.oracles.push_back(make_oracle("occupation_round_trip", cfg.excitation.occupation,
                                                 entry.occupation_raw + 0.5, kRoundTripTol, "rel"));
        }
        if (cfg.excitation.kind == Excitation::Kind::none) {
            report.oracles.push_back(make_oracle("vacuum_ladder_equals_zero_point", totals.zero_point_total,
                                                 totals.ladder_total, 1e-12, "rel"));
        }
        report.add_summary("hbar", cfg.hbar);
        report.add_summary("total_energy", total);
        report.add_summary("mode_energy_sum", mode_sum);
        report.add_summary("ladder_total", totals.ladder_total);
        report.add_summary("zero_point_total", totals.zero_point_total);
        report.add_summary("zero_mode_energy", totals.zero_mode_energy);
        report.add_summary("mode_count", static_cast<double>(totals.mode_count));
        return report;
    }

    const cellnet::CellNet net(*cfg.net_spec);
    const cellnet::QuantizationConstants qc{cfg.hbar};
    const cellnet::CellNetField field = initial_net_field(net, cfg);
    const cellnet::EmModeSpectrum spectrum = cellnet::field_to_modes(net, field, qc);

    report.columns = {"k_index_x", "k_index_y",  "k_index_z",      "polarization",      "omega",
                      "omega_grid", "energy",    "occupation_raw", "occupation_rounded"};
    double mode_sum = spectrum.zero_mode_energy + spectrum.longitudinal_residual;
    for (const auto& e : spectrum.entries) {
        mode_sum += e.energy;
        report.rows.push_back({static_cast<double>(e.k_index[0]), static_cast<double>(e.k_index[1]),
                               static_cast<double>(e.k_index[2]), static_cast<double>(e.polarization),
                               e.omega, e.omega_grid, e.energy, e.occupation_raw,
                               static_cast<double>(quantization::occupation_rounded(e.occupation_raw))});
    }
    const double total = cellnet::field_energy(net, field);
    const double denom = std::fabs(total) > 1e-300 ? std::fabs(total) : 1.0;
    const double parseval_err = std::fabs(mode_sum - total) / denom;
    const quantization::LadderTotals totals = cellnet::photon_hamiltonian(spectrum, qc);

    report.oracles.push_back(make_oracle("parseval_energy_identity", 0.0, parseval_err, kParsevalTol, "bound"));
    if (cfg.excitation.kind == Excitation::Kind::occupation) {
        const auto& entry = spectrum.at(cfg.excitation.k_index, cfg.excitation.branch);
        report.oracles.push_back(make_oracle("occupation_round_trip", cfg.excitation.occupation,
                                             entry.occupation_raw + 0.5, kRoundTripTol, "rel"));
    }
    report.add_summary("hbar", cfg.hbar);
    report.add_summary("field_energy", total);
    report.add_summary("mode_energy_sum", mode_sum);
    report.add_summary("longitudinal_residual", spectrum.longitudinal_residual);
    report.add_summary("zero_bin_energy", spectrum.zero_mode_energy);
    report.add_summary("ladder_total", totals.ladder_total);
    report.add_summary("zero_point_total", totals.zero_point_total);
    report.add_summary("mode_count", static_cast<double>(totals.mode_count));
    return report;
}

// ---------------------------------------------------------------------------
// hop-trace
// ---------------------------------------------------------------------------
RunReport run_hop_trace(const ScenarioConfig& cfg) {
    const PhotonParams& ph = cfg.photon;
    const photon::PhotonCore core =
        photon::make_core(ph.origin, ph.wavelength, ph.period, ph.emission_time);
    const double a = ph.cell_size;
    const double c = core.speed();

    const photon::HopSchedule schedule = photon::hop_schedule(core, a, ph.duration);
    const std::vector<photon::Hop> crossings = photon::dda_traversal(core, a, ph.duration);

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;
    report.columns = {"hop", "cell_x", "cell_y", "cell_z", "entry_time_s", "radius_cm", "carrier_phase"};
    for (std::size_t i = 0; i < schedule.hops.size(); ++i) {
        const photon::Hop& hop = schedule.hops[i];
        const double d = photon::path_length(core, hop.entry_time);
        report.rows.push_back({static_cast<double>(i), static_cast<double>(hop.cell[0]),
                               static_cast<double>(hop.cell[1]), static_cast<double>(hop.cell[2]),
                               hop.entry_time, norm(core.position) + d,
                               photon::phase_at_distance(core, d)});
    }
    RunReport::Table table;
    table.name = "boundary_crossings";
    table.columns = {"crossing", "cell_x", "cell_y", "cell_z", "entry_time_s"};
    for (std::size_t i = 0; i < crossings.size(); ++i) {
        const photon::Hop& hop = crossings[i];
        table.rows.push_back({static_cast<double>(i), static_cast<double>(hop.cell[0]),
                              static_cast<double>(hop.cell[1]), static_cast<double>(hop.cell[2]),
                              hop.entry_time});
    }
    report.tables.push_back(std::move(table));

    // Dwell-time identity tau * c = a.
    report.oracles.push_back(
        make_oracle("dwell_time_speed_identity", a, schedule.tau * c, kTauSpeedTol, "rel"));
    // Carrier phase is periodic in exactly one wavelength of path.
    const double d_ref = 7.25 * ph.wavelength;
    const double phase_gap = std::fabs(photon::phase_at_distance(core, d_ref + ph.wavelength) -
                                       photon::phase_at_distance(core, d_ref));
    report.oracles.push_back(make_oracle("phase_period_one_wavelength", 0.0, phase_gap, kPhaseReturnTol, "abs"));
    // The uniform schedule never strays more than one cell from the literal
    // geometric traversal at equal times.
    double max_dev = 0.0;
    std::size_t j = 0;
    for (const photon::Hop& hop : schedule.hops) {
        while (j + 1 < crossings.size() &&
               crossings[j + 1].entry_time <= hop.entry_time + schedule.tau * 1e-9)
            ++j;
        if (crossings.empty()) break;
        for (int d = 0; d < 3; ++d)
            max_dev = std::max(max_dev, std::fabs(static_cast<double>(hop.cell[d] - crossings[j].cell[d])));
    }
    report.oracles.push_back(make_oracle("schedule_matches_traversal", 0.0, max_dev, 1.0, "bound"));
    // Hop count tracks path length / cell size.
    report.oracles.push_back(make_oracle("hop_count_vs_path", c * ph.duration / a + 1.0,
                                         static_cast<double>(schedule.hops.size()), 1.0, "abs"));

    report.add_summary("cell_size_cm", a);
    report.add_summary("speed_cm_per_s", c);
    report.add_summary("dwell_time_s", schedule.tau);
    report.add_summary("cells_per_wavelength", schedule.cells_per_wavelength);
    report.add_summary("hop_count", static_cast<double>(schedule.hops.size()));
    report.add_summary("crossing_count", static_cast<double>(crossings.size()));
    report.add_summary("duration_s", ph.duration);
    if (cfg.strict)
        report.notes.push_back(
            "strict queries: positions inside the first dwell interval are refused, not extrapolated");
    return report;
}

// ---------------------------------------------------------------------------
// lifetime-calc
// ---------------------------------------------------------------------------
RunReport run_lifetime_calc(const ScenarioConfig& cfg) {
    const PhotonParams& ph = cfg.photon;
    photon::LifetimeReferences refs;
    refs.cells_per_wavelength = ph.reference_n;
    refs.lifetime = ph.reference_tau;
    const photon::LifetimeReport rep =
        photon::lifetime_report(ph.wavelength, ph.period, ph.cell_size, ph.light_speed, refs);

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.seed = cfg.seed;
    report.columns = {"wavelength_cm",       "period_s",   "cell_size_cm",    "light_speed_cm_per_s",
                      "cells_per_wavelength", "lifetime_s", "frequency_per_s", "implied_speed_cm_per_s",
                      "consistency_ratio"};
    report.rows.push_back({ph.wavelength, ph.period, ph.cell_size, ph.light_speed,
                           rep.cells_per_wavelength, rep.lifetime, rep.frequency, rep.implied_speed,
                           rep.consistency_ratio});
    report.add_summary("cells_per_wavelength", rep.cells_per_wavelength);
    report.add_summary("lifetime_s", rep.lifetime);
    report.add_summary("frequency_per_s", rep.frequency);
    report.add_summary("implied_speed_cm_per_s", rep.implied_speed);
    report.add_summary("consistency_ratio", rep.consistency_ratio);
    for (const std::string& warning : rep.warnings) report.notes.push_back(warning);
    return report;
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.kind) {
        case ScenarioKind::phonon_sim: return run_phonon_sim(cfg);
        case ScenarioKind::photon_field_sim: return run_photon_field_sim(cfg);
        case ScenarioKind::dispersion_scan:
            return cfg.lattice_spec ? run_lattice_dispersion_scan(cfg) : run_net_dispersion_scan(cfg);
        case ScenarioKind::quantize_report: return run_quantize_report(cfg);
        case ScenarioKind::hop_trace: return run_hop_trace(cfg);
        case ScenarioKind::lifetime_calc: return run_lifetime_calc(cfg);
    }
    throw std::logic_error("run_scenario: unhandled scenario kind");
}

}  // namespace cellwave::harness
