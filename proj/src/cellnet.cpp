#include "cellwave/cellnet.hpp"

#include <cmath>
#include <sstream>

#include "cellwave/dft.hpp"

namespace cellwave::cellnet {

void CellNetSpec::validate() const {
    std::ostringstream err;
    if (cells_per_axis < 4) err << "cells_per_axis must be >= 4 (got " << cells_per_axis << "); ";
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) err << "cell_size must be finite and > 0; ";
    if (!(light_speed > 0.0) || !std::isfinite(light_speed)) err << "light_speed must be finite and > 0; ";
    if (!periodic) err << "only periodic boundaries are supported; ";
    std::string msg = err.str();
    if (!msg.empty()) throw std::invalid_argument("CellNetSpec: " + msg);
}

CellNet::CellNet(const CellNetSpec& spec) : spec_(spec) {
    spec_.validate();
    const long n = spec_.cells_per_axis;
    cells_ = n * n * n;
}

double CellNet::total_volume() const {
    const double a = spec_.cell_size;
    return static_cast<double>(cells_) * a * a * a;
}

double CellNet::max_stable_dt() const {
    return spec_.cell_size / (spec_.light_speed * std::sqrt(3.0));
}

long CellNet::cell_index(const Idx3& c) const {
    const long n = spec_.cells_per_axis;
    return (static_cast<long>(c[0]) * n + c[1]) * n + c[2];
}

Idx3 CellNet::cell_coords(long cell) const {
    const long n = spec_.cells_per_axis;
    Idx3 c;
    c[2] = static_cast<int>(cell % n);
    cell /= n;
    c[1] = static_cast<int>(cell % n);
    c[0] = static_cast<int>(cell / n);
    return c;
}

Vec3 CellNet::wavevector(const Idx3& m) const {
    const double box = spec_.cells_per_axis * spec_.cell_size;
    return {2.0 * pi * m[0] / box, 2.0 * pi * m[1] / box, 2.0 * pi * m[2] / box};
}

double CellNet::grid_wavenumber(const Idx3& m) const {
    const int n = spec_.cells_per_axis;
    double s = 0.0;
    for (int d = 0; d < 3; ++d) {
        double half = std::sin(pi * static_cast<double>(m[d]) / n);
        s += half * half;
    }
    return (2.0 / spec_.cell_size) * std::sqrt(s);
}

CellNet build_cellnet(const CellNetSpec& spec) { return CellNet(spec); }

CellNetField zero_field(const CellNet& net) {
    CellNetField f;
    f.potential.assign(net.value_count(), 0.0);
    f.potential_dot.assign(net.value_count(), 0.0);
    return f;
}

namespace {

struct WrapTables {
    std::vector<int> next, prev;
    explicit WrapTables(int n) : next(n), prev(n) {
        for (int i = 0; i < n; ++i) {
            next[i] = (i + 1) % n;
            prev[i] = (i + n - 1) % n;
        }
    }
};

inline long vidx(int n, int x, int y, int z) { return ((static_cast<long>(x) * n + y) * n + z) * 3; }

}  // namespace

std::vector<double> curl_central(const CellNet& net, const std::vector<double>& potential) {
    const int n = net.spec().cells_per_axis;
    const double inv2a = 1.0 / (2.0 * net.spec().cell_size);
    WrapTables w(n);
    std::vector<double> out(net.value_count(), 0.0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const double* axp = &potential[vidx(n, w.next[x], y, z)];
                const double* axm = &potential[vidx(n, w.prev[x], y, z)];
                const double* ayp = &potential[vidx(n, x, w.next[y], z)];
                const double* aym = &potential[vidx(n, x, w.prev[y], z)];
                const double* azp = &potential[vidx(n, x, y, w.next[z])];
                const double* azm = &potential[vidx(n, x, y, w.prev[z])];
                double* c = &out[vidx(n, x, y, z)];
                c[0] = ((ayp[2] - aym[2]) - (azp[1] - azm[1])) * inv2a;
                c[1] = ((azp[0] - azm[0]) - (axp[2] - axm[2])) * inv2a;
                c[2] = ((axp[1] - axm[1]) - (ayp[0] - aym[0])) * inv2a;
            }
    return out;
}

LagrangianDensityParts em_lagrangian_density(const CellNet& net, const CellNetField& field) {
    const double c = net.spec().light_speed;
    const double a = net.spec().cell_size;
    const double cell_fraction = a * a * a / net.total_volume();  // = 1/N^3
    LagrangianDensityParts parts;
    double kin = 0.0;
    for (double v : field.potential_dot) kin += v * v;
    parts.kinetic_term = kin / (c * c) * cell_fraction / (8.0 * pi);
    std::vector<double> curl = curl_central(net, field.potential);
    double cu = 0.0;
    for (double v : curl) cu += v * v;
    parts.curl_term = cu * cell_fraction / (8.0 * pi);
    return parts;
}

namespace {

/// sum_cells sum_axes (D+_j u).(D+_j w) with forward differences D+_j f =
/// (f(+e_j) - f)/a: the bilinear form of the 7-point Laplacian.
double gradient_bilinear(const CellNet& net, const std::vector<double>& u, const std::vector<double>& w) {
    const int n = net.spec().cells_per_axis;
    const double inv_a = 1.0 / net.spec().cell_size;
    WrapTables wt(n);
    double acc = 0.0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const long i = vidx(n, x, y, z);
                const long nx = vidx(n, wt.next[x], y, z);
                const long ny = vidx(n, x, wt.next[y], z);
                const long nz = vidx(n, x, y, wt.next[z]);
                for (int comp = 0; comp < 3; ++comp) {
                    acc += (u[nx + comp] - u[i + comp]) * (w[nx + comp] - w[i + comp]);
                    acc += (u[ny + comp] - u[i + comp]) * (w[ny + comp] - w[i + comp]);
                    acc += (u[nz + comp] - u[i + comp]) * (w[nz + comp] - w[i + comp]);
                }
            }
    return acc * inv_a * inv_a;
}

}  // namespace

double field_energy(const CellNet& net, const CellNetField& field) {
    const double c = net.spec().light_speed;
    const double a = net.spec().cell_size;
    double kin = 0.0;
    for (double v : field.potential_dot) kin += v * v;
    double grad = gradient_bilinear(net, field.potential, field.potential);
    return (a * a * a) / (8.0 * pi) * (kin / (c * c) + grad);
}

double field_energy_curl(const CellNet& net, const CellNetField& field) {
    const double c = net.spec().light_speed;
    const double a = net.spec().cell_size;
    double kin = 0.0;
    for (double v : field.potential_dot) kin += v * v;
    std::vector<double> curl = curl_central(net, field.potential);
    double cu = 0.0;
    for (double v : curl) cu += v * v;
    return (a * a * a) / (8.0 * pi) * (kin / (c * c) + cu);
}

namespace {

void wave_accelerations(const CellNet& net, const std::vector<double>& potential, std::vector<double>& acc) {
    const int n = net.spec().cells_per_axis;
    const double a = net.spec().cell_size;
    const double c = net.spec().light_speed;
    const double scale = c * c / (a * a);
    WrapTables w(n);
    acc.assign(potential.size(), 0.0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const long i = vidx(n, x, y, z);
                const long xp = vidx(n, w.next[x], y, z), xm = vidx(n, w.prev[x], y, z);
                const long yp = vidx(n, x, w.next[y], z), ym = vidx(n, x, w.prev[y], z);
                const long zp = vidx(n, x, y, w.next[z]), zm = vidx(n, x, y, w.prev[z]);
                for (int comp = 0; comp < 3; ++comp) {
                    acc[i + comp] = scale * (potential[xp + comp] + potential[xm + comp] +
                                             potential[yp + comp] + potential[ym + comp] +
                                             potential[zp + comp] + potential[zm + comp] -
                                             6.0 * potential[i + comp]);
                }
            }
}

}  // namespace

void step_wave_inplace(const CellNet& net, CellNetField& field, double dt) {
    const double bound = net.max_stable_dt();
    if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
        std::ostringstream err;
        err << "step_wave: dt = " << dt << " violates the CFL bound 0 < dt <= a/(c*sqrt(3)) = " << bound;
        throw std::invalid_argument(err.str());
    }
    static thread_local std::vector<double> acc0, acc1;
    wave_accelerations(net, field.potential, acc0);
    const std::size_t m = field.potential.size();
    for (std::size_t i = 0; i < m; ++i)
        field.potential[i] += dt * field.potential_dot[i] + 0.5 * dt * dt * acc0[i];
    wave_accelerations(net, field.potential, acc1);
    for (std::size_t i = 0; i < m; ++i) field.potential_dot[i] += 0.5 * dt * (acc0[i] + acc1[i]);
    field.time += dt;
}

CellNetField step_wave(const CellNet& net, const CellNetField& field, double dt) {
    CellNetField out = field;
    step_wave_inplace(net, out, dt);
    return out;
}

double staggered_energy(const CellNet& net, const CellNetField& before, const CellNetField& after,
                        double dt) {
    const double c = net.spec().light_speed;
    const double a = net.spec().cell_size;
    double kin = 0.0;
    for (std::size_t i = 0; i < before.potential.size(); ++i) {
        double vh = (after.potential[i] - before.potential[i]) / dt;
        kin += vh * vh;
    }
    double grad = gradient_bilinear(net, before.potential, after.potential);
    return (a * a * a) / (8.0 * pi) * (kin / (c * c) + grad);
}

void polarization_basis(const Vec3& k_hat, Vec3& e1, Vec3& e2) {
    Vec3 ref{0.0, 0.0, 1.0};
    if (std::abs(dot(k_hat, ref)) > 0.9) ref = {1.0, 0.0, 0.0};  // documented fallback
    Vec3 raw = ref - dot(ref, k_hat) * k_hat;
    double len = norm(raw);
    e1 = (1.0 / len) * raw;
    e2 = cross(k_hat, e1);
}

std::size_t EmModeSpectrum::flat_bin(const Idx3& k_index) const {
    const int n = source.cells_per_axis;
    long flat = 0;
    for (int d = 0; d < 3; ++d) flat = flat * n + ((k_index[d] % n) + n) % n;
    return static_cast<std::size_t>(flat);
}

const EmModeEntry& EmModeSpectrum::at(const Idx3& k_index, int polarization) const {
    if (polarization < 0 || polarization > 1)
        throw std::invalid_argument("EmModeSpectrum: polarization must be 0 or 1");
    std::size_t flat = flat_bin(k_index);
    if (flat == 0) throw std::invalid_argument("EmModeSpectrum: k = 0 is the zero mode (no transverse split)");
    return entries.at((flat - 1) * 2 + polarization);
}

EmModeSpectrum field_to_modes(const CellNet& net, const CellNetField& field,
                              const QuantizationConstants& qc) {
    const auto& spec = net.spec();
    const int n = spec.cells_per_axis;
    const long cells = net.cell_count();
    const double a = spec.cell_size;
    const double c = spec.light_speed;
    const double phys_scale = std::pow(a, 1.5);  // 1/sqrt(V) continuum normalization

    EmModeSpectrum sp;
    sp.source = spec;
    sp.hbar = qc.hbar;
    sp.entries.resize(static_cast<std::size_t>(cells - 1) * 2);
    sp.longitudinal_energy.assign(cells - 1, 0.0);

    // unitary DFT of each Cartesian component of A and Adot
    std::array<std::vector<cplx>, 3> ak, adk;
    for (int comp = 0; comp < 3; ++comp) {
        ak[comp].resize(cells);
        adk[comp].resize(cells);
        for (long i = 0; i < cells; ++i) {
            ak[comp][i] = field.potential[i * 3 + comp];
            adk[comp][i] = field.potential_dot[i * 3 + comp];
        }
        dft::transform_3d(ak[comp], n, false);
        dft::transform_3d(adk[comp], n, false);
    }

    const double pref = 1.0 / (8.0 * pi);
    for (long flat = 0; flat < cells; ++flat) {
        Idx3 bin = net.cell_coords(flat);
        if (flat == 0) {
            double kin = 0.0;
            for (int comp = 0; comp < 3; ++comp)
                kin += std::norm(phys_scale * adk[comp][0]);
            sp.zero_mode_energy = pref * kin / (c * c);
            continue;
        }
        Idx3 principal;
        for (int d = 0; d < 3; ++d) principal[d] = dft::principal_index(bin[d], n);
        Vec3 k = net.wavevector(principal);
        const double kmag = norm(k);
        const double kgrid = net.grid_wavenumber(bin);
        Vec3 k_hat = (1.0 / kmag) * k;
        Vec3 e1, e2;
        polarization_basis(k_hat, e1, e2);

        cplx av[3], adv[3];
        for (int comp = 0; comp < 3; ++comp) {
            av[comp] = phys_scale * ak[comp][flat];
            adv[comp] = phys_scale * adk[comp][flat];
        }
        auto project = [&](const Vec3& e, const cplx* v) {
            return e[0] * v[0] + e[1] * v[1] + e[2] * v[2];
        };

        const Vec3* basis[2] = {&e1, &e2};
        for (int s = 0; s < 2; ++s) {
            EmModeEntry e;
            e.k_index = bin;
            e.k = k;
            e.polarization = s;
            e.omega = c * kmag;
            e.omega_grid = c * kgrid;
            e.amplitude = project(*basis[s], av);
            cplx adot = project(*basis[s], adv);
            e.momentum = adot / (4.0 * pi * c * c);
            e.energy = pref * (std::norm(adot) / (c * c) + kgrid * kgrid * std::norm(e.amplitude));
            e.occupation_raw = quantization::occupation_raw(e.energy, e.omega_grid, qc.hbar);
            sp.entries[(static_cast<std::size_t>(flat) - 1) * 2 + s] = e;
        }
        cplx al = project(k_hat, av);
        cplx adl = project(k_hat, adv);
        double elong = pref * (std::norm(adl) / (c * c) + kgrid * kgrid * std::norm(al));
        sp.longitudinal_energy[flat - 1] = elong;
        sp.longitudinal_residual += elong;
    }
    return sp;
}

quantization::Ladder photon_occupation(const EmModeEntry& entry, const QuantizationConstants& qc) {
    return quantization::ladder_from_energy(entry.energy, entry.omega_grid, qc.hbar);
}

double pair_energy(const EmModeSpectrum& spectrum, const Idx3& k_index, int polarization) {
    const int n = spectrum.source.cells_per_axis;
    const auto& e = spectrum.at(k_index, polarization);
    Idx3 partner;
    bool self = true;
    for (int d = 0; d < 3; ++d) {
        int bin = ((k_index[d] % n) + n) % n;
        partner[d] = bin == 0 ? 0 : n - bin;
        if (partner[d] != bin) self = false;
    }
    if (self) return e.energy;
    return e.energy + spectrum.at(partner, polarization).energy;
}

double pair_occupation_raw(const EmModeSpectrum& spectrum, const Idx3& k_index, int polarization) {
    const auto& e = spectrum.at(k_index, polarization);
    return quantization::occupation_raw(pair_energy(spectrum, k_index, polarization), e.omega_grid,
                                        spectrum.hbar);
}

quantization::LadderTotals photon_hamiltonian(const EmModeSpectrum& spectrum,
                                              const QuantizationConstants& qc) {
    quantization::LadderTotals rep;
    for (const auto& e : spectrum.entries) {
        long long nr = quantization::occupation_rounded(
            quantization::occupation_raw(e.energy, e.omega_grid, qc.hbar));
        rep.ladder_total += quantization::ladder_energy(nr, e.omega, qc.hbar);
        rep.zero_point_total += quantization::zero_point(e.omega, qc.hbar);
        rep.mode_count += 1;
    }
    rep.zero_mode_energy = spectrum.zero_mode_energy;
    return rep;
}

double amplitude_coefficient(double omega, double hbar, double c) {
    if (!(omega > 0.0)) throw std::domain_error("amplitude_coefficient: omega must be > 0");
    return std::sqrt(2.0 * pi * hbar * c * c / omega);
}

double momentum_coefficient(double omega, double hbar, double c) {
    if (!(omega > 0.0)) throw std::domain_error("momentum_coefficient: omega must be > 0");
    return std::sqrt(hbar * omega / (8.0 * pi * c * c));
}

CellNetField prepare_occupation(const CellNet& net, const Idx3& k_index, int polarization, double n,
                                const QuantizationConstants& qc, double theta) {
    const auto& spec = net.spec();
    if (!(n >= 0.0) || !std::isfinite(n))
        throw std::invalid_argument("prepare_occupation: occupation must be finite and >= 0");
    if (polarization < 0 || polarization > 1)
        throw std::invalid_argument("prepare_occupation: polarization must be 0 or 1");
    const int nax = spec.cells_per_axis;
    const long cells = net.cell_count();
    const double c = spec.light_speed;
    const double phys_scale = std::pow(spec.cell_size, 1.5);

    Idx3 bin, partner;
    bool self = true;
    for (int d = 0; d < 3; ++d) {
        bin[d] = ((k_index[d] % nax) + nax) % nax;
        partner[d] = bin[d] == 0 ? 0 : nax - bin[d];
        if (partner[d] != bin[d]) self = false;
    }
    long flat = (static_cast<long>(bin[0]) * nax + bin[1]) * nax + bin[2];
    if (flat == 0) throw std::domain_error("prepare_occupation: k = 0 carries no transverse mode");

    const double kgrid = net.grid_wavenumber(bin);
    const double omega_grid = c * kgrid;
    Idx3 principal;
    for (int d = 0; d < 3; ++d) principal[d] = dft::principal_index(bin[d], nax);
    Vec3 k = net.wavevector(principal);
    Vec3 k_hat = (1.0 / norm(k)) * k;
    Vec3 e1, e2;
    polarization_basis(k_hat, e1, e2);
    const Vec3& pol = polarization == 0 ? e1 : e2;

    const double amp = amplitude_coefficient(omega_grid, qc.hbar, c) * 2.0 * std::sqrt(n);
    const double a0 = amp * std::cos(theta);
    const double ad0 = -omega_grid * amp * std::sin(theta);

    long pflat = (static_cast<long>(partner[0]) * nax + partner[1]) * nax + partner[2];
    CellNetField out = zero_field(net);
    std::vector<cplx> work(cells);
    for (int comp = 0; comp < 3; ++comp) {
        // potential component
        std::fill(work.begin(), work.end(), cplx{0.0, 0.0});
        work[flat] = pol[comp] * a0 / phys_scale;
        if (!self) work[pflat] = std::conj(work[flat]);
        dft::transform_3d(work, nax, true);
        for (long i = 0; i < cells; ++i) out.potential[i * 3 + comp] = work[i].real();
        // velocity component
        std::fill(work.begin(), work.end(), cplx{0.0, 0.0});
        work[flat] = pol[comp] * ad0 / phys_scale;
        if (!self) work[pflat] = std::conj(work[flat]);
        dft::transform_3d(work, nax, true);
        for (long i = 0; i < cells; ++i) out.potential_dot[i * 3 + comp] = work[i].real();
    }
    return out;
}

CellNetField excite_plane_wave(const CellNet& net, const Idx3& k_index, int polarization, double amplitude,
                               double phase) {
    const auto& spec = net.spec();
    if (polarization < 0 || polarization > 1)
        throw std::invalid_argument("excite_plane_wave: polarization must be 0 or 1");
    if (!std::isfinite(amplitude) || !std::isfinite(phase))
        throw std::invalid_argument("excite_plane_wave: amplitude and phase must be finite");
    const int nax = spec.cells_per_axis;
    Idx3 bin;
    for (int d = 0; d < 3; ++d) bin[d] = ((k_index[d] % nax) + nax) % nax;
    if (bin[0] == 0 && bin[1] == 0 && bin[2] == 0)
        throw std::domain_error("excite_plane_wave: k = 0 carries no transverse mode");

    const double omega_grid = spec.light_speed * net.grid_wavenumber(bin);
    Idx3 principal;
    for (int d = 0; d < 3; ++d) principal[d] = dft::principal_index(bin[d], nax);
    const Vec3 k = net.wavevector(principal);
    const Vec3 k_hat = (1.0 / norm(k)) * k;
    Vec3 e1, e2;
    polarization_basis(k_hat, e1, e2);
    const Vec3& pol = polarization == 0 ? e1 : e2;

    CellNetField out = zero_field(net);
    for (long cell = 0; cell < net.cell_count(); ++cell) {
        const Idx3 cc = net.cell_coords(cell);
        const Vec3 x{spec.cell_size * cc[0], spec.cell_size * cc[1], spec.cell_size * cc[2]};
        const double arg = dot(k, x) + phase;
        const double c0 = amplitude * std::cos(arg);
        const double d0 = amplitude * omega_grid * std::sin(arg);
        for (int comp = 0; comp < 3; ++comp) {
            out.potential[cell * 3 + comp] = c0 * pol[comp];
            out.potential_dot[cell * 3 + comp] = d0 * pol[comp];
        }
    }
    return out;
}

}  // namespace cellwave::cellnet
