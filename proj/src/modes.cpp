#include "cellwave/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "cellwave/dft.hpp"

namespace cellwave::modes {

double dispersion(const lattice::LatticeSpec& spec, const Vec3& k, int branch) {
    spec.validate();
    if (branch < 0 || branch >= spec.dimension)
        throw std::invalid_argument("dispersion: branch must be in [0, dimension)");
    double s = 0.0;
    for (int d = 0; d < spec.dimension; ++d) {
        double half = std::sin(0.5 * k[d] * spec.lattice_constant);
        s += half * half;
    }
    return 2.0 * std::sqrt(spec.gamma / spec.mass) * std::sqrt(s);
}

double dispersion(const lattice::Lattice& lat, const Idx3& k_index, int branch) {
    return dispersion(lat.spec(), lat.wavevector(k_index), branch);
}

namespace {

int wrap_bin(int m, int n) { return ((m % n) + n) % n; }

Idx3 bin_coords(long flat, int dim, int n) {
    Idx3 c{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        c[d] = static_cast<int>(flat % n);
        flat /= n;
    }
    return c;
}

}  // namespace

std::size_t ModeSpectrum::flat_index(const Idx3& k_index, int branch) const {
    const int n = source.sites_per_axis;
    const int dim = source.dimension;
    if (branch < 0 || branch >= dim) throw std::invalid_argument("ModeSpectrum: branch out of range");
    long flat = 0;
    for (int d = 0; d < dim; ++d) flat = flat * n + wrap_bin(k_index[d], n);
    return static_cast<std::size_t>(flat) * dim + branch;
}

const ModeEntry& ModeSpectrum::at(const Idx3& k_index, int branch) const {
    return entries.at(flat_index(k_index, branch));
}

ModeSpectrum decompose(const lattice::Lattice& lat, const lattice::LatticeState& state,
                       const QuantizationConstants& qc) {
    const auto& spec = lat.spec();
    const int dim = spec.dimension;
    const int n = spec.sites_per_axis;
    const long sites = lat.site_count();
    const double sqrt_m = std::sqrt(spec.mass);

    ModeSpectrum sp;
    sp.source = spec;
    sp.hbar = qc.hbar;
    sp.entries.resize(static_cast<std::size_t>(sites) * dim);

    std::vector<cplx> amp(sites), mom(sites);
    for (int branch = 0; branch < dim; ++branch) {
        for (long s = 0; s < sites; ++s) {
            amp[s] = sqrt_m * state.displacement[s * dim + branch];
            mom[s] = sqrt_m * state.velocity[s * dim + branch];
        }
        dft::transform_nd(amp, dim, n, false);
        dft::transform_nd(mom, dim, n, false);
        for (long flat = 0; flat < sites; ++flat) {
            ModeEntry e;
            e.k_index = bin_coords(flat, dim, n);
            Idx3 principal{0, 0, 0};
            for (int d = 0; d < dim; ++d) principal[d] = dft::principal_index(e.k_index[d], n);
            e.k = lat.wavevector(principal);
            e.branch = branch;
            e.omega = dispersion(spec, e.k, branch);
            e.amplitude = amp[flat];
            e.momentum = mom[flat];
            e.energy = 0.5 * (std::norm(e.momentum) + e.omega * e.omega * std::norm(e.amplitude));
            e.zero_mode = (e.omega == 0.0);
            e.occupation_raw = e.zero_mode ? 0.0 : quantization::occupation_raw(e.energy, e.omega, qc.hbar);
            sp.entries[static_cast<std::size_t>(flat) * dim + branch] = e;
        }
    }
    return sp;
}

lattice::LatticeState reconstruct(const lattice::Lattice& lat, const ModeSpectrum& spectrum) {
    const auto& spec = lat.spec();
    const int dim = spec.dimension;
    const int n = spec.sites_per_axis;
    const long sites = lat.site_count();
    if (spectrum.entries.size() != static_cast<std::size_t>(sites) * dim)
        throw std::invalid_argument("reconstruct: spectrum size does not match the lattice");

    // conjugate-symmetry gate: A_{-k} = conj(A_k), P likewise, within 1e-8
    // of the largest amplitude (a real field cannot violate this).
    double scale = 0.0;
    for (const auto& e : spectrum.entries)
        scale = std::max({scale, std::abs(e.amplitude), std::abs(e.momentum)});
    const double tol = 1e-8 * std::max(scale, 1e-300);
    for (long flat = 0; flat < sites; ++flat) {
        Idx3 c = bin_coords(flat, dim, n);
        Idx3 partner{0, 0, 0};
        for (int d = 0; d < dim; ++d) partner[d] = dft::conjugate_bin(c[d], n);
        for (int branch = 0; branch < dim; ++branch) {
            const auto& e = spectrum.entries[static_cast<std::size_t>(flat) * dim + branch];
            const auto& p = spectrum.entries[spectrum.flat_index(partner, branch)];
            if (std::abs(e.amplitude - std::conj(p.amplitude)) > tol ||
                std::abs(e.momentum - std::conj(p.momentum)) > tol)
                throw std::invalid_argument(
                    "reconstruct: spectrum violates conjugate symmetry A(-k) = conj(A(k)); "
                    "not the transform of a real field");
        }
    }

    lattice::LatticeState out = zero_state(lat);
    const double inv_sqrt_m = 1.0 / std::sqrt(spec.mass);
    std::vector<cplx> amp(sites), mom(sites);
    for (int branch = 0; branch < dim; ++branch) {
        for (long flat = 0; flat < sites; ++flat) {
            amp[flat] = spectrum.entries[static_cast<std::size_t>(flat) * dim + branch].amplitude;
            mom[flat] = spectrum.entries[static_cast<std::size_t>(flat) * dim + branch].momentum;
        }
        dft::transform_nd(amp, dim, n, true);
        dft::transform_nd(mom, dim, n, true);
        for (long s = 0; s < sites; ++s) {
            out.displacement[s * dim + branch] = amp[s].real() * inv_sqrt_m;
            out.velocity[s * dim + branch] = mom[s].real() * inv_sqrt_m;
        }
    }
    return out;
}

double pair_energy(const ModeSpectrum& spectrum, const Idx3& k_index, int branch) {
    const int n = spectrum.source.sites_per_axis;
    const auto& e = spectrum.at(k_index, branch);
    Idx3 partner{0, 0, 0};
    bool self = true;
    for (int d = 0; d < spectrum.source.dimension; ++d) {
        partner[d] = dft::conjugate_bin(wrap_bin(k_index[d], n), n);
        if (partner[d] != wrap_bin(k_index[d], n)) self = false;
    }
    if (self) return e.energy;
    return e.energy + spectrum.at(partner, branch).energy;
}

double pair_occupation_raw(const ModeSpectrum& spectrum, const Idx3& k_index, int branch) {
    const auto& e = spectrum.at(k_index, branch);
    return quantization::occupation_raw(pair_energy(spectrum, k_index, branch), e.omega, spectrum.hbar);
}

quantization::Ladder quantize(const ModeEntry& entry, const QuantizationConstants& qc) {
    if (entry.zero_mode || !(entry.omega > 0.0))
        throw std::domain_error("quantize: zero-frequency mode carries no ladder (flagged, energy kept)");
    return quantization::ladder_from_energy(entry.energy, entry.omega, qc.hbar);
}

quantization::LadderTotals hamiltonian_total(const ModeSpectrum& spectrum, const QuantizationConstants& qc) {
    quantization::LadderTotals rep;
    for (const auto& e : spectrum.entries) {
        if (e.zero_mode) {
            rep.zero_mode_energy += e.energy;
            continue;
        }
        long long n = quantization::occupation_rounded(
            quantization::occupation_raw(e.energy, e.omega, qc.hbar));
        rep.ladder_total += quantization::ladder_energy(n, e.omega, qc.hbar);
        rep.zero_point_total += quantization::zero_point(e.omega, qc.hbar);
        rep.mode_count += 1;
    }
    return rep;
}

lattice::LatticeState prepare_occupation(const lattice::Lattice& lat, const Idx3& k_index, int branch,
                                         double n, const QuantizationConstants& qc, double theta,
                                         double phi) {
    const auto& spec = lat.spec();
    if (!(n >= 0.0) || !std::isfinite(n))
        throw std::invalid_argument("prepare_occupation: occupation must be finite and >= 0");
    const double omega = dispersion(lat, k_index, branch);
    if (!(omega > 0.0))
        throw std::domain_error("prepare_occupation: zero-frequency mode carries no ladder");

    const int nax = spec.sites_per_axis;
    Idx3 bin{0, 0, 0}, partner{0, 0, 0};
    bool self = true;
    for (int d = 0; d < spec.dimension; ++d) {
        bin[d] = wrap_bin(k_index[d], nax);
        partner[d] = dft::conjugate_bin(bin[d], nax);
        if (partner[d] != bin[d]) self = false;
    }
    if (self && std::fmod(std::abs(phi), pi) > 1e-12)
        throw std::invalid_argument("prepare_occupation: self-conjugate bin admits only real spatial phase");

    // classical correspondence: A(t) = sqrt(hbar/2Omega)*2*sqrt(n)*cos(Omega t + theta)
    const double coeff = std::sqrt(qc.hbar / (2.0 * omega)) * 2.0 * std::sqrt(n);
    const cplx spatial = std::polar(1.0, phi);
    const cplx a0 = coeff * std::cos(theta) * spatial;
    const cplx p0 = -coeff * omega * std::sin(theta) * spatial;

    // build a zero spectrum, set the pair, reconstruct
    ModeSpectrum sp = decompose(lat, zero_state(lat), qc);
    auto& e = sp.entries[sp.flat_index(bin, branch)];
    e.amplitude = a0;
    e.momentum = p0;
    if (!self) {
        auto& pe = sp.entries[sp.flat_index(partner, branch)];
        pe.amplitude = std::conj(a0);
        pe.momentum = std::conj(p0);
    }
    return reconstruct(lat, sp);
}

}  // namespace cellwave::modes
