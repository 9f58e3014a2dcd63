#pragma once

#include <optional>
#include <vector>

#include "cellwave/core.hpp"
#include "cellwave/lattice.hpp"
#include "cellwave/quantization.hpp"

namespace cellwave::modes {

using quantization::QuantizationConstants;

/// Analytic dispersion of the nearest-neighbour spring lattice:
///   Omega(k) = 2*sqrt(gamma/m) * sqrt(sum_axes sin^2(k_ax * a / 2)).
/// Branches (Cartesian components) are degenerate; `branch` is validated only.
double dispersion(const lattice::LatticeSpec& spec, const Vec3& k, int branch = 0);
double dispersion(const lattice::Lattice& lat, const Idx3& k_index, int branch = 0);

/// One normal mode of the mass-weighted Fourier decomposition
///   A_{k,s} = sqrt(m) * (1/sqrt(N_sites)) * sum_n u_{n,s} exp(-i k.x_n),
/// P = dA/dt. `energy` is this entry's own oscillator energy
/// (1/2)(|P|^2 + Omega^2 |A|^2); the +k/-k partners of a real field are
/// separate entries (see pair_energy for the combined physical pair).
struct ModeEntry {
    Idx3 k_index{0, 0, 0};  // DFT bin per axis, 0..N-1
    Vec3 k{0, 0, 0};        // principal-zone physical wavevector
    int branch = 0;
    double omega = 0.0;
    cplx amplitude{0.0, 0.0};
    cplx momentum{0.0, 0.0};
    double energy = 0.0;
    double occupation_raw = 0.0;  // energy/(hbar*Omega) - 1/2; 0 and flagged on the zero mode
    bool zero_mode = false;       // Omega == 0 (k = 0): no ladder, energy still accounted
};

struct ModeSpectrum {
    lattice::LatticeSpec source;
    double hbar = 1.0;
    /// Entries in canonical order: flat k bin index major, branch minor.
    std::vector<ModeEntry> entries;

    const ModeEntry& at(const Idx3& k_index, int branch) const;
    std::size_t flat_index(const Idx3& k_index, int branch) const;
};

/// Full normal-mode decomposition of a state. Sum of entry energies equals
/// total_energy(lat, state) to round-off (the transform is unitary and
/// Omega(k)^2 is exactly the symbol of the spring coupling form).
ModeSpectrum decompose(const lattice::Lattice& lat, const lattice::LatticeState& state,
                       const QuantizationConstants& qc = {});

/// Inverse transform back to real displacements/velocities. Rejects spectra
/// that violate the conjugate symmetry A_{-k} = conj(A_k) of a real field.
lattice::LatticeState reconstruct(const lattice::Lattice& lat, const ModeSpectrum& spectrum);

/// Combined energy of the physical +/-k pair holding this entry
/// (the entry's own energy plus its conjugate partner's; self-conjugate bins
/// k = -k count once). A prepared occupation n holds n quanta in *each*
/// partner entry, so the pair ladder reads 2n (n on a self-conjugate bin);
/// the per-entry round trip is ModeEntry::occupation_raw.
double pair_energy(const ModeSpectrum& spectrum, const Idx3& k_index, int branch);
double pair_occupation_raw(const ModeSpectrum& spectrum, const Idx3& k_index, int branch);

/// Ladder bookkeeping for one mode. Throws std::domain_error on the zero mode.
quantization::Ladder quantize(const ModeEntry& entry, const QuantizationConstants& qc);

/// Sum over all finite-frequency modes of hbar*Omega*(n_rounded + 1/2),
/// zero-point sum kept separately; zero-mode (Omega = 0) energy is reported,
/// never silently dropped.
quantization::LadderTotals hamiltonian_total(const ModeSpectrum& spectrum, const QuantizationConstants& qc);

/// State holding occupation n in the +/-k standing pair of (k_index, branch):
/// the classical correspondence amplitude sqrt(hbar/(2*Omega)) * 2*sqrt(n) at
/// temporal phase `theta` (A ~ cos(theta), P ~ -Omega*sin(theta)), conjugate
/// partner implied. Each of the two entries then holds energy hbar*Omega*n
/// exactly, for any theta and spatial phase `phi`.
lattice::LatticeState prepare_occupation(const lattice::Lattice& lat, const Idx3& k_index, int branch,
                                         double n, const QuantizationConstants& qc = {}, double theta = 0.0,
                                         double phi = 0.0);

}  // namespace cellwave::modes
