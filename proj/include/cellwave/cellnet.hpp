#pragma once

#include <vector>

#include "cellwave/core.hpp"
#include "cellwave/quantization.hpp"

namespace cellwave::cellnet {

using quantization::QuantizationConstants;

/// Cubic 3-D net of cells carrying a vector polarization potential, periodic
/// in every axis. Gaussian-unit factors (4*pi, 8*pi) appear literally.
struct CellNetSpec {
    int cells_per_axis = 4;   // >= 4
    double cell_size = 1.0;   // a > 0
    double light_speed = 1.0; // c > 0
    bool periodic = true;     // only periodic boundaries are supported

    void validate() const;
};

class CellNet {
  public:
    explicit CellNet(const CellNetSpec& spec);

    const CellNetSpec& spec() const { return spec_; }
    long cell_count() const { return cells_; }
    long value_count() const { return cells_ * 3; }
    double total_volume() const;  // N^3 * a^3

    /// CFL stability bound: dt <= a / (c * sqrt(3)).
    double max_stable_dt() const;

    long cell_index(const Idx3& c) const;
    Idx3 cell_coords(long cell) const;

    /// Physical wavevector of an integer bin triple: k_j = 2*pi*m_j/(N*a).
    Vec3 wavevector(const Idx3& m) const;

    /// Effective wavenumber of the 7-point Laplacian,
    /// k_grid = (2/a) * sqrt(sum_axes sin^2(k_ax a/2)); the transverse modes
    /// of the net actually oscillate at omega_grid = c * k_grid.
    double grid_wavenumber(const Idx3& m) const;

  private:
    CellNetSpec spec_;
    long cells_;
};

/// Field state: per-cell potential vector A and its time derivative Adot
/// (layout: value = cell*3 + component), synchronized in time.
/// Canonical momentum density is P = Adot / (4*pi*c^2).
struct CellNetField {
    std::vector<double> potential;   // A
    std::vector<double> potential_dot;  // dA/dt
    double time = 0.0;
};

CellNet build_cellnet(const CellNetSpec& spec);
CellNetField zero_field(const CellNet& net);

/// Central-difference curl of the potential at every cell (periodic wrap):
///   (curl A)_x = D0_y A_z - D0_z A_y, etc., D0_j f = (f(+e_j) - f(-e_j))/(2a).
std::vector<double> curl_central(const CellNet& net, const std::vector<double>& potential);

/// Volume-averaged Lagrangian density with its two quadratic parts kept
/// retrievable:
///   L = (1/(8*pi)) * sum_cells [ (1/c^2)|Adot|^2 - |curl A|^2 ] * (a^3 / V).
struct LagrangianDensityParts {
    double kinetic_term = 0.0;  // (1/(8 pi V)) * a^3 * sum (1/c^2)|Adot|^2
    double curl_term = 0.0;     // (1/(8 pi V)) * a^3 * sum |curl A|^2
    double density() const { return kinetic_term - curl_term; }
};
LagrangianDensityParts em_lagrangian_density(const CellNet& net, const CellNetField& field);

/// Energy functional in the forward-difference gradient form,
///   E = (a^3/(8*pi)) * sum_cells [ (1/c^2)|Adot|^2 + sum_j |D+_j A|^2 ],
/// the quadratic form the componentwise wave equation conserves and the
/// real-space side of the exact Parseval identity with field_to_modes.
double field_energy(const CellNet& net, const CellNetField& field);

/// Curl-form energy variant (same kinetic part, central-difference curl in
/// place of the gradient); diagnostic companion of em_lagrangian_density.
double field_energy_curl(const CellNet& net, const CellNetField& field);

/// One velocity-Verlet step of (1/c^2) d2A/dt2 = Lap A (componentwise 7-point
/// Laplacian, periodic). Requires 0 < dt <= a/(c*sqrt(3)); the error message
/// quotes the bound.
void step_wave_inplace(const CellNet& net, CellNetField& field, double dt);
CellNetField step_wave(const CellNet& net, const CellNetField& field, double dt);

/// Exactly conserved discrete energy of the scheme, from two consecutive
/// synchronized states (drift instrument; see README on energy accounting):
///   (a^3/(8*pi)) [ (1/c^2)|v_half|^2 + sum_j D+_j A_n . D+_j A_{n+1} ].
double staggered_energy(const CellNet& net, const CellNetField& before, const CellNetField& after,
                        double dt);

/// Deterministic transverse polarization pair for a direction k_hat:
/// Gram-Schmidt of the fixed reference z-axis against k_hat (x-axis fallback
/// when |k_hat . z| > 0.9), e2 = k_hat x e1. Exactly orthonormal to k_hat.
void polarization_basis(const Vec3& k_hat, Vec3& e1, Vec3& e2);

/// One transverse mode of the cell net. Amplitudes are in the 1/sqrt(V)
/// continuum normalization (a^(3/2) times the unitary DFT coefficient).
/// `omega` = c|k| is the reported photon frequency used in ladder sums;
/// `omega_grid` = c*k_grid is the mode's actual oscillation frequency on the
/// net and runs the energy/occupation bookkeeping (they converge as ka -> 0).
struct EmModeEntry {
    Idx3 k_index{0, 0, 0};
    Vec3 k{0, 0, 0};
    int polarization = 0;  // 0 or 1
    double omega = 0.0;       // c |k|
    double omega_grid = 0.0;  // c k_grid
    cplx amplitude{0.0, 0.0};  // script-A_{ks}
    cplx momentum{0.0, 0.0};   // P_{ks} = Adot_{ks}/(4 pi c^2)
    double energy = 0.0;  // (1/8pi)[(1/c^2)|Adot|^2 + k_grid^2 |A|^2]
    double occupation_raw = 0.0;  // energy/(hbar*omega_grid) - 1/2
};

struct EmModeSpectrum {
    CellNetSpec source;
    double hbar = 1.0;
    /// Transverse entries, canonical order: flat k bin major, polarization minor.
    std::vector<EmModeEntry> entries;
    /// Longitudinal (k_hat-parallel) residual energy per k bin and its total:
    /// diagnostic only, zero to round-off for transverse-prepared fields.
    std::vector<double> longitudinal_energy;
    double longitudinal_residual = 0.0;
    /// k = 0 bin energy (uniform potential, pure kinetic): reported, no split.
    double zero_mode_energy = 0.0;

    const EmModeEntry& at(const Idx3& k_index, int polarization) const;
    std::size_t flat_bin(const Idx3& k_index) const;
};

/// Plane-wave expansion over the transverse polarization pair per nonzero k.
/// Sum of entry energies + longitudinal_residual + zero_mode_energy equals
/// field_energy(net, field) to round-off (exact Parseval).
EmModeSpectrum field_to_modes(const CellNet& net, const CellNetField& field,
                              const QuantizationConstants& qc = {});

/// Ladder bookkeeping of one transverse mode, run at omega_grid.
quantization::Ladder photon_occupation(const EmModeEntry& entry, const QuantizationConstants& qc);

/// Combined energy/occupation of the physical +/-k pair (self-conjugate bins
/// count once). A prepared occupation n holds n quanta in *each* partner
/// entry (pair ladder 2n; n on a self-conjugate bin); the per-entry round
/// trip is EmModeEntry::occupation_raw.
double pair_energy(const EmModeSpectrum& spectrum, const Idx3& k_index, int polarization);
double pair_occupation_raw(const EmModeSpectrum& spectrum, const Idx3& k_index, int polarization);

/// Sum over transverse modes of hbar*omega*(n_rounded + 1/2) with omega = c|k|
/// (the photon frequency) and occupations from the omega_grid bookkeeping;
/// zero-point sum separately; longitudinal + k=0 energy reported untouched.
quantization::LadderTotals photon_hamiltonian(const EmModeSpectrum& spectrum,
                                              const QuantizationConstants& qc);

/// Classical-correspondence amplitude coefficients (Gaussian units):
///   |A_{ks}| = sqrt(2*pi*hbar*c^2/omega) * 2*sqrt(n)   at cosine phase,
///   |P_{ks}| = sqrt(hbar*omega/(8*pi*c^2)) * 2*sqrt(n) at sine phase.
double amplitude_coefficient(double omega, double hbar, double c);
double momentum_coefficient(double omega, double hbar, double c);

/// Field holding occupation n in the +/-k transverse pair (k_index, s) at
/// temporal phase theta, built with the coefficients above at omega_grid so
/// each pair entry holds energy hbar*omega_grid*n exactly, for any theta.
CellNetField prepare_occupation(const CellNet& net, const Idx3& k_index, int polarization, double n,
                                const QuantizationConstants& qc = {}, double theta = 0.0);

/// Right-travelling transverse plane wave on polarization s:
///   A(x, 0) = amplitude * e_s * cos(k.x + phase)
///   Adot(x, 0) = amplitude * omega_grid * e_s * sin(k.x + phase),
/// the net's exact eigenmode at omega_grid(k). Rejects k = 0.
CellNetField excite_plane_wave(const CellNet& net, const Idx3& k_index, int polarization, double amplitude,
                               double phase);

}  // namespace cellwave::cellnet
