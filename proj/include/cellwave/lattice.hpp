#pragma once

#include <vector>

#include "cellwave/core.hpp"

namespace cellwave::lattice {

/// Cubic lattice of identical masses joined by identical nearest-neighbour
/// springs, periodic in every axis. Each site carries a `dimension`-component
/// vector displacement; the spring potential acts on each Cartesian component
/// independently, so the branches are degenerate.
struct LatticeSpec {
    int dimension = 1;           // 1, 2 or 3
    int sites_per_axis = 2;      // >= 2
    double mass = 1.0;           // > 0
    double gamma = 1.0;          // spring coupling, > 0
    double lattice_constant = 1.0;  // > 0
    bool periodic = true;        // only periodic boundaries are supported

    void validate() const;  // throws std::invalid_argument listing the violation
};

/// Assembled simulation handle: spec plus derived index helpers.
class Lattice {
  public:
    explicit Lattice(const LatticeSpec& spec);

    const LatticeSpec& spec() const { return spec_; }
    int site_count() const { return sites_; }
    int dof_count() const { return sites_ * spec_.dimension; }

    /// Highest normal-mode frequency, 2*sqrt(gamma/m)*sqrt(dimension).
    double omega_max() const;

    /// Cartesian position of a site (row-major index) in lattice units.
    Vec3 site_position(int site) const;
    Idx3 site_coords(int site) const;
    int site_index(const Idx3& c) const;

    /// Physical wavevector of an integer index triple: k_j = 2*pi*m_j/(N*a).
    Vec3 wavevector(const Idx3& m) const;

    /// Nearest integer index of a physical wavevector; throws
    /// std::invalid_argument if k is not commensurate with the periodic box.
    Idx3 commensurate_index(const Vec3& k) const;

  private:
    LatticeSpec spec_;
    int sites_;
};

/// Dynamic state: per-site displacement and velocity vectors
/// (layout: dof = site * dimension + component) plus current time.
struct LatticeState {
    std::vector<double> displacement;
    std::vector<double> velocity;
    double time = 0.0;
};

Lattice build_lattice(const LatticeSpec& spec);

LatticeState zero_state(const Lattice& lat);

/// Kinetic and potential parts of L = T - U with
/// U = (gamma/2) * sum over nearest-neighbour pairs of |r_n - r_n'|^2,
/// i.e. the bilinear coupling form with on-site diagonal gamma*coordination
/// and -gamma on neighbour pairs. Uniform translations cost zero potential.
struct LagrangianParts {
    double kinetic = 0.0;
    double potential = 0.0;
    double lagrangian() const { return kinetic - potential; }
};

LagrangianParts lagrangian(const Lattice& lat, const LatticeState& state);

/// T + U; strictly >= 0, zero only for a uniformly translating rest state.
double total_energy(const Lattice& lat, const LatticeState& state);

/// Acceleration a = F/m = (gamma/m) * sum_neighbours (r_nb - r_n), componentwise.
void accelerations(const Lattice& lat, const std::vector<double>& displacement, std::vector<double>& acc);

/// One velocity-Verlet step (second-order symplectic, time-reversible).
/// Requires 0 < dt < 2/omega_max; the error message quotes the bound.
void step_inplace(const Lattice& lat, LatticeState& state, double dt);
LatticeState step(const Lattice& lat, const LatticeState& state, double dt);

/// Exactly conserved discrete energy of the Verlet scheme, evaluated from two
/// consecutive synchronized states: (1/2)m|v_half|^2 + (1/2) u_n K u_{n+1}
/// with v_half = (u_{n+1} - u_n)/dt. Constant to round-off for any stable dt;
/// the drift instrument of choice (see README on energy accounting).
double staggered_energy(const Lattice& lat, const LatticeState& before, const LatticeState& after, double dt);

/// Plane-wave eigenmode initial condition on Cartesian branch `branch`:
///   u(x, 0) = amplitude * cos(k.x + phase)
///   v(x, 0) = amplitude * Omega(k) * sin(k.x + phase)
/// which is the right-travelling wave u(x,t) = amplitude*cos(k.x - Omega t + phase).
/// k = 0 yields a uniform translation at zero velocity (zero restoring force).
LatticeState excite_plane_wave(const Lattice& lat, const Idx3& k_index, double amplitude, double phase,
                               int branch = 0);

/// Same, from a physical wavevector; rejects incommensurate k.
LatticeState excite_plane_wave(const Lattice& lat, const Vec3& k, double amplitude, double phase,
                               int branch = 0);

}  // namespace cellwave::lattice
