#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cellwave/core.hpp"

namespace cellwave::photon {

/// Free photon core: a point excitation emitted radially from the origin,
/// moving along its fixed emission direction at speed c = wavelength/period.
/// `position` is the emission-time position measured from the origin; its
/// direction defines the ray. Immutable emission record; kinematic queries
/// are pure functions of it.
struct PhotonCore {
    Vec3 position{1.0, 0.0, 0.0};  // nonzero; |position| sets the starting radius
    double wavelength = 1.0;       // lambda > 0
    double period = 1.0;           // T > 0; speed c = lambda/T
    double phase = 0.0;            // carrier phase at emission, in [0, 2*pi)
    double emission_time = 0.0;

    double speed() const { return wavelength / period; }
    Vec3 direction() const;  // unit vector position/|position|

    void validate() const;
};

PhotonCore make_core(const Vec3& initial_position, double wavelength, double period,
                     double emission_time = 0.0, double phase = 0.0);

/// Query options: in strict mode, positions inside the first cell residence
/// interval [emission_time, emission_time + tau), tau = cell_size/c, are
/// refused (the sub-tau behaviour is undefined); otherwise the closed form is
/// extrapolated linearly. cell_size <= 0 disables the check.
struct QueryOptions {
    bool strict = false;
    double cell_size = 0.0;
};

/// Closed-form radial trajectory: |r(t)| = |r(t0)| + c*(t - t0) along the
/// fixed emission direction. Requires t >= emission_time.
Vec3 core_position(const PhotonCore& core, double t, const QueryOptions& opts = {});

/// Path length travelled since emission, c*(t - emission_time).
double path_length(const PhotonCore& core, double t);

/// Carrier phase after a path length d: 2*pi*(d mod lambda)/lambda
/// (computed mod-first, so it is exact under d -> d + lambda).
double phase_at_distance(const PhotonCore& core, double d);

/// One cell visit: integer cell index triple and the entry time.
struct Hop {
    Idx3 cell{0, 0, 0};
    double entry_time = 0.0;
};

/// Uniform hop schedule over a cubic net of cell size a: entry i at
/// emission_time + i*tau with per-cell residence tau = a/c (the dominant-axis
/// metric), cell = the voxel containing the closed-form position. Consecutive
/// entry times differ by exactly tau; the hop count over duration D is
/// round(c*D/a) +- 1 for any ray direction.
struct HopSchedule {
    std::vector<Hop> hops;
    double tau = 0.0;                   // a/c
    double cells_per_wavelength = 0.0;  // N = lambda/a
};

HopSchedule hop_schedule(const PhotonCore& core, double cell_size, double duration);

/// Literal voxel walk (digital-differential-analyzer traversal): every cell
/// the ray geometrically crosses, with the actual boundary-crossing entry
/// times (variable per cell for oblique rays). Companion view of the uniform
/// schedule; both are reported by the hop-trace tool.
std::vector<Hop> dda_traversal(const PhotonCore& core, double cell_size, double duration);

/// Pure lifetime arithmetic: N = lambda/a, tau = T*a/lambda, nu = 1/T,
/// implied speed lambda/T, consistency ratio tau*c/a (== 1 iff c = lambda/T).
/// Inconsistent inputs produce warnings, not errors; optional reference
/// values (a source's claimed N or tau) are compared and mismatches beyond
/// 10% relative are flagged.
struct LifetimeReferences {
    std::optional<double> cells_per_wavelength;  // claimed N
    std::optional<double> lifetime;              // claimed tau
};

struct LifetimeReport {
    double cells_per_wavelength = 0.0;  // N = lambda/a
    double lifetime = 0.0;              // tau = T*a/lambda
    double frequency = 0.0;             // nu = 1/T
    double implied_speed = 0.0;         // lambda/T
    double consistency_ratio = 0.0;     // tau*c/a
    std::vector<std::string> warnings;
};

LifetimeReport lifetime_report(double wavelength, double period, double cell_size, double light_speed,
                               const LifetimeReferences& refs = {});

}  // namespace cellwave::photon
