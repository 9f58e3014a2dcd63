#include "cellwave/photon.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cellwave::photon {

void PhotonCore::validate() const {
    std::ostringstream err;
    if (!(norm(position) > 0.0)) err << "position must be nonzero (it defines the ray direction); ";
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) err << "wavelength must be finite and > 0; ";
    if (!(period > 0.0) || !std::isfinite(period)) err << "period must be finite and > 0; ";
    if (!(phase >= 0.0) || !(phase < 2.0 * pi)) err << "phase must lie in [0, 2*pi); ";
    if (!std::isfinite(emission_time)) err << "emission_time must be finite; ";
    std::string msg = err.str();
    if (!msg.empty()) throw std::invalid_argument("PhotonCore: " + msg);
}

Vec3 PhotonCore::direction() const {
    double r = norm(position);
    return (1.0 / r) * position;
}

PhotonCore make_core(const Vec3& initial_position, double wavelength, double period, double emission_time,
                     double phase) {
    PhotonCore core;
    core.position = initial_position;
    core.wavelength = wavelength;
    core.period = period;
    core.emission_time = emission_time;
    core.phase = phase;
    core.validate();
    return core;
}

Vec3 core_position(const PhotonCore& core, double t, const QueryOptions& opts) {
    if (t < core.emission_time)
        throw std::invalid_argument("core_position: query precedes the emission time");
    if (opts.strict && opts.cell_size > 0.0) {
        double tau = opts.cell_size / core.speed();
        if (t < core.emission_time + tau) {
            std::ostringstream err;
            err << "core_position: strict mode refuses queries inside the first cell residence "
                << "[emission, emission + tau), tau = " << tau;
            throw std::domain_error(err.str());
        }
    }
    return core.position + (core.speed() * (t - core.emission_time)) * core.direction();
}

double path_length(const PhotonCore& core, double t) {
    if (t < core.emission_time)
        throw std::invalid_argument("path_length: query precedes the emission time");
    return core.speed() * (t - core.emission_time);
}

double phase_at_distance(const PhotonCore& core, double d) {
    if (d < 0.0) throw std::invalid_argument("phase_at_distance: distance must be >= 0");
    // mod first: exact under d -> d + lambda, no precision loss at large d
    double r = std::fmod(d, core.wavelength);
    return 2.0 * pi * r / core.wavelength;
}

namespace {

Idx3 containing_cell(const Vec3& p, const Vec3& dir, double a) {
    // nudge along the ray breaks exact-boundary ties toward the entered cell
    const double eps = 1e-9 * a;
    Idx3 c;
    for (int d = 0; d < 3; ++d) c[d] = static_cast<int>(std::floor((p[d] + eps * dir[d]) / a));
    return c;
}

}  // namespace

HopSchedule hop_schedule(const PhotonCore& core, double cell_size, double duration) {
    core.validate();
    if (!(cell_size > 0.0)) throw std::invalid_argument("hop_schedule: cell_size must be > 0");
    if (!(duration >= 0.0)) throw std::invalid_argument("hop_schedule: duration must be >= 0");
    HopSchedule sched;
    sched.tau = cell_size / core.speed();
    sched.cells_per_wavelength = core.wavelength / cell_size;
    const Vec3 dir = core.direction();
    const long count = static_cast<long>(std::floor(duration / sched.tau * (1.0 + 1e-12))) + 1;
    sched.hops.reserve(count);
    for (long i = 0; i < count; ++i) {
        double t = core.emission_time + static_cast<double>(i) * sched.tau;
        Vec3 p = core.position + (core.speed() * (t - core.emission_time)) * dir;
        sched.hops.push_back({containing_cell(p, dir, cell_size), t});
    }
    return sched;
}

std::vector<Hop> dda_traversal(const PhotonCore& core, double cell_size, double duration) {
    core.validate();
    if (!(cell_size > 0.0)) throw std::invalid_argument("dda_traversal: cell_size must be > 0");
    if (!(duration >= 0.0)) throw std::invalid_argument("dda_traversal: duration must be >= 0");
    const Vec3 dir = core.direction();
    const double c = core.speed();
    const double a = cell_size;

    std::vector<Hop> hops;
    Idx3 cell = containing_cell(core.position, dir, a);
    hops.push_back({cell, core.emission_time});

    // per-axis time of the next boundary crossing and time per cell width
    double t_next[3], dt_cell[3];
    int step[3];
    for (int d = 0; d < 3; ++d) {
        double v = dir[d] * c;
        if (v > 0.0) {
            step[d] = 1;
            double boundary = (cell[d] + 1) * a;
            t_next[d] = core.emission_time + (boundary - core.position[d]) / v;
            dt_cell[d] = a / v;
        } else if (v < 0.0) {
            step[d] = -1;
            double boundary = cell[d] * a;
            t_next[d] = core.emission_time + (boundary - core.position[d]) / v;
            dt_cell[d] = a / (-v);
        } else {
            step[d] = 0;
            t_next[d] = std::numeric_limits<double>::infinity();
            dt_cell[d] = std::numeric_limits<double>::infinity();
        }
    }
    const double t_end = core.emission_time + duration;
    while (true) {
        int ax = 0;
        if (t_next[1] < t_next[ax]) ax = 1;
        if (t_next[2] < t_next[ax]) ax = 2;
        if (!(t_next[ax] <= t_end)) break;
        cell[ax] += step[ax];
        hops.push_back({cell, t_next[ax]});
        t_next[ax] += dt_cell[ax];
    }
    return hops;
}

LifetimeReport lifetime_report(double wavelength, double period, double cell_size, double light_speed,
                               const LifetimeReferences& refs) {
    if (!(wavelength > 0.0) || !(period > 0.0) || !(cell_size > 0.0) || !(light_speed > 0.0))
        throw std::invalid_argument("lifetime_report: wavelength, period, cell_size, light_speed must be > 0");
    LifetimeReport rep;
    rep.cells_per_wavelength = wavelength / cell_size;
    rep.lifetime = period * cell_size / wavelength;
    rep.frequency = 1.0 / period;
    rep.implied_speed = wavelength / period;
    rep.consistency_ratio = rep.lifetime * light_speed / cell_size;

    auto rel_diff = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    if (rel_diff(rep.implied_speed, light_speed) > 1e-9) {
        std::ostringstream w;
        w << "speed inconsistency: lambda/T = " << rep.implied_speed << " but light_speed = " << light_speed
          << " (c = lambda/T does not hold; consistency ratio tau*c/a = " << rep.consistency_ratio << ")";
        rep.warnings.push_back(w.str());
    }
    if (refs.cells_per_wavelength && rel_diff(*refs.cells_per_wavelength, rep.cells_per_wavelength) > 0.1) {
        std::ostringstream w;
        w << "reference mismatch: claimed cells-per-wavelength N = " << *refs.cells_per_wavelength
          << " but lambda/a = " << rep.cells_per_wavelength;
        rep.warnings.push_back(w.str());
    }
    if (refs.lifetime && rel_diff(*refs.lifetime, rep.lifetime) > 0.1) {
        std::ostringstream w;
        w << "reference mismatch: claimed lifetime tau = " << *refs.lifetime << " but T*a/lambda = "
          << rep.lifetime;
        rep.warnings.push_back(w.str());
    }
    return rep;
}

}  // namespace cellwave::photon
