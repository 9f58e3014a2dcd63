#include "cellwave/lattice.hpp"

#include <cmath>
#include <sstream>

#include "cellwave/modes.hpp"

namespace cellwave::lattice {

void LatticeSpec::validate() const {
    std::ostringstream err;
    if (dimension < 1 || dimension > 3) err << "dimension must be 1, 2 or 3 (got " << dimension << "); ";
    if (sites_per_axis < 2) err << "sites_per_axis must be >= 2 (got " << sites_per_axis << "); ";
    if (!(mass > 0.0) || !std::isfinite(mass)) err << "mass must be finite and > 0; ";
    if (!(gamma > 0.0) || !std::isfinite(gamma)) err << "gamma must be finite and > 0; ";
    if (!(lattice_constant > 0.0) || !std::isfinite(lattice_constant))
        err << "lattice_constant must be finite and > 0; ";
    if (!periodic) err << "only periodic boundaries are supported; ";
    std::string msg = err.str();
    if (!msg.empty()) throw std::invalid_argument("LatticeSpec: " + msg);
}

Lattice::Lattice(const LatticeSpec& spec) : spec_(spec) {
    spec_.validate();
    sites_ = 1;
    for (int d = 0; d < spec_.dimension; ++d) sites_ *= spec_.sites_per_axis;
}

double Lattice::omega_max() const {
    return 2.0 * std::sqrt(spec_.gamma / spec_.mass) * std::sqrt(static_cast<double>(spec_.dimension));
}

Idx3 Lattice::site_coords(int site) const {
    Idx3 c{0, 0, 0};
    const int n = spec_.sites_per_axis;
    for (int d = spec_.dimension - 1; d >= 0; --d) {
        c[d] = site % n;
        site /= n;
    }
    return c;
}

int Lattice::site_index(const Idx3& c) const {
    const int n = spec_.sites_per_axis;
    int idx = 0;
    for (int d = 0; d < spec_.dimension; ++d) idx = idx * n + c[d];
    return idx;
}

Vec3 Lattice::site_position(int site) const {
    Idx3 c = site_coords(site);
    return {c[0] * spec_.lattice_constant, c[1] * spec_.lattice_constant, c[2] * spec_.lattice_constant};
}

Vec3 Lattice::wavevector(const Idx3& m) const {
    const double box = spec_.sites_per_axis * spec_.lattice_constant;
    Vec3 k{0, 0, 0};
    for (int d = 0; d < spec_.dimension; ++d) k[d] = 2.0 * pi * m[d] / box;
    return k;
}

Idx3 Lattice::commensurate_index(const Vec3& k) const {
    const double box = spec_.sites_per_axis * spec_.lattice_constant;
    Idx3 m{0, 0, 0};
    for (int d = 0; d < 3; ++d) {
        double raw = k[d] * box / (2.0 * pi);
        double rounded = std::round(raw);
        if (std::abs(raw - rounded) > 1e-9 * std::max(1.0, std::abs(raw)))
            throw std::invalid_argument("wavevector is not commensurate with the periodic box: axis " +
                                        std::to_string(d) + " index " + std::to_string(raw));
        if (d >= spec_.dimension && rounded != 0.0)
            throw std::invalid_argument("wavevector has a component beyond the lattice dimension");
        m[d] = static_cast<int>(rounded);
    }
    return m;
}

Lattice build_lattice(const LatticeSpec& spec) { return Lattice(spec); }

LatticeState zero_state(const Lattice& lat) {
    LatticeState s;
    s.displacement.assign(lat.dof_count(), 0.0);
    s.velocity.assign(lat.dof_count(), 0.0);
    return s;
}

namespace {

// Applies f(site, neighbour) over each nearest-neighbour pair once
// (neighbour in the +axis direction, periodic wrap).
template <typename F>
void for_each_pair(const Lattice& lat, F&& f) {
    const auto& spec = lat.spec();
    const int n = spec.sites_per_axis;
    const int sites = lat.site_count();
    for (int site = 0; site < sites; ++site) {
        Idx3 c = lat.site_coords(site);
        for (int ax = 0; ax < spec.dimension; ++ax) {
            Idx3 nb = c;
            nb[ax] = (c[ax] + 1) % n;
            f(site, lat.site_index(nb));
        }
    }
}

}  // namespace

LagrangianParts lagrangian(const Lattice& lat, const LatticeState& state) {
    const auto& spec = lat.spec();
    LagrangianParts parts;
    for (double v : state.velocity) parts.kinetic += v * v;
    parts.kinetic *= 0.5 * spec.mass;

    const int dim = spec.dimension;
    double pot = 0.0;
    for_each_pair(lat, [&](int a, int b) {
        for (int comp = 0; comp < dim; ++comp) {
            double diff = state.displacement[a * dim + comp] - state.displacement[b * dim + comp];
            pot += diff * diff;
        }
    });
    parts.potential = 0.5 * spec.gamma * pot;
    return parts;
}

double total_energy(const Lattice& lat, const LatticeState& state) {
    LagrangianParts parts = lagrangian(lat, state);
    return parts.kinetic + parts.potential;
}

void accelerations(const Lattice& lat, const std::vector<double>& displacement, std::vector<double>& acc) {
    const auto& spec = lat.spec();
    const int dim = spec.dimension;
    acc.assign(lat.dof_count(), 0.0);
    const double g_over_m = spec.gamma / spec.mass;
    for_each_pair(lat, [&](int a, int b) {
        for (int comp = 0; comp < dim; ++comp) {
            double diff = displacement[b * dim + comp] - displacement[a * dim + comp];
            acc[a * dim + comp] += g_over_m * diff;
            acc[b * dim + comp] -= g_over_m * diff;
        }
    });
}

void step_inplace(const Lattice& lat, LatticeState& state, double dt) {
    const double bound = 2.0 / lat.omega_max();
    if (!(dt > 0.0) || !(dt < bound)) {
        std::ostringstream err;
        err << "step: dt = " << dt << " violates the stability bound 0 < dt < 2/omega_max = " << bound;
        throw std::invalid_argument(err.str());
    }
    const int dofs = lat.dof_count();
    static thread_local std::vector<double> acc0, acc1;
    accelerations(lat, state.displacement, acc0);
    for (int i = 0; i < dofs; ++i)
        state.displacement[i] += dt * state.velocity[i] + 0.5 * dt * dt * acc0[i];
    accelerations(lat, state.displacement, acc1);
    for (int i = 0; i < dofs; ++i) state.velocity[i] += 0.5 * dt * (acc0[i] + acc1[i]);
    state.time += dt;
}

LatticeState step(const Lattice& lat, const LatticeState& state, double dt) {
    LatticeState out = state;
    step_inplace(lat, out, dt);
    return out;
}

double staggered_energy(const Lattice& lat, const LatticeState& before, const LatticeState& after, double dt) {
    const auto& spec = lat.spec();
    const int dim = spec.dimension;
    double kin = 0.0;
    for (std::size_t i = 0; i < before.displacement.size(); ++i) {
        double vh = (after.displacement[i] - before.displacement[i]) / dt;
        kin += vh * vh;
    }
    kin *= 0.5 * spec.mass;
    // bilinear spring form: u K w = gamma * sum_pairs (u_a - u_b).(w_a - w_b)
    double pot = 0.0;
    for_each_pair(lat, [&](int a, int b) {
        for (int comp = 0; comp < dim; ++comp) {
            double du = before.displacement[a * dim + comp] - before.displacement[b * dim + comp];
            double dw = after.displacement[a * dim + comp] - after.displacement[b * dim + comp];
            pot += du * dw;
        }
    });
    return kin + 0.5 * spec.gamma * pot;
}

LatticeState excite_plane_wave(const Lattice& lat, const Idx3& k_index, double amplitude, double phase,
                               int branch) {
    const auto& spec = lat.spec();
    if (branch < 0 || branch >= spec.dimension)
        throw std::invalid_argument("excite_plane_wave: branch must be in [0, dimension)");
    if (!std::isfinite(amplitude) || !std::isfinite(phase))
        throw std::invalid_argument("excite_plane_wave: amplitude and phase must be finite");
    const Vec3 k = lat.wavevector(k_index);
    const double omega = modes::dispersion(spec, k, branch);
    LatticeState s = zero_state(lat);
    const int dim = spec.dimension;
    for (int site = 0; site < lat.site_count(); ++site) {
        double arg = dot(k, lat.site_position(site)) + phase;
        s.displacement[site * dim + branch] = amplitude * std::cos(arg);
        s.velocity[site * dim + branch] = amplitude * omega * std::sin(arg);
    }
    return s;
}

LatticeState excite_plane_wave(const Lattice& lat, const Vec3& k, double amplitude, double phase, int branch) {
    return excite_plane_wave(lat, lat.commensurate_index(k), amplitude, phase, branch);
}

}  // namespace cellwave::lattice
