#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "cellwave/lattice.hpp"

using namespace cellwave;
using lattice::Lattice;
using lattice::LatticeSpec;
using lattice::LatticeState;

namespace {

LatticeState random_state(const Lattice& lat, std::uint64_t seed, double amp = 0.5) {
    LatticeState s = lattice::zero_state(lat);
    std::mt19937_64 eng(seed);
    for (double& u : s.displacement) u = amp * (2.0 * unit_double(eng()) - 1.0);
    for (double& v : s.velocity) v = amp * (2.0 * unit_double(eng()) - 1.0);
    return s;
}

/// Independent potential: enumerate every nearest-neighbour pair once by
/// explicit coordinate arithmetic and sum (gamma/2)|u_n - u_nb|^2 directly.
double brute_force_potential(const Lattice& lat, const LatticeState& s) {
    const auto& spec = lat.spec();
    const int n = spec.sites_per_axis;
    const int dim = spec.dimension;
    double sum = 0.0;
    for (int site = 0; site < lat.site_count(); ++site) {
        const Idx3 c = lat.site_coords(site);
        for (int axis = 0; axis < dim; ++axis) {
            Idx3 nb = c;
            nb[axis] = (c[axis] + 1) % n;  // +axis neighbour only: each pair once
            const int other = lat.site_index(nb);
            for (int comp = 0; comp < dim; ++comp) {
                const double d = s.displacement[site * dim + comp] - s.displacement[other * dim + comp];
                sum += 0.5 * spec.gamma * d * d;
            }
        }
    }
    return sum;
}

double brute_force_kinetic(const Lattice& lat, const LatticeState& s) {
    double sum = 0.0;
    for (double v : s.velocity) sum += 0.5 * lat.spec().mass * v * v;
    return sum;
}

}  // namespace

TEST_CASE("potential matches an independent pairwise sum") {
    for (int dim = 1; dim <= 3; ++dim) {
        LatticeSpec spec;
        spec.dimension = dim;
        spec.sites_per_axis = dim == 3 ? 4 : 6;
        spec.mass = 1.7;
        spec.gamma = 2.3;
        const Lattice lat(spec);
        const LatticeState s = random_state(lat, 1000 + dim);
        const auto parts = lattice::lagrangian(lat, s);
        CHECK(parts.potential == doctest::Approx(brute_force_potential(lat, s)).epsilon(1e-13));
        CHECK(parts.kinetic == doctest::Approx(brute_force_kinetic(lat, s)).epsilon(1e-13));
        CHECK(lattice::total_energy(lat, s) ==
              doctest::Approx(parts.kinetic + parts.potential).epsilon(1e-13));
        CHECK(parts.lagrangian() == doctest::Approx(parts.kinetic - parts.potential).epsilon(1e-13));
    }
}

TEST_CASE("uniform translation costs no potential energy") {
    LatticeSpec spec;
    spec.dimension = 2;
    spec.sites_per_axis = 5;
    const Lattice lat(spec);
    LatticeState s = lattice::zero_state(lat);
    for (int site = 0; site < lat.site_count(); ++site) {
        s.displacement[site * 2 + 0] = 0.37;
        s.displacement[site * 2 + 1] = -1.2;
    }
    const auto parts = lattice::lagrangian(lat, s);
    CHECK(parts.potential == 0.0);
    CHECK(lattice::total_energy(lat, s) == 0.0);
}

TEST_CASE("acceleration equals the numerical force gradient") {
    LatticeSpec spec;
    spec.dimension = 2;
    spec.sites_per_axis = 4;
    spec.mass = 0.9;
    spec.gamma = 3.1;
    const Lattice lat(spec);
    LatticeState s = random_state(lat, 77);
    std::vector<double> acc;
    lattice::accelerations(lat, s.displacement, acc);
    REQUIRE(acc.size() == s.displacement.size());

    const double h = 1e-6;
    for (int dof = 0; dof < lat.dof_count(); dof += 3) {  // spot-check a third of the dofs
        LatticeState plus = s, minus = s;
        plus.displacement[dof] += h;
        minus.displacement[dof] -= h;
        const double dU =
            (lattice::lagrangian(lat, plus).potential - lattice::lagrangian(lat, minus).potential) /
            (2.0 * h);
        CHECK(acc[dof] == doctest::Approx(-dU / spec.mass).epsilon(1e-6));
    }
}

TEST_CASE("highest mode frequency follows the closed form") {
    for (int dim = 1; dim <= 3; ++dim) {
        LatticeSpec spec;
        spec.dimension = dim;
        spec.sites_per_axis = 4;
        spec.mass = 2.0;
        spec.gamma = 5.0;
        const Lattice lat(spec);
        CHECK(lat.omega_max() ==
              doctest::Approx(2.0 * std::sqrt(spec.gamma / spec.mass) * std::sqrt(dim)).epsilon(1e-15));
    }
}

TEST_CASE("plane-wave excitation follows the travelling analytic solution") {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.sites_per_axis = 8;
    const Lattice lat(spec);
    const Idx3 k_index{2, 0, 0};
    const double amp = 1e-2, phase = 0.4;
    const Vec3 k = lat.wavevector(k_index);
    const double omega = 2.0 * std::sqrt(spec.gamma / spec.mass) *
                         std::fabs(std::sin(0.5 * k[0] * spec.lattice_constant));

    auto max_error_at = [&](double dt, long steps) {
        LatticeState s = lattice::excite_plane_wave(lat, k_index, amp, phase);
        for (long i = 0; i < steps; ++i) lattice::step_inplace(lat, s, dt);
        double err = 0.0;
        for (int site = 0; site < lat.site_count(); ++site) {
            const double x = lat.site_position(site)[0];
            const double exact = amp * std::cos(k[0] * x - omega * s.time + phase);
            err = std::max(err, std::fabs(s.displacement[site] - exact));
        }
        return err;
    };

    // Fixed final time, two step sizes: second-order convergence to the
    // analytic travelling wave u = A cos(kx - Omega t + phi).
    const double t_end = 20.0;
    const double err1 = max_error_at(t_end / 2000, 2000);
    const double err2 = max_error_at(t_end / 4000, 4000);
    // phase error t*Omega^3*dt^2/24 = 2.4e-4 rad at dt = 0.01, so the
    // displacement error is ~ amp * 2.4e-4 = 2.4e-6 (bounds give 2x headroom)
    CHECK(err1 < 4e-6);
    CHECK(err2 < 1e-6);
    CHECK(err1 / err2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("staggered energy is conserved to round-off even near the stability bound") {
    LatticeSpec spec;
    spec.dimension = 2;
    spec.sites_per_axis = 6;
    spec.gamma = 1.9;
    spec.mass = 0.7;
    const Lattice lat(spec);
    const double dt = 1.8 / lat.omega_max();  // deep in the wobble regime
    LatticeState s = random_state(lat, 5);

    double first = 0.0, peak = 0.0;
    double sync_peak = 0.0;
    const double e_sync0 = lattice::total_energy(lat, s);
    for (long i = 0; i < 1000; ++i) {
        const LatticeState before = s;
        lattice::step_inplace(lat, s, dt);
        const double e = lattice::staggered_energy(lat, before, s, dt);
        if (i == 0)
            first = e;
        else
            peak = std::max(peak, std::fabs(e - first));
        sync_peak = std::max(sync_peak, std::fabs(lattice::total_energy(lat, s) - e_sync0));
    }
    CHECK(peak / std::fabs(first) < 1e-11);
    // The synchronized energy genuinely wobbles at this dt; the staggered
    // invariant is the honest drift instrument.
    CHECK(sync_peak / e_sync0 > 1e-3);
}

TEST_CASE("integrator rejects unstable steps and quotes the bound") {
    LatticeSpec spec;
    const Lattice lat(spec);
    LatticeState s = lattice::zero_state(lat);
    const double bound = 2.0 / lat.omega_max();
    CHECK_THROWS_WITH_AS(lattice::step_inplace(lat, s, bound),
                         doctest::Contains("2/omega_max"), std::invalid_argument);
    CHECK_THROWS_AS(lattice::step_inplace(lat, s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lattice::step_inplace(lat, s, -0.1), std::invalid_argument);
    CHECK_NOTHROW(lattice::step_inplace(lat, s, 0.999 * bound));
}

TEST_CASE("spec validation reports every violation at once") {
    LatticeSpec spec;
    spec.dimension = 5;
    spec.sites_per_axis = 1;
    spec.mass = -1.0;
    spec.gamma = 0.0;
    spec.lattice_constant = 0.0;
    try {
        spec.validate();
        FAIL("expected std::invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("dimension") != std::string::npos);
        CHECK(msg.find("sites_per_axis") != std::string::npos);
        CHECK(msg.find("mass") != std::string::npos);
        CHECK(msg.find("gamma") != std::string::npos);
        CHECK(msg.find("lattice_constant") != std::string::npos);
    }
}

TEST_CASE("wavevector and commensurate index round-trip") {
    LatticeSpec spec;
    spec.dimension = 3;
    spec.sites_per_axis = 4;
    spec.lattice_constant = 0.5;
    const Lattice lat(spec);
    const Idx3 m{1, 3, 2};
    const Vec3 k = lat.wavevector(m);
    CHECK(k[0] == doctest::Approx(2.0 * pi * 1 / (4 * 0.5)).epsilon(1e-15));
    const Idx3 back = lat.commensurate_index(k);
    CHECK(back[0] == 1);
    CHECK(back[1] == 3);
    CHECK(back[2] == 2);
    Vec3 off = k;
    off[0] += 0.01;
    CHECK_THROWS_AS(lat.commensurate_index(off), std::invalid_argument);
}

TEST_CASE("long-wave dispersion approaches the sound speed") {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.sites_per_axis = 256;
    spec.mass = 2.0;
    spec.gamma = 8.0;
    spec.lattice_constant = 0.3;
    const Lattice lat(spec);
    const double v_sound = spec.lattice_constant * std::sqrt(spec.gamma / spec.mass);
    for (int m = 1; m <= 3; ++m) {
        const Vec3 k = lat.wavevector({m, 0, 0});
        const double omega =
            2.0 * std::sqrt(spec.gamma / spec.mass) * std::fabs(std::sin(0.5 * k[0] * spec.lattice_constant));
        const double ka = k[0] * spec.lattice_constant;
        // Omega = v|k| (1 - (ka)^2/24 + ...)
        CHECK(omega / (v_sound * k[0]) == doctest::Approx(1.0 - ka * ka / 24.0).epsilon(1e-5));
    }
}

TEST_CASE("zero-wavevector excitation is a uniform rest displacement") {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.sites_per_axis = 8;
    const Lattice lat(spec);
    const LatticeState s = lattice::excite_plane_wave(lat, Idx3{0, 0, 0}, 0.3, 0.0);
    for (int site = 0; site < lat.site_count(); ++site) {
        CHECK(s.displacement[site] == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(s.velocity[site] == 0.0);
    }
    CHECK(lattice::total_energy(lat, s) == 0.0);
}

TEST_CASE("physical-wavevector excitation rejects incommensurate input") {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.sites_per_axis = 8;
    const Lattice lat(spec);
    const Vec3 good = lat.wavevector({3, 0, 0});
    CHECK_NOTHROW(lattice::excite_plane_wave(lat, good, 0.1, 0.0));
    CHECK_THROWS_AS(lattice::excite_plane_wave(lat, Vec3{good[0] * 1.01, 0.0, 0.0}, 0.1, 0.0),
                    std::invalid_argument);
}
