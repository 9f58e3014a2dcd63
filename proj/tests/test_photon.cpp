#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "cellwave/photon.hpp"

using namespace cellwave;
using photon::PhotonCore;

namespace {

/// Independent trajectory oracle: integrate dr/dt = c * d_hat with classic
/// RK4 from the emission record (exact for constant velocity, but computed
/// through a genuinely different code path).
Vec3 rk4_position(const PhotonCore& core, double t, int steps) {
    const Vec3 d = core.direction();
    const double c = core.speed();
    Vec3 r = core.position;
    const double h = (t - core.emission_time) / steps;
    for (int i = 0; i < steps; ++i) {
        // k1 = k2 = k3 = k4 = c*d for a constant field; keep the full form.
        const Vec3 k1 = c * 1.0 * d, k2 = c * 1.0 * d, k3 = c * 1.0 * d, k4 = c * 1.0 * d;
        r = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return r;
}

}  // namespace

TEST_CASE("closed-form position matches step-integrated radial motion") {
    const PhotonCore core = photon::make_core({0.6, -0.3, 0.2}, 0.5, 0.25, 1.5);
    const double t = 4.75;
    const Vec3 got = photon::core_position(core, t);
    const Vec3 want = rk4_position(core, t, 1000);
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-11));
    // |r(t)| = |r0| + c (t - t0) along the fixed direction.
    CHECK(norm(got) == doctest::Approx(norm(core.position) + core.speed() * (t - 1.5)).epsilon(1e-13));
    const Vec3 dir = core.direction();
    CHECK(std::fabs(dot(got, dir) - norm(got)) < 1e-12);  // still on the ray
}

TEST_CASE("strict queries refuse the first dwell interval, lenient ones extrapolate") {
    const PhotonCore core = photon::make_core({1.0, 0.0, 0.0}, 0.4, 0.2, 2.0);  // c = 2
    const double a = 0.1;
    const double tau = a / core.speed();  // 0.05
    const photon::QueryOptions strict{true, a};

    CHECK_THROWS_AS(photon::core_position(core, 2.0, strict), std::domain_error);
    CHECK_THROWS_AS(photon::core_position(core, 2.0 + 0.5 * tau, strict), std::domain_error);
    CHECK_NOTHROW(photon::core_position(core, 2.0 + tau, strict));
    CHECK_NOTHROW(photon::core_position(core, 2.0, photon::QueryOptions{false, a}));
    CHECK_NOTHROW(photon::core_position(core, 2.0 + 0.5 * tau));
    // Queries before emission are rejected in either mode.
    CHECK_THROWS_AS(photon::core_position(core, 1.99, strict), std::invalid_argument);
    CHECK_THROWS_AS(photon::core_position(core, 1.99), std::invalid_argument);
}

TEST_CASE("carrier phase is computed mod-first and restores after one wavelength") {
    const PhotonCore core = photon::make_core({1.0, 1.0, 0.0}, 0.125, 0.5);  // lambda = 1/8 (exact binary)
    CHECK(photon::phase_at_distance(core, 0.0) == 0.0);
    // Exact restoration for an exactly representable multiple of lambda.
    CHECK(photon::phase_at_distance(core, 7.0 * 0.125) == 0.0);
    CHECK(photon::phase_at_distance(core, 0.125) == photon::phase_at_distance(core, 0.25));

    std::mt19937_64 eng(5);
    for (int i = 0; i < 50; ++i) {
        const double d = 20.0 * unit_double(eng());
        const double gap =
            std::fabs(photon::phase_at_distance(core, d + 0.125) - photon::phase_at_distance(core, d));
        CHECK(std::min(gap, 2.0 * pi - gap) < 1e-9);  // circular distance: phase lives mod 2*pi
        const double p = photon::phase_at_distance(core, d);
        CHECK(p >= 0.0);
        CHECK(p < 2.0 * pi);
    }
    // Mod-first keeps full precision at path lengths >> lambda, where a
    // multiply-first 2*pi*d/lambda would have lost the fractional cycle.
    const double big = 1e12 * 0.125;
    CHECK(photon::phase_at_distance(core, big + 0.125 / 4.0) ==
          doctest::Approx(pi / 2.0).epsilon(1e-9));
}

TEST_CASE("hop schedule: uniform dwell time, tau * c = a, count tracks path length") {
    const PhotonCore core = photon::make_core({1.1, 0.0, 0.0}, 0.5, 0.5, 0.0);  // c = 1, +x ray
    const double a = 0.25;
    const double duration = 3.0;
    const photon::HopSchedule schedule = photon::hop_schedule(core, a, duration);

    CHECK(schedule.tau * core.speed() == doctest::Approx(a).epsilon(1e-15));
    CHECK(schedule.cells_per_wavelength == doctest::Approx(core.wavelength / a).epsilon(1e-15));
    REQUIRE(schedule.hops.size() >= 2);
    CHECK(std::fabs(static_cast<double>(schedule.hops.size()) -
                    (core.speed() * duration / a + 1.0)) <= 1.0);
    for (std::size_t i = 1; i < schedule.hops.size(); ++i) {
        const double gap = schedule.hops[i].entry_time - schedule.hops[i - 1].entry_time;
        CHECK(gap == doctest::Approx(schedule.tau).epsilon(1e-12));
    }
    // Axis-aligned ray: the uniform schedule advances exactly one x-cell per hop.
    for (std::size_t i = 1; i < schedule.hops.size(); ++i) {
        CHECK(schedule.hops[i].cell[0] - schedule.hops[i - 1].cell[0] == 1);
        CHECK(schedule.hops[i].cell[1] == schedule.hops[i - 1].cell[1]);
        CHECK(schedule.hops[i].cell[2] == schedule.hops[i - 1].cell[2]);
    }
}

TEST_CASE("axis-aligned schedule coincides with the geometric traversal") {
    const PhotonCore core = photon::make_core({1.1, 0.0, 0.0}, 0.5, 0.5, 0.0);
    const double a = 0.25, duration = 3.0;
    const photon::HopSchedule schedule = photon::hop_schedule(core, a, duration);
    const std::vector<photon::Hop> crossings = photon::dda_traversal(core, a, duration);
    REQUIRE(!crossings.empty());

    std::size_t j = 0;
    for (const photon::Hop& hop : schedule.hops) {
        while (j + 1 < crossings.size() &&
               crossings[j + 1].entry_time <= hop.entry_time + schedule.tau * 1e-9)
            ++j;
        CHECK(hop.cell[0] == crossings[j].cell[0]);
        CHECK(hop.cell[1] == crossings[j].cell[1]);
        CHECK(hop.cell[2] == crossings[j].cell[2]);
    }
}

TEST_CASE("oblique traversal crosses one face at a time; schedule stays within one cell") {
    const PhotonCore core = photon::make_core({1.0, 0.7, 0.31}, 0.5, 0.25, 0.5);  // c = 2
    const double a = 0.2, duration = 2.0;
    const std::vector<photon::Hop> crossings = photon::dda_traversal(core, a, duration);
    REQUIRE(crossings.size() >= 3);
    for (std::size_t i = 1; i < crossings.size(); ++i) {
        CHECK(crossings[i].entry_time >= crossings[i - 1].entry_time);
        int changed = 0;
        for (int d = 0; d < 3; ++d)
            changed += std::abs(crossings[i].cell[d] - crossings[i - 1].cell[d]);
        CHECK(changed == 1);  // exactly one face crossed per crossing
    }

    const photon::HopSchedule schedule = photon::hop_schedule(core, a, duration);
    std::size_t j = 0;
    int max_dev = 0;
    for (const photon::Hop& hop : schedule.hops) {
        while (j + 1 < crossings.size() &&
               crossings[j + 1].entry_time <= hop.entry_time + schedule.tau * 1e-9)
            ++j;
        for (int d = 0; d < 3; ++d)
            max_dev = std::max(max_dev, std::abs(hop.cell[d] - crossings[j].cell[d]));
    }
    CHECK(max_dev <= 1);
}

TEST_CASE("lifetime arithmetic reproduces the reference magnitudes exactly") {
    const photon::LifetimeReport rep = photon::lifetime_report(1e-8, 1e-15, 1e-28, 3e10);

    // Identical double expressions, compared bitwise.
    CHECK(rep.cells_per_wavelength == 1e-8 / 1e-28);
    CHECK(rep.lifetime == 1e-15 * 1e-28 / 1e-8);
    CHECK(rep.frequency == 1.0 / 1e-15);
    CHECK(rep.implied_speed == 1e-8 / 1e-15);
    // Physical magnitudes: N = 1e20 cells per wavelength, tau = 1e-35 s.
    CHECK(rep.cells_per_wavelength == doctest::Approx(1e20).epsilon(1e-12));
    CHECK(rep.lifetime == doctest::Approx(1e-35).epsilon(1e-12));
    CHECK(rep.frequency == doctest::Approx(1e15).epsilon(1e-12));
    // lambda/T = 1e7 cm/s, far below the supplied c: flagged, not fatal.
    CHECK(rep.implied_speed == doctest::Approx(1e7).epsilon(1e-12));
    CHECK(rep.consistency_ratio == doctest::Approx(3000.0).epsilon(1e-12));
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("speed inconsistency") != std::string::npos);
}

TEST_CASE("lifetime references beyond ten percent are flagged") {
    photon::LifetimeReferences refs;
    refs.cells_per_wavelength = 1e36;  // claimed, vs computed 1e20
    refs.lifetime = 1e-35;             // matches computed exactly
    const photon::LifetimeReport rep = photon::lifetime_report(1e-8, 1e-15, 1e-28, 3e10, refs);
    REQUIRE(rep.warnings.size() == 2);  // speed + claimed-N; claimed-tau agrees
    CHECK(rep.warnings[1].find("cells-per-wavelength") != std::string::npos);

    photon::LifetimeReferences close;
    close.cells_per_wavelength = 1.05e20;  // within 10%: accepted silently
    CHECK(photon::lifetime_report(1e-8, 1e-15, 1e-28, 3e10, close).warnings.size() == 1);
}

TEST_CASE("consistent photon parameters produce no warnings and unit ratio") {
    const photon::LifetimeReport rep = photon::lifetime_report(1.0, 2.0, 0.25, 0.5);
    CHECK(rep.warnings.empty());
    CHECK(rep.consistency_ratio == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rep.cells_per_wavelength == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(rep.lifetime == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("emission records validate their fields") {
    CHECK_THROWS_AS(photon::make_core({0.0, 0.0, 0.0}, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(photon::make_core({1.0, 0.0, 0.0}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(photon::make_core({1.0, 0.0, 0.0}, 1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(photon::lifetime_report(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    const PhotonCore core = photon::make_core({3.0, 4.0, 0.0}, 2.0, 4.0);
    CHECK(core.speed() == doctest::Approx(0.5).epsilon(1e-15));
    const Vec3 d = core.direction();
    CHECK(d[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(photon::path_length(core, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
}
