#include <doctest.h>

#include <cmath>
#include <random>

#include "ionmag/crystal.hpp"
#include "ionmag/presets.hpp"
#include "oracles.hpp"

using namespace ionmag;

namespace {

TrapParams isotropic_trap(double ratio_z = 2.9) {
    TrapParams t;
    t.omega_x = rad_from_khz(500.0);
    t.omega_y = rad_from_khz(500.0);
    t.omega_z = rad_from_khz(500.0 * ratio_z);
    return t;
}

}  // namespace

TEST_CASE("single ion sits at the origin with zero energy") {
    const std::vector<double> xy = {0.0, 0.0};
    auto ev = dimensionless_potential(xy, isotropic_trap());
    CHECK(ev.energy == 0.0);
    CHECK(ev.gradient[0] == 0.0);
    CHECK(ev.gradient[1] == 0.0);

    IonCrystal c = equilibrium_positions(isotropic_trap(), 1, 4, 1);
    CHECK(c.x(0) == 0.0);
    CHECK(c.y(0) == 0.0);
}

TEST_CASE("two-ion analytic minimum at separation 2^(1/3)") {
    // d^2/4 + 1/d is stationary at d = 2^(1/3); placed at +-d/2 on x
    const double d = std::cbrt(2.0);
    const std::vector<double> xy = {-d / 2, 0.0, d / 2, 0.0};
    auto ev = dimensionless_potential(xy, isotropic_trap());
    for (double gi : ev.gradient) CHECK(std::abs(gi) < 1e-14);

    IonCrystal c = equilibrium_positions(isotropic_trap(), 2, 8, 3);
    const double sep = std::hypot(c.x(1) - c.x(0), c.y(1) - c.y(0));
    CHECK(sep == doctest::Approx(d).epsilon(1e-10));
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    TrapParams trap;
    trap.omega_x = rad_from_khz(480.0);
    trap.omega_y = rad_from_khz(560.0);
    trap.omega_z = rad_from_khz(1500.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + int(eng() % 9);  // N in 2..10
        std::vector<double> xy(2 * n);
        bool ok = false;
        while (!ok) {
            for (double& v : xy) v = uni(eng);
            ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = i + 1; j < n && ok; ++j)
                    if (std::hypot(xy[2 * i] - xy[2 * j], xy[2 * i + 1] - xy[2 * j + 1]) < 0.2)
                        ok = false;
        }
        auto ev = dimensionless_potential(xy, trap);
        auto fd = oracle::fd_gradient(xy, trap);
        double num = 0.0, den = 0.0;
        for (size_t k = 0; k < fd.size(); ++k) {
            num += (ev.gradient[k] - fd[k]) * (ev.gradient[k] - fd[k]);
            den += fd[k] * fd[k];
        }
        CHECK(std::sqrt(num / den) < 1e-6);
    }
}

TEST_CASE("coincident ions are rejected") {
    const std::vector<double> xy = {0.0, 0.0, 1e-12, 0.0};
    CHECK_THROWS_AS(dimensionless_potential(xy, isotropic_trap()), CoincidentIons);
}

TEST_CASE("7-ion isotropic crystal is a centred hexagon") {
    IonCrystal c = equilibrium_positions(isotropic_trap(), 7, 32, 2024);
    CHECK(c.gradient_norm < kGradTol);
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < 7; ++i) {
        cx += c.x(i);
        cy += c.y(i);
    }
    cx /= 7;
    cy /= 7;
    std::vector<double> radii;
    for (int i = 0; i < 7; ++i) radii.push_back(std::hypot(c.x(i) - cx, c.y(i) - cy));
    std::sort(radii.begin(), radii.end());
    CHECK(radii.front() < 1e-6);  // one ion at the centroid
    CHECK(radii.back() - radii[1] < 1e-6);  // six outer ions at equal radius
}

TEST_CASE("minimizer is idempotent from a converged crystal") {
    IonCrystal c = equilibrium_positions(isotropic_trap(), 7, 16, 5);
    IonCrystal again = refine_crystal(isotropic_trap(), c.xy);
    for (size_t k = 0; k < c.xy.size(); ++k)
        CHECK(std::abs(again.xy[k] - c.xy[k]) < 1e-10);
}

TEST_CASE("energy is rotation invariant for isotropic traps") {
    IonCrystal c = equilibrium_positions(isotropic_trap(), 6, 16, 9);
    std::mt19937_64 eng(33);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    const double th = uni(eng);
    std::vector<double> rot(c.xy.size());
    for (int i = 0; i < c.n_ions; ++i) {
        rot[2 * i] = std::cos(th) * c.x(i) - std::sin(th) * c.y(i);
        rot[2 * i + 1] = std::sin(th) * c.x(i) + std::cos(th) * c.y(i);
    }
    const double e2 = dimensionless_potential(rot, isotropic_trap()).energy;
    CHECK(std::abs(e2 - c.potential_energy) < 1e-12);
}

TEST_CASE("identical inputs give bit-identical positions") {
    IonCrystal a = equilibrium_positions(isotropic_trap(), 5, 12, 77);
    IonCrystal b = equilibrium_positions(isotropic_trap(), 5, 12, 77);
    REQUIRE(a.xy.size() == b.xy.size());
    for (size_t k = 0; k < a.xy.size(); ++k) CHECK(a.xy[k] == b.xy[k]);
}

TEST_CASE("in-plane Hessian is positive semidefinite at the minimum") {
    for (const char* name : {"rhombus4", "hexagon7", "crystal10"}) {
        TrapParams trap = trap_preset(name);
        IonCrystal c = equilibrium_positions(trap, preset_ion_count(name), 24, 4);
        StabilityReport rep = verify_stability(c, trap);
        CHECK(rep.min_inplane_eigenvalue > -1e-9);
        CHECK(rep.planar_stable);
        // no coalesced ions
        for (int i = 0; i < c.n_ions; ++i)
            for (int j = i + 1; j < c.n_ions; ++j)
                CHECK(std::hypot(c.x(i) - c.x(j), c.y(i) - c.y(j)) > 1e-6);
    }
}

TEST_CASE("two-ion transverse stiffness: closed form a_z - 2/d^3 = 24") {
    TrapParams trap = isotropic_trap(5.0);  // a_z = 25
    IonCrystal c = equilibrium_positions(trap, 2, 8, 1);
    StabilityReport rep = verify_stability(c, trap);
    CHECK(rep.min_transverse_eigenvalue == doctest::Approx(24.0).epsilon(1e-10));
    CHECK(rep.planar_stable);
}

TEST_CASE("no transverse confinement flags planar instability") {
    TrapParams trap = isotropic_trap();
    IonCrystal c = equilibrium_positions(trap, 3, 8, 1);
    trap.omega_z = rad_from_khz(1e-3);  // a_z ~ 0
    StabilityReport rep = verify_stability(c, trap);
    CHECK(rep.min_transverse_eigenvalue < 0.0);
    CHECK_FALSE(rep.planar_stable);
}

TEST_CASE("planar-crystal condition is enforced") {
    TrapParams trap;
    trap.omega_x = rad_from_khz(700.0);
    trap.omega_y = rad_from_khz(500.0);
    trap.omega_z = rad_from_khz(600.0);  // < omega_x
    CHECK_THROWS_AS(equilibrium_positions(trap, 4, 4, 1), ValidationError);
}
