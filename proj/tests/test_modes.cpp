#include <doctest.h>

#include <cmath>

#include "ionmag/modes.hpp"
#include "ionmag/presets.hpp"
#include "oracles.hpp"

using namespace ionmag;

namespace {

ModeSpectrum spectrum_for(const char* preset, uint64_t seed = 2) {
    TrapParams trap = trap_preset(preset);
    IonCrystal c = equilibrium_positions(trap, preset_ion_count(preset), 24, seed);
    return transverse_modes(c, trap);
}

}  // namespace

TEST_CASE("single ion: one mode at omega_z with unit vector") {
    TrapParams trap = trap_preset("pair2");
    IonCrystal c = equilibrium_positions(trap, 1, 1, 0);
    ModeSpectrum s = transverse_modes(c, trap);
    CHECK(s.frequencies.size() == 1);
    CHECK(s.frequencies[0] == doctest::Approx(trap.omega_z).epsilon(1e-12));
    CHECK(std::abs(s.mode_matrix(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two ions: dimensionless eigenvalues {a_z, a_z - 1}") {
    TrapParams trap = trap_preset("pair2");
    const double wref = trap.omega_ref();
    IonCrystal c = equilibrium_positions(trap, 2, 8, 1);
    ModeSpectrum s = transverse_modes(c, trap);
    const double lam0 = std::pow(s.frequencies[0] / wref, 2);
    const double lam1 = std::pow(s.frequencies[1] / wref, 2);
    CHECK(lam0 == doctest::Approx(trap.az()).epsilon(1e-10));
    CHECK(lam1 == doctest::Approx(trap.az() - 1.0).epsilon(1e-10));
    // COM (1,1)/sqrt2 and rocking (1,-1)/sqrt2 up to the sign convention
    CHECK(std::abs(s.mode_matrix(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(s.mode_matrix(0, 0) * s.mode_matrix(1, 0) > 0.0);
    CHECK(s.mode_matrix(0, 1) * s.mode_matrix(1, 1) < 0.0);
}

TEST_CASE("COM mode sits exactly at omega_z with the uniform vector") {
    for (const char* preset : {"rhombus4", "hexagon7", "crystal10", "disc12"}) {
        ModeSpectrum s = spectrum_for(preset);
        TrapParams trap = trap_preset(preset);
        CHECK(std::abs(s.frequencies[0] - trap.omega_z) / trap.omega_z < 1e-10);
        const double expect = 1.0 / std::sqrt(double(s.n_ions));
        for (int i = 0; i < s.n_ions; ++i)
            CHECK(s.mode_matrix(i, 0) == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("mode matrix is orthonormal and eigen-residuals vanish") {
    for (const char* preset : {"pair2", "rhombus4", "hexagon7", "crystal10", "disc12"}) {
        TrapParams trap = trap_preset(preset);
        IonCrystal c = equilibrium_positions(trap, preset_ion_count(preset), 24, 7);
        ModeSpectrum s = transverse_modes(c, trap);
        CHECK(orthonormality_defect(s.mode_matrix) < 1e-10);

        Matrix k = transverse_stiffness(c, trap);
        const double wref = trap.omega_ref();
        for (int m = 0; m < s.n_ions; ++m) {
            const double lam = std::pow(s.frequencies[m] / wref, 2);
            CHECK(lam <= trap.az() + 1e-12);  // Coulomb only softens
            std::vector<double> b(s.n_ions);
            for (int i = 0; i < s.n_ions; ++i) b[i] = s.mode_matrix(i, m);
            std::vector<double> kb = matvec(k, b);
            double r = 0.0;
            for (int i = 0; i < s.n_ions; ++i) {
                const double d = kb[i] - lam * b[i];
                r += d * d;
            }
            CHECK(std::sqrt(r) < 1e-10);
        }
    }
}

TEST_CASE("hexagon spectrum matches the independent Jacobi eigensolver") {
    TrapParams trap = trap_preset("hexagon7");
    IonCrystal c = equilibrium_positions(trap, 7, 24, 3);
    ModeSpectrum s = transverse_modes(c, trap);
    SymEig ref = oracle::jacobi_eigen(transverse_stiffness(c, trap));
    const double wref = trap.omega_ref();
    for (int m = 0; m < 7; ++m) {
        const double lam = std::pow(s.frequencies[m] / wref, 2);
        CHECK(lam == doctest::Approx(ref.values[6 - m]).epsilon(1e-10));
    }
}

TEST_CASE("completeness: sum_m b_im b_jm = delta_ij") {
    ModeSpectrum s = spectrum_for("disc12");
    for (int i = 0; i < s.n_ions; ++i) {
        for (int j = 0; j < s.n_ions; ++j) {
            double sum = 0.0;
            for (int m = 0; m < s.n_ions; ++m)
                sum += s.mode_matrix(i, m) * s.mode_matrix(j, m);
            CHECK(std::abs(sum - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("mode ordering and vectors are reproducible") {
    ModeSpectrum a = spectrum_for("hexagon7", 21);
    ModeSpectrum b = spectrum_for("hexagon7", 21);
    for (int m = 0; m < a.n_ions; ++m) {
        CHECK(a.frequencies[m] == b.frequencies[m]);
        for (int i = 0; i < a.n_ions; ++i) CHECK(a.mode_matrix(i, m) == b.mode_matrix(i, m));
    }
}

TEST_CASE("unstable crystal is rejected") {
    TrapParams trap = trap_preset("hexagon7");
    IonCrystal c = equilibrium_positions(trap, 7, 16, 2);
    trap.omega_z = trap.omega_x * 1.0001;  // planar but transversally soft
    CHECK_THROWS_AS(transverse_modes(c, trap), UnstableCrystal);
}

TEST_CASE("mode comb rows: COM first, weights sum to one") {
    ModeSpectrum s = spectrum_for("hexagon7");
    auto rows = mode_comb(s);
    REQUIRE(rows.size() == 7);
    CHECK(rows.front().index_from_com == 1);
    CHECK(rows.front().frequency_mhz ==
          doctest::Approx(mhz_from_rad(s.trap.omega_z)).epsilon(1e-10));
    for (const auto& row : rows) {
        double sum = 0.0;
        for (double w : row.weights) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    // two-ion rocking mode weights (0.5, 0.5)
    ModeSpectrum pair = spectrum_for("pair2");
    auto prows = mode_comb(pair);
    CHECK(prows[1].weights[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(prows[1].weights[1] == doctest::Approx(0.5).epsilon(1e-10));
}
