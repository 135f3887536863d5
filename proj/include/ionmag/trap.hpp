#pragma once

#include <cmath>
#include <string>

#include "ionmag/errors.hpp"
#include "ionmag/units.hpp"

namespace ionmag {

// Harmonic confinement of the Paul trap plus the ion species. All
// frequencies are angular (rad/s); config files take f = omega/2pi in kHz.
struct TrapParams {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double omega_z = 0.0;
    double ion_mass = 171.0 * kAmuKg;
    double ion_charge = kElementaryCharge;

    double omega_ref() const { return std::min(omega_x, omega_y); }
    double ax() const { double r = omega_x / omega_ref(); return r * r; }
    double ay() const { double r = omega_y / omega_ref(); return r * r; }
    double az() const { double r = omega_z / omega_ref(); return r * r; }

    // Dimensionless unit of length: l = (q^2 / (4 pi eps0 M w_ref^2))^(1/3).
    double length_scale() const {
        const double w = omega_ref();
        return std::cbrt(ion_charge * ion_charge /
                         (4.0 * kPi * kEps0 * ion_mass * w * w));
    }
};

inline void validate_trap(const TrapParams& t, const std::string& path = "trap") {
    if (!(t.omega_x > 0.0)) throw ValidationError(path + ".omega_x_khz", "must be > 0");
    if (!(t.omega_y > 0.0)) throw ValidationError(path + ".omega_y_khz", "must be > 0");
    if (!(t.omega_z > 0.0)) throw ValidationError(path + ".omega_z_khz", "must be > 0");
    if (!(t.ion_mass > 0.0)) throw ValidationError(path + ".mass_amu", "must be > 0");
    if (t.ion_charge == 0.0) throw ValidationError(path + ".charge_e", "must be nonzero");
}

// Planar-crystal condition: the axial confinement must beat both in-plane
// frequencies or the crystal buckles out of the x-y plane.
inline void validate_planar(const TrapParams& t, const std::string& path = "trap") {
    validate_trap(t, path);
    if (!(t.omega_z > std::max(t.omega_x, t.omega_y)))
        throw ValidationError(path + ".omega_z_khz",
                              "planar-crystal condition violated: omega_z must exceed "
                              "max(omega_x, omega_y) for a 2D crystal");
}

inline bool trap_is_isotropic(const TrapParams& t) {
    return std::abs(t.ax() - t.ay()) < 1e-12;
}

}  // namespace ionmag
