#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ionmag/linalg.hpp"
#include "ionmag/trap.hpp"

namespace ionmag {

inline constexpr double kGradTol = 1e-10;
inline constexpr int kMaxMinimizeIters = 100000;
inline constexpr double kCoincidenceDist = 1e-9;

// Minimized planar crystal in dimensionless units (length scale from
// TrapParams::length_scale). Positions are stored x0,y0,x1,y1,...
struct IonCrystal {
    int n_ions = 0;
    std::vector<double> xy;
    double potential_energy = 0.0;
    double gradient_norm = 0.0;

    double x(int i) const { return xy[2 * i]; }
    double y(int i) const { return xy[2 * i + 1]; }
};

struct PotentialEval {
    double energy = 0.0;
    std::vector<double> gradient;  // 2N, same layout as positions
};

// E = sum_i (a_x x_i^2 + a_y y_i^2)/2 + sum_{i<j} 1/|u_i - u_j|, with the
// exact analytic gradient. Throws CoincidentIons below kCoincidenceDist.
PotentialEval dimensionless_potential(std::span<const double> xy, const TrapParams& trap);

// 2N x 2N Hessian of the same energy.
Matrix inplane_hessian(std::span<const double> xy, const TrapParams& trap);

// Transverse (out-of-plane) stiffness: K_ii = a_z - sum_k 1/d_ik^3,
// K_ij = 1/d_ij^3. Shared by verify_stability and the mode solver.
Matrix transverse_stiffness(const IonCrystal& crystal, const TrapParams& trap);

// Multi-start damped-Newton minimization; deterministic for a fixed seed.
// Restart r draws its start uniformly from a disc of radius 2 sqrt(N); the
// reduction is argmin over restarts with ties broken by lower restart index.
IonCrystal equilibrium_positions(const TrapParams& trap, int n_ions, int restarts = 32,
                                 uint64_t rng_seed = 0);

// Newton polish from an explicit starting configuration (also used by the
// idempotence tests).
IonCrystal refine_crystal(const TrapParams& trap, std::span<const double> start_xy);

struct StabilityReport {
    double min_inplane_eigenvalue = 0.0;
    double min_transverse_eigenvalue = 0.0;
    bool planar_stable = false;
};

StabilityReport verify_stability(const IonCrystal& crystal, const TrapParams& trap);

// Canonical orientation: for isotropic traps rotate the ion farthest from
// the centroid onto +x, then sort ions lexicographically by (x, y).
void canonicalize_crystal(IonCrystal& crystal, const TrapParams& trap);

}  // namespace ionmag
