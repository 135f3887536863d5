#pragma once

#include <cstdint>
#include <vector>

#include "ionmag/coupling.hpp"
#include "ionmag/linalg.hpp"
#include "ionmag/schedule.hpp"

namespace ionmag {

inline constexpr int kMaxClassicalSpins = 24;
inline constexpr int kMaxDenseSpins = 14;
inline constexpr int kMaxGapSpins = 12;
inline constexpr double kDegeneracyRelTol = 1e-9;  // relative to spectral width

// Exactly degenerate classical ground set of H_Ising at B = 0. A config's
// bit i (most significant bit = ion 0) is 1 when spin i sits in the +1
// eigenstate of sigma_y.
struct GroundManifold {
    double energy = 0.0;            // rad/s
    std::vector<uint32_t> configs;  // ascending as integers
    int degeneracy = 0;
};

// E(s) = sum_{i<j} J_ij s_i s_j for one configuration.
double config_energy(const CouplingMatrix& j, uint32_t config);

// Brute-force enumeration over all 2^N configurations, N <= 24. Minimizers
// are collected within kDegeneracyRelTol of the spectral width.
GroundManifold classical_ground_manifold(const CouplingMatrix& j);

// H = sum_{i<j} J_ij sy_i sy_j + B sum_i sx_i in the computational basis.
// Real symmetric because sy x sy and sx are real there. N <= 14.
Matrix dense_hamiltonian(const CouplingMatrix& j, double b_field);

// Z2 sector machinery for the global flip G = prod_i sigma_x. The sector
// basis pairs each index b with its complement: (|b> + parity |~b>)/sqrt2,
// one representative (b < ~b) per pair.
struct SectorBasis {
    int n_spins = 0;
    int parity = +1;                // eigenvalue of G
    std::vector<uint32_t> reps;     // ascending
};

SectorBasis flip_sector_basis(int n_spins, int parity);
Matrix sector_hamiltonian(const CouplingMatrix& j, double b_field, const SectorBasis& basis);
// sum_i sigma_x restricted to the sector (it commutes with G).
Matrix sector_total_sx(const SectorBasis& basis);

struct GapSample {
    double t = 0.0;
    double b_field = 0.0;
    std::vector<double> sector_eigenvalues;  // lowest k, ascending
    double gap = 0.0;  // E_first-coupled - E0 within the sector
};

struct GapProfile {
    int sector_parity = +1;
    std::vector<GapSample> samples;
};

// Eigen-decomposes H(t) on a uniform grid of n_samples points (endpoints
// included) restricted to the flip sector of the initial all-(-x) state.
// "Coupled" means |<excited| sum sigma_x |ground>| > 1e-8, the only operator
// the ramp varies. N <= 12.
GapProfile gap_profile(const CouplingMatrix& j, const RampSchedule& schedule, int n_samples,
                       int k_levels);

}  // namespace ionmag
