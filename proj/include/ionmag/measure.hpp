#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ionmag/ising.hpp"
#include "ionmag/state.hpp"

namespace ionmag {

enum class PauliBasis { x, y, z };

PauliBasis parse_basis(const std::string& name);
std::string basis_name(PauliBasis b);

// Probabilities over the 2^N product eigenbasis of the chosen Pauli, in
// binary order: bit i of the index (MSB = ion 0) is 1 when ion i is measured
// in the +1 eigenstate. Negative rounding noise is clamped to zero.
struct PopulationHistogram {
    int n_spins = 0;
    PauliBasis basis = PauliBasis::y;
    std::vector<double> probs;
};

PopulationHistogram basis_populations(const SpinState& state, PauliBasis basis);

// "up arrow down arrow" label for one configuration, ion 0 leftmost.
std::string config_label(uint32_t config, int n_spins);

// Distribution of S_x = (1/2) sum_i sigma_x; probs[k] belongs to the
// eigenvalue k - N/2 (k = number of spins found along +x).
struct SxDistribution {
    int n_spins = 0;
    std::vector<double> probs;  // size N + 1

    double value(int k) const { return k - 0.5 * n_spins; }
    double mean() const;
};

SxDistribution sx_distribution(const SpinState& state);

// Sum of y-basis probabilities over the manifold configurations. The
// histogram must be a y-basis histogram of a state with the same spin count.
double ground_state_fraction(const PopulationHistogram& hist, const GroundManifold& manifold);

// Finite statistics emulation: each spin label flips independently with
// probability prep_error, then n_shots multinomial draws. Deterministic for
// a fixed seed.
std::vector<uint64_t> sample_shots(const PopulationHistogram& hist, uint64_t n_shots,
                                   double prep_error, uint64_t seed);

// The flip channel alone (the deterministic part of sample_shots).
std::vector<double> convolve_prep_error(const std::vector<double>& probs, int n_spins,
                                        double prep_error);

}  // namespace ionmag
