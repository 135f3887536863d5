#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "ionmag/errors.hpp"

namespace ionmag {

inline constexpr int kMaxQuantumSpins = 14;

using cplx = std::complex<double>;
using c2x2 = std::array<cplx, 4>;  // row-major {u00, u01, u10, u11}

// 2^N complex amplitudes over the computational (sigma_z product) basis.
// Bit conventions, used consistently everywhere:
//   - basis index bit for ion i (0-based) sits at position n_spins-1-i, so
//     ion 0 is the most significant bit ("binary order" of the readout);
//   - basis vector e0 is the +1 eigenstate of sigma_z.
struct SpinState {
    int n_spins = 0;
    std::vector<cplx> amplitudes;

    size_t dim() const { return amplitudes.size(); }
    int bit_of(uint32_t config, int ion) const { return int((config >> (n_spins - 1 - ion)) & 1u); }
    double norm() const;
};

void check_spin_count(int n, int cap = kMaxQuantumSpins);

// Product state with every spin in the -1 eigenstate of sigma_x, i.e. the
// ground state of +B sum_i sigma_x: amplitudes (-1)^popcount(index) / 2^(N/2).
SpinState initial_state(int n_spins);

// In-place application of a single-qubit operator to one ion.
void apply_single_qubit(SpinState& state, int ion, const c2x2& u);

// Measurement maps onto the computational basis: row 0 of each matrix is the
// bra of the -1 eigenstate, row 1 the bra of the +1 eigenstate, so bit 1 of a
// histogram index always means "+1 eigenvalue of the measured Pauli". The
// global phases are fixed by these literal matrices.
const c2x2& basis_rotation_x();  // {<-x|, <+x|}
const c2x2& basis_rotation_y();  // {<-y|, <+y|}
const c2x2& basis_rotation_z();  // {<-z|, <+z|} = bit swap
c2x2 dagger(const c2x2& u);

}  // namespace ionmag
