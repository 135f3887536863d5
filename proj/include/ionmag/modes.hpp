#pragma once

#include <vector>

#include "ionmag/crystal.hpp"
#include "ionmag/linalg.hpp"
#include "ionmag/trap.hpp"

namespace ionmag {

// Transverse (out-of-plane) phonon spectrum of a planar crystal. Column m of
// mode_matrix is the normal-mode vector b_{.,m}; frequencies are sorted
// descending so the center-of-mass mode (at omega_z, uniform vector) is
// always index 0.
struct ModeSpectrum {
    int n_ions = 0;
    std::vector<double> frequencies;  // rad/s, descending
    Matrix mode_matrix;               // N x N, orthonormal columns
    TrapParams trap;
};

// Eigendecomposition of the dimensionless transverse stiffness matrix.
// Throws UnstableCrystal if any eigenvalue is <= 0. Degenerate subspaces are
// re-spanned deterministically (Gram-Schmidt against the canonical basis) so
// the returned vectors do not depend on eigensolver internals; each column's
// largest-magnitude entry is made positive; degenerate columns are ordered
// lexicographically by rounded entries.
ModeSpectrum transverse_modes(const IonCrystal& crystal, const TrapParams& trap);

struct ModeCombRow {
    int index_from_com = 0;        // 1 = COM
    double frequency_mhz = 0.0;    // f = omega / 2pi
    std::vector<double> weights;   // |b_{i,m}|^2 per ion, sums to 1
};

std::vector<ModeCombRow> mode_comb(const ModeSpectrum& spectrum);

}  // namespace ionmag
