#pragma once

#include <optional>
#include <vector>

#include "ionmag/linalg.hpp"
#include "ionmag/modes.hpp"

namespace ionmag {

inline constexpr double kDefaultResonanceGuard = kTwoPi * 1e3;  // rad/s
inline constexpr double kDefaultCarrierHz = 12.642812e9;        // 171Yb+ hyperfine

// Bichromatic Raman drive. mu is the detuning from the carrier; recoil is
// hbar (dk)^2 / (2M). The carrier frequency is metadata only: everything
// downstream works in the rotating frame.
struct RamanDrive {
    std::vector<double> rabi;  // Omега_i, rad/s, one per ion
    double mu = 0.0;           // rad/s
    double recoil = 0.0;       // rad/s
    std::optional<double> delta_k;  // 1/m, when recoil was derived from it
    double carrier_hint_hz = kDefaultCarrierHz;
    double resonance_guard = kDefaultResonanceGuard;

    static double recoil_from_delta_k(double delta_k, double ion_mass);
};

void validate_drive(const RamanDrive& drive);

// Signed symmetric spin-spin coupling graph, zero diagonal, rad/s.
// Convention: H = sum_{i<j} J_ij sy_i sy_j + B sum_i sx_i, so J > 0 is
// antiferromagnetic. sign_flip records that the matrix was negated to model
// the highest-excited-state trick.
struct CouplingMatrix {
    int n_ions = 0;
    Matrix j;
    bool sign_flip = false;

    static CouplingMatrix zero(int n);
};

// J_ij = Omega_i Omega_j recoil sum_m b_im b_jm / (mu^2 - omega_m^2), the
// exact sum over all transverse modes. Throws ResonantDetuning when mu is
// within resonance_guard of any mode.
CouplingMatrix coupling_matrix(const ModeSpectrum& spectrum, const RamanDrive& drive);

CouplingMatrix apply_sign_flip(CouplingMatrix m);

struct DiagramEdge {
    int i = 0, j = 0;
    double j_rad = 0.0;  // signed coupling, rad/s
    int tier = 1;        // 1 = strongest magnitude tier
    bool ferromagnetic() const { return j_rad < 0.0; }
};

struct InteractionDiagram {
    std::vector<DiagramEdge> edges;  // |J| descending, then (i, j)
    int n_dropped = 0;
    double threshold_abs = 0.0;      // rad/s cut actually applied
};

// Threshold is a fraction of max |J_ij| in (0, 1). Retained edges are sorted
// by descending magnitude; a new tier starts when |J| falls below 0.6x the
// tier's leading edge.
InteractionDiagram classify_graph(const CouplingMatrix& m, double edge_threshold = 0.2);

}  // namespace ionmag
