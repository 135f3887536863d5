#include "ionmag/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "ionmag/errors.hpp"
#include "ionmag/units.hpp"

namespace ionmag {

double RamanDrive::recoil_from_delta_k(double delta_k, double ion_mass) {
    return kHbar * delta_k * delta_k / (2.0 * ion_mass);
}

void validate_drive(const RamanDrive& drive) {
    for (size_t i = 0; i < drive.rabi.size(); ++i)
        if (!(drive.rabi[i] >= 0.0))
            throw ValidationError("drive.rabi_khz[" + std::to_string(i) + "]", "must be >= 0");
    if (!(drive.mu > 0.0)) throw ValidationError("drive.mu_mhz", "must be > 0");
    if (!(drive.recoil > 0.0)) throw ValidationError("drive.recoil_khz", "must be > 0");
}

CouplingMatrix CouplingMatrix::zero(int n) {
    CouplingMatrix m;
    m.n_ions = n;
    m.j = Matrix(n, n);
    return m;
}

CouplingMatrix coupling_matrix(const ModeSpectrum& spectrum, const RamanDrive& drive) {
    validate_drive(drive);
    const int n = spectrum.n_ions;
    if (int(drive.rabi.size()) != n)
        throw DimensionMismatch("drive.rabi length " + std::to_string(drive.rabi.size()) +
                                " does not match spectrum n_ions " + std::to_string(n));
    for (int m = 0; m < n; ++m) {
        const double gap = std::abs(drive.mu - spectrum.frequencies[m]);
        if (gap <= drive.resonance_guard)
            throw ResonantDetuning("mu within resonance guard of mode " + std::to_string(m + 1) +
                                   " (|mu - omega_m| = " + std::to_string(khz_from_rad(gap)) +
                                   " 2pi kHz)");
    }

    CouplingMatrix out = CouplingMatrix::zero(n);
    const double mu2 = drive.mu * drive.mu;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (int m = 0; m < n; ++m) {
                const double wm = spectrum.frequencies[m];
                s += spectrum.mode_matrix(i, m) * spectrum.mode_matrix(j, m) / (mu2 - wm * wm);
            }
            const double jij = drive.rabi[i] * drive.rabi[j] * drive.recoil * s;
            out.j(i, j) = jij;
            out.j(j, i) = jij;
        }
    }
    return out;
}

CouplingMatrix apply_sign_flip(CouplingMatrix m) {
    for (int i = 0; i < m.n_ions; ++i)
        for (int j = 0; j < m.n_ions; ++j) m.j(i, j) = -m.j(i, j);
    m.sign_flip = !m.sign_flip;
    return m;
}

InteractionDiagram classify_graph(const CouplingMatrix& m, double edge_threshold) {
    if (!(edge_threshold > 0.0 && edge_threshold < 1.0))
        throw ValidationError("edge_threshold", "must be in (0, 1)");
    double jmax = 0.0;
    for (int i = 0; i < m.n_ions; ++i)
        for (int j = i + 1; j < m.n_ions; ++j) jmax = std::max(jmax, std::abs(m.j(i, j)));

    InteractionDiagram diag;
    diag.threshold_abs = edge_threshold * jmax;
    for (int i = 0; i < m.n_ions; ++i) {
        for (int j = i + 1; j < m.n_ions; ++j) {
            const double v = m.j(i, j);
            if (std::abs(v) >= diag.threshold_abs && v != 0.0)
                diag.edges.push_back({i, j, v, 1});
            else if (v != 0.0)
                ++diag.n_dropped;
        }
    }
    std::stable_sort(diag.edges.begin(), diag.edges.end(), [](const DiagramEdge& a,
                                                              const DiagramEdge& b) {
        if (std::abs(a.j_rad) != std::abs(b.j_rad)) return std::abs(a.j_rad) > std::abs(b.j_rad);
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    int tier = 1;
    double leader = diag.edges.empty() ? 0.0 : std::abs(diag.edges.front().j_rad);
    for (auto& e : diag.edges) {
        if (std::abs(e.j_rad) < 0.6 * leader) {
            ++tier;
            leader = std::abs(e.j_rad);
        }
        e.tier = tier;
    }
    return diag;
}

}  // namespace ionmag
