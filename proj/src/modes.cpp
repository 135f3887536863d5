#include "ionmag/modes.hpp"

#include <algorithm>
#include <cmath>

#include "ionmag/errors.hpp"

namespace ionmag {

ModeSpectrum transverse_modes(const IonCrystal& crystal, const TrapParams& trap) {
    validate_planar(trap);
    const int n = crystal.n_ions;
    Matrix k = transverse_stiffness(crystal, trap);
    SymEig eig = sym_eigen(k);  // ascending

    for (double lam : eig.values)
        if (!(lam > 0.0))
            throw UnstableCrystal("transverse stiffness eigenvalue " + std::to_string(lam) +
                                  " <= 0; crystal is not planar-stable");

    // descending order
    std::vector<double> lam(n);
    Matrix vec(n, n);
    for (int m = 0; m < n; ++m) {
        lam[m] = eig.values[n - 1 - m];
        for (int i = 0; i < n; ++i) vec(i, m) = eig.vectors(i, n - 1 - m);
    }

    // Deterministic vectors inside degenerate clusters: project canonical
    // basis vectors e_0, e_1, ... onto the cluster span and Gram-Schmidt.
    const double scale = std::max(std::abs(lam.front()), std::abs(lam.back()));
    const double tol = 1e-9 * std::max(1.0, scale);
    int c0 = 0;
    while (c0 < n) {
        int c1 = c0 + 1;
        while (c1 < n && std::abs(lam[c1] - lam[c0]) <= tol) ++c1;
        const int g = c1 - c0;
        if (g > 1) {
            std::vector<std::vector<double>> basis;
            for (int seed = 0; seed < n && int(basis.size()) < g; ++seed) {
                // projection of e_seed onto the cluster span
                std::vector<double> v(n, 0.0);
                for (int m = c0; m < c1; ++m) {
                    const double coef = vec(seed, m);
                    for (int i = 0; i < n; ++i) v[i] += coef * vec(i, m);
                }
                for (const auto& b : basis) {
                    double d = 0.0;
                    for (int i = 0; i < n; ++i) d += b[i] * v[i];
                    for (int i = 0; i < n; ++i) v[i] -= d * b[i];
                }
                double nrm = 0.0;
                for (double x : v) nrm += x * x;
                nrm = std::sqrt(nrm);
                if (nrm > 1e-8) {
                    for (double& x : v) x /= nrm;
                    basis.push_back(std::move(v));
                }
            }
            if (int(basis.size()) == g)
                for (int m = c0; m < c1; ++m)
                    for (int i = 0; i < n; ++i) vec(i, m) = basis[m - c0][i];
        }
        c0 = c1;
    }

    for (int m = 0; m < n; ++m) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i)
            if (std::abs(vec(i, m)) > best) {
                best = std::abs(vec(i, m));
                arg = i;
            }
        if (vec(arg, m) < 0.0)
            for (int i = 0; i < n; ++i) vec(i, m) = -vec(i, m);
    }

    // order degenerate columns lexicographically by rounded entries
    c0 = 0;
    while (c0 < n) {
        int c1 = c0 + 1;
        while (c1 < n && std::abs(lam[c1] - lam[c0]) <= tol) ++c1;
        if (c1 - c0 > 1) {
            std::vector<int> order;
            for (int m = c0; m < c1; ++m) order.push_back(m);
            auto rounded = [&](int m, int i) { return std::round(vec(i, m) * 1e8); };
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                for (int i = 0; i < n; ++i) {
                    const double ra = rounded(a, i), rb = rounded(b, i);
                    if (ra != rb) return ra < rb;
                }
                return false;
            });
            Matrix tmp(n, c1 - c0);
            for (int k2 = 0; k2 < c1 - c0; ++k2)
                for (int i = 0; i < n; ++i) tmp(i, k2) = vec(i, order[k2]);
            for (int k2 = 0; k2 < c1 - c0; ++k2)
                for (int i = 0; i < n; ++i) vec(i, c0 + k2) = tmp(i, k2);
        }
        c0 = c1;
    }

    ModeSpectrum spec;
    spec.n_ions = n;
    spec.trap = trap;
    spec.mode_matrix = std::move(vec);
    spec.frequencies.resize(n);
    const double wref = trap.omega_ref();
    for (int m = 0; m < n; ++m) spec.frequencies[m] = wref * std::sqrt(lam[m]);
    return spec;
}

std::vector<ModeCombRow> mode_comb(const ModeSpectrum& spectrum) {
    std::vector<ModeCombRow> rows;
    rows.reserve(spectrum.n_ions);
    for (int m = 0; m < spectrum.n_ions; ++m) {
        ModeCombRow row;
        row.index_from_com = m + 1;
        row.frequency_mhz = mhz_from_rad(spectrum.frequencies[m]);
        row.weights.resize(spectrum.n_ions);
        for (int i = 0; i < spectrum.n_ions; ++i) {
            const double b = spectrum.mode_matrix(i, m);
            row.weights[i] = b * b;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ionmag
