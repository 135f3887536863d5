#include "ionmag/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ionmag/errors.hpp"
#include "ionmag/state.hpp"

namespace ionmag {

namespace {

inline double spin_of_bit(uint32_t config, int n, int ion) {
    return ((config >> (n - 1 - ion)) & 1u) ? 1.0 : -1.0;
}

}  // namespace

double config_energy(const CouplingMatrix& j, uint32_t config) {
    const int n = j.n_ions;
    double e = 0.0;
    for (int a = 0; a < n; ++a) {
        const double sa = spin_of_bit(config, n, a);
        for (int b = a + 1; b < n; ++b) e += j.j(a, b) * sa * spin_of_bit(config, n, b);
    }
    return e;
}

GroundManifold classical_ground_manifold(const CouplingMatrix& j) {
    const int n = j.n_ions;
    if (n < 1) throw ValidationError("n_ions", "must be >= 1");
    if (n > kMaxClassicalSpins) throw TooManySpins(n, kMaxClassicalSpins);

    const uint32_t count = uint32_t(1) << n;
    // Gray-code walk with cached local fields: flipping one spin updates the
    // energy in O(N).
    std::vector<double> spin(n, -1.0);  // config 0
    std::vector<double> field(n, 0.0);
    double e = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (b != a) field[a] += j.j(a, b) * spin[b];
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) e += j.j(a, b) * spin[a] * spin[b];

    double emin = e, emax = e;
    std::vector<std::pair<double, uint32_t>> low;  // candidates near the running min
    low.push_back({e, 0});

    uint32_t gray = 0;
    for (uint32_t i = 1; i < count; ++i) {
        const uint32_t next = i ^ (i >> 1);
        const int flipped_bit = std::countr_zero(gray ^ next);
        gray = next;
        const int ion = n - 1 - flipped_bit;
        const double s_new = -spin[ion];
        e += 2.0 * s_new * field[ion];
        for (int b = 0; b < n; ++b)
            if (b != ion) field[b] += 2.0 * s_new * j.j(b, ion);
        spin[ion] = s_new;
        emin = std::min(emin, e);
        emax = std::max(emax, e);
        // keep a generous band; exact filtering happens below
        if (e <= emin + 1e-6 * std::max(1.0, std::abs(emin))) low.push_back({e, gray});
    }

    const double width = emax - emin;
    const double eps = kDegeneracyRelTol * (width > 0.0 ? width : std::max(1.0, std::abs(emin)));

    // Recompute candidate energies exactly to wash out Gray-walk drift.
    GroundManifold m;
    double exact_min = 0.0;
    bool first = true;
    std::vector<std::pair<double, uint32_t>> exact;
    exact.reserve(low.size());
    for (auto& [eApprox, cfg] : low) {
        const double ex = config_energy(j, cfg);
        exact.push_back({ex, cfg});
        if (first || ex < exact_min) {
            exact_min = ex;
            first = false;
        }
    }
    for (auto& [ex, cfg] : exact)
        if (ex <= exact_min + eps) m.configs.push_back(cfg);
    std::sort(m.configs.begin(), m.configs.end());
    m.configs.erase(std::unique(m.configs.begin(), m.configs.end()), m.configs.end());
    m.energy = exact_min;
    m.degeneracy = int(m.configs.size());
    return m;
}

Matrix dense_hamiltonian(const CouplingMatrix& j, double b_field) {
    const int n = j.n_ions;
    if (n < 1) throw ValidationError("n_ions", "must be >= 1");
    if (n > kMaxDenseSpins) throw TooManySpins(n, kMaxDenseSpins);
    const uint32_t dim = uint32_t(1) << n;
    Matrix h(static_cast<int>(dim), static_cast<int>(dim));
    for (uint32_t b = 0; b < dim; ++b) {
        for (int i = 0; i < n; ++i) {
            const uint32_t mi = uint32_t(1) << (n - 1 - i);
            // sigma_x flips the bit with coefficient 1
            h(int(b ^ mi), int(b)) += b_field;
            for (int k = i + 1; k < n; ++k) {
                if (j.j(i, k) == 0.0) continue;
                const uint32_t mk = uint32_t(1) << (n - 1 - k);
                // sy_i sy_k |b> = -s_i(b) s_k(b) |b ^ mi ^ mk>
                const double si = (b & mi) ? 1.0 : -1.0;
                const double sk = (b & mk) ? 1.0 : -1.0;
                h(int(b ^ mi ^ mk), int(b)) += -j.j(i, k) * si * sk;
            }
        }
    }
    return h;
}

SectorBasis flip_sector_basis(int n_spins, int parity) {
    check_spin_count(n_spins, kMaxDenseSpins);
    SectorBasis basis;
    basis.n_spins = n_spins;
    basis.parity = parity;
    const uint32_t dim = uint32_t(1) << n_spins;
    const uint32_t full = dim - 1;
    basis.reps.reserve(dim / 2);
    for (uint32_t b = 0; b < dim; ++b)
        if (b < (b ^ full)) basis.reps.push_back(b);
    return basis;
}

namespace {

// Column-wise assembly of an operator restricted to the flip sector. The
// generator enumerates (target, coefficient) pairs for H|b>.
template <typename Gen>
Matrix sector_operator(const SectorBasis& basis, Gen&& generate) {
    const int dim = int(basis.reps.size());
    const uint32_t full = (uint32_t(1) << basis.n_spins) - 1;
    std::vector<int> index_of(size_t(1) << basis.n_spins, -1);
    for (int k = 0; k < dim; ++k) index_of[basis.reps[k]] = k;
    Matrix m(dim, dim);
    for (int col = 0; col < dim; ++col) {
        generate(basis.reps[col], [&](uint32_t target, double coeff) {
            const uint32_t comp = target ^ full;
            if (target <= comp)
                m(index_of[target], col) += coeff;
            else
                m(index_of[comp], col) += basis.parity * coeff;
        });
    }
    return m;
}

}  // namespace

Matrix sector_hamiltonian(const CouplingMatrix& j, double b_field, const SectorBasis& basis) {
    const int n = basis.n_spins;
    return sector_operator(basis, [&](uint32_t b, auto&& emit) {
        for (int i = 0; i < n; ++i) {
            const uint32_t mi = uint32_t(1) << (n - 1 - i);
            emit(b ^ mi, b_field);
            for (int k = i + 1; k < n; ++k) {
                if (j.j(i, k) == 0.0) continue;
                const uint32_t mk = uint32_t(1) << (n - 1 - k);
                const double si = (b & mi) ? 1.0 : -1.0;
                const double sk = (b & mk) ? 1.0 : -1.0;
                emit(b ^ mi ^ mk, -j.j(i, k) * si * sk);
            }
        }
    });
}

Matrix sector_total_sx(const SectorBasis& basis) {
    const int n = basis.n_spins;
    return sector_operator(basis, [&](uint32_t b, auto&& emit) {
        for (int i = 0; i < n; ++i) emit(b ^ (uint32_t(1) << (n - 1 - i)), 1.0);
    });
}

GapProfile gap_profile(const CouplingMatrix& j, const RampSchedule& schedule, int n_samples,
                       int k_levels) {
    const int n = j.n_ions;
    if (n > kMaxGapSpins) throw TooManySpins(n, kMaxGapSpins);
    if (n_samples < 2) throw ValidationError("samples", "need at least 2 samples");
    schedule.validate();

    GapProfile profile;
    profile.sector_parity = (n % 2 == 0) ? +1 : -1;  // G eigenvalue of the all-(-x) state
    const SectorBasis basis = flip_sector_basis(n, profile.sector_parity);
    const Matrix sx = sector_total_sx(basis);
    const int dim = int(basis.reps.size());

    for (int s = 0; s < n_samples; ++s) {
        const double t = schedule.duration * double(s) / double(n_samples - 1);
        GapSample sample;
        sample.t = t;
        sample.b_field = schedule.field(t);
        SymEig eig = sym_eigen(sector_hamiltonian(j, sample.b_field, basis));
        const int k = std::min(k_levels, dim);
        sample.sector_eigenvalues.assign(eig.values.begin(), eig.values.begin() + k);
        // lowest excited level with a nonzero sum-sigma_x matrix element to
        // the sector ground state
        std::vector<double> ground(dim), sxg;
        for (int i = 0; i < dim; ++i) ground[i] = eig.vectors(i, 0);
        sxg = matvec(sx, ground);
        sample.gap = 0.0;
        bool coupled_found = false;
        for (int lev = 1; lev < dim; ++lev) {
            double overlap = 0.0;
            for (int i = 0; i < dim; ++i) overlap += eig.vectors(i, lev) * sxg[i];
            if (std::abs(overlap) > 1e-8) {
                sample.gap = eig.values[lev] - eig.values[0];
                coupled_found = true;
                break;
            }
        }
        if (!coupled_found && dim == 1) {
            // one-dimensional sector (N = 1): report the bare excitation
            // energy of the full Hamiltonian instead
            SymEig full = sym_eigen(dense_hamiltonian(j, sample.b_field));
            sample.gap = full.values[1] - full.values[0];
        }
        profile.samples.push_back(std::move(sample));
    }
    return profile;
}

}  // namespace ionmag
