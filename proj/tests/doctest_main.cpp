#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "ionmag/crystal.hpp"
#include "ionmag/ising.hpp"

namespace oracle {

std::vector<double> fd_gradient(const std::vector<double>& xy, const ionmag::TrapParams& trap,
                                double step) {
    std::vector<double> g(xy.size());
    std::vector<double> probe = xy;
    for (size_t k = 0; k < xy.size(); ++k) {
        probe[k] = xy[k] + step;
        const double ep = ionmag::dimensionless_potential(probe, trap).energy;
        probe[k] = xy[k] - step;
        const double em = ionmag::dimensionless_potential(probe, trap).energy;
        probe[k] = xy[k];
        g[k] = (ep - em) / (2.0 * step);
    }
    return g;
}

ionmag::SpinState dense_slice_propagate(const ionmag::SpinState& initial,
                                        const ionmag::CouplingMatrix& j,
                                        const ionmag::RampSchedule& schedule, int n_slices) {
    using ionmag::cplx;
    const int dim = int(initial.dim());
    ionmag::SpinState psi = initial;
    const double dt = schedule.duration / n_slices;
    for (int s = 0; s < n_slices; ++s) {
        const double tmid = (s + 0.5) * dt;
        Matrix h = ionmag::dense_hamiltonian(j, schedule.field(tmid));
        ionmag::SymEig eig = ionmag::sym_eigen(h);
        // psi <- V exp(-i D dt) V^T psi
        std::vector<cplx> in_eigbasis(dim, cplx(0.0));
        for (int k = 0; k < dim; ++k) {
            cplx acc = 0.0;
            for (int i = 0; i < dim; ++i) acc += eig.vectors(i, k) * psi.amplitudes[i];
            const double ph = -eig.values[k] * dt;
            in_eigbasis[k] = acc * cplx(std::cos(ph), std::sin(ph));
        }
        for (int i = 0; i < dim; ++i) {
            cplx acc = 0.0;
            for (int k = 0; k < dim; ++k) acc += eig.vectors(i, k) * in_eigbasis[k];
            psi.amplitudes[i] = acc;
        }
    }
    return psi;
}

ionmag::SpinState random_state(int n_spins, uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ionmag::SpinState s;
    s.n_spins = n_spins;
    s.amplitudes.resize(size_t(1) << n_spins);
    for (auto& a : s.amplitudes) a = ionmag::cplx(gauss(eng), gauss(eng));
    const double nrm = s.norm();
    for (auto& a : s.amplitudes) a /= nrm;
    return s;
}

ionmag::CouplingMatrix random_couplings(int n, double scale, uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> uni(-scale, scale);
    ionmag::CouplingMatrix m = ionmag::CouplingMatrix::zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            const double v = uni(eng);
            m.j(i, k) = v;
            m.j(k, i) = v;
        }
    return m;
}

}  // namespace oracle
