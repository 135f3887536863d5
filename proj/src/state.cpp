#include "ionmag/state.hpp"

#include <bit>
#include <cmath>

namespace ionmag {

double SpinState::norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

void check_spin_count(int n, int cap) {
    if (n < 1) throw ValidationError("n_ions", "must be >= 1");
    if (n > cap) throw TooManySpins(n, cap);
}

SpinState initial_state(int n_spins) {
    check_spin_count(n_spins);
    SpinState s;
    s.n_spins = n_spins;
    const size_t dim = size_t(1) << n_spins;
    const double a = 1.0 / std::sqrt(double(dim));
    s.amplitudes.resize(dim);
    for (size_t idx = 0; idx < dim; ++idx)
        s.amplitudes[idx] = (std::popcount(idx) & 1) ? cplx(-a, 0.0) : cplx(a, 0.0);
    return s;
}

void apply_single_qubit(SpinState& state, int ion, const c2x2& u) {
    const size_t dim = state.dim();
    const size_t mask = size_t(1) << (state.n_spins - 1 - ion);
    for (size_t idx = 0; idx < dim; ++idx) {
        if (idx & mask) continue;
        cplx& a0 = state.amplitudes[idx];
        cplx& a1 = state.amplitudes[idx | mask];
        const cplx b0 = u[0] * a0 + u[1] * a1;
        const cplx b1 = u[2] * a0 + u[3] * a1;
        a0 = b0;
        a1 = b1;
    }
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

const c2x2& basis_rotation_x() {
    // |-x> = (1,-1)/sqrt2, |+x> = (1,1)/sqrt2
    static const c2x2 r = {cplx(kInvSqrt2), cplx(-kInvSqrt2), cplx(kInvSqrt2), cplx(kInvSqrt2)};
    return r;
}

const c2x2& basis_rotation_y() {
    // |-y> = (1,-i)/sqrt2, |+y> = (1,i)/sqrt2; rows are conjugated bras
    static const c2x2 r = {cplx(kInvSqrt2, 0.0), cplx(0.0, kInvSqrt2), cplx(kInvSqrt2, 0.0),
                           cplx(0.0, -kInvSqrt2)};
    return r;
}

const c2x2& basis_rotation_z() {
    // e0 is +z, so the +1 eigenstate must land on bit 1
    static const c2x2 r = {cplx(0.0), cplx(1.0), cplx(1.0), cplx(0.0)};
    return r;
}

c2x2 dagger(const c2x2& u) {
    return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

}  // namespace ionmag
