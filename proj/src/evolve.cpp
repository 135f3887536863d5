#include "ionmag/evolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ionmag/errors.hpp"

namespace ionmag {

namespace {

void apply_all_qubits(SpinState& s, const c2x2& u) {
    for (int i = 0; i < s.n_spins; ++i) apply_single_qubit(s, i, u);
}

// One 4th-order step over [t0, t0 + dt]. Factor chain (right to left in
// operator order, i.e. application order here):
//   A(c1) X(I1) A(c2) X(I2) A(c2) X(I3) A(c1)
// where A(c) = exp(-i c H_J) applied in the y basis, X(I) = exp(-i I sum sx)
// in the x basis, c1 = w1 dt / 2, c2 = (w1 + w0) dt / 2, and I_k is the
// exact field integral over the k-th (possibly backward) subinterval.
struct Stepper {
    const RampSchedule* schedule;
    std::vector<double> energy_y;  // classical energies indexed by y config
    std::vector<double> m_x;       // sum of sigma_x eigenvalues by x config
    double w1, w0;

    Stepper(const CouplingMatrix& j, const RampSchedule& sched, int n) : schedule(&sched) {
        const size_t dim = size_t(1) << n;
        energy_y.resize(dim);
        for (size_t c = 0; c < dim; ++c) energy_y[c] = config_energy(j, uint32_t(c));
        m_x.resize(dim);
        for (size_t c = 0; c < dim; ++c) m_x[c] = 2.0 * std::popcount(c) - double(n);
        w1 = 1.0 / (2.0 - std::cbrt(2.0));
        w0 = 1.0 - 2.0 * w1;
    }

    void phase(SpinState& s, const std::vector<double>& diag, double theta) const {
        if (theta == 0.0) return;
        for (size_t idx = 0; idx < s.dim(); ++idx) {
            const double ph = -theta * diag[idx];
            s.amplitudes[idx] *= cplx(std::cos(ph), std::sin(ph));
        }
    }

    void step(SpinState& s, double t0, double dt) const {
        const double tau1 = t0 + w1 * dt;
        const double tau2 = tau1 + w0 * dt;
        const double t1 = t0 + dt;
        const double c1 = 0.5 * w1 * dt;
        const double c2 = 0.5 * (w1 + w0) * dt;
        const c2x2& ry = basis_rotation_y();
        const c2x2 ryd = dagger(ry);
        const c2x2& rx = basis_rotation_x();
        const c2x2 rxd = dagger(rx);

        apply_all_qubits(s, ry);
        phase(s, energy_y, c1);
        apply_all_qubits(s, ryd);
        apply_all_qubits(s, rx);
        phase(s, m_x, schedule->field_integral(t0, tau1));
        apply_all_qubits(s, rxd);
        apply_all_qubits(s, ry);
        phase(s, energy_y, c2);
        apply_all_qubits(s, ryd);
        apply_all_qubits(s, rx);
        phase(s, m_x, schedule->field_integral(tau1, tau2));
        apply_all_qubits(s, rxd);
        apply_all_qubits(s, ry);
        phase(s, energy_y, c2);
        apply_all_qubits(s, ryd);
        apply_all_qubits(s, rx);
        phase(s, m_x, schedule->field_integral(tau2, t1));
        apply_all_qubits(s, rxd);
        apply_all_qubits(s, ry);
        phase(s, energy_y, c1);
        apply_all_qubits(s, ryd);
    }
};

std::vector<SpinState> propagate(const SpinState& initial, const Stepper& stepper,
                                 const std::vector<double>& samples, double h) {
    std::vector<SpinState> out;
    out.reserve(samples.size());
    SpinState s = initial;
    double t = 0.0;
    for (double target : samples) {
        const double span = target - t;
        if (span > 0.0) {
            const int nsteps = std::max(1, int(std::ceil(span / h - 1e-12)));
            const double dt = span / nsteps;
            for (int k = 0; k < nsteps; ++k) stepper.step(s, t + k * dt, dt);
            t = target;
        }
        out.push_back(s);
    }
    return out;
}

double max_population_difference(const std::vector<SpinState>& a, const std::vector<SpinState>& b) {
    double worst = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        for (size_t idx = 0; idx < a[k].dim(); ++idx)
            worst = std::max(worst,
                             std::abs(std::norm(a[k].amplitudes[idx]) -
                                      std::norm(b[k].amplitudes[idx])));
    return worst;
}

}  // namespace

std::vector<TrajectoryPoint> evolve(const SpinState& state, const CouplingMatrix& j,
                                    const RampSchedule& schedule,
                                    std::vector<double> sample_times, StepControl ctl) {
    check_spin_count(state.n_spins);
    if (j.n_ions != state.n_spins)
        throw DimensionMismatch("coupling matrix is for " + std::to_string(j.n_ions) +
                                " ions, state has " + std::to_string(state.n_spins));
    schedule.validate();
    if (std::abs(state.norm() - 1.0) > 1e-9)
        throw ValidationError("state", "initial state is not normalized");

    for (double t : sample_times)
        if (t < -1e-15 || t > schedule.duration * (1.0 + 1e-12))
            throw ValidationError("samples", "sample time outside [0, duration]");
    sample_times.push_back(0.0);
    sample_times.push_back(schedule.duration);
    std::sort(sample_times.begin(), sample_times.end());
    sample_times.erase(std::unique(sample_times.begin(), sample_times.end()), sample_times.end());

    const Stepper stepper(j, schedule, state.n_spins);
    double h = std::min(ctl.max_step, schedule.duration);
    std::vector<SpinState> coarse = propagate(state, stepper, sample_times, h);
    for (;;) {
        if (h / 2.0 < ctl.min_step)
            throw StepNotConverged("step halving did not reach tolerance " +
                                   std::to_string(ctl.tol) + " before min_step " +
                                   std::to_string(ctl.min_step));
        std::vector<SpinState> fine = propagate(state, stepper, sample_times, h / 2.0);
        const double diff = max_population_difference(coarse, fine);
        if (diff < ctl.tol) {
            coarse = std::move(fine);  // report the finer solution
            break;
        }
        coarse = std::move(fine);
        h /= 2.0;
    }

    std::vector<TrajectoryPoint> traj;
    traj.reserve(sample_times.size());
    for (size_t k = 0; k < sample_times.size(); ++k)
        traj.push_back({sample_times[k], std::move(coarse[k])});
    return traj;
}

ReversalResult time_reversal_protocol(const CouplingMatrix& j, const RampSchedule& schedule,
                                      StepControl ctl) {
    const SpinState init = initial_state(j.n_ions);
    auto fwd = evolve(init, j, schedule, {}, ctl);
    ReversalResult res;
    res.forward_final = fwd.back().state;
    auto back = evolve(res.forward_final, j, schedule.mirrored(), {}, ctl);
    res.returned = back.back().state;
    res.return_probability = minus_x_population(res.returned);
    return res;
}

double ground_population(const SpinState& state, const GroundManifold& manifold) {
    SpinState y = state;
    for (int i = 0; i < y.n_spins; ++i) apply_single_qubit(y, i, basis_rotation_y());
    double p = 0.0;
    for (uint32_t cfg : manifold.configs) {
        if (cfg >= y.dim())
            throw DimensionMismatch("manifold config exceeds state dimension");
        p += std::norm(y.amplitudes[cfg]);
    }
    return p;
}

double minus_x_population(const SpinState& state) {
    // <all -x| = sum_idx (-1)^popcount(idx) / sqrt(dim)
    cplx overlap = 0.0;
    for (size_t idx = 0; idx < state.dim(); ++idx) {
        const double sign = (std::popcount(idx) & 1) ? -1.0 : 1.0;
        overlap += sign * state.amplitudes[idx];
    }
    return std::norm(overlap) / double(state.dim());
}

}  // namespace ionmag
