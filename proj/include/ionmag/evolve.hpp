#pragma once

#include <vector>

#include "ionmag/coupling.hpp"
#include "ionmag/ising.hpp"
#include "ionmag/schedule.hpp"
#include "ionmag/state.hpp"

namespace ionmag {

// Convergence contract for the propagator, not a method choice: the result
// must satisfy (a) norm drift < 1e-9 and (b) halving max_step changes every
// sampled computational-basis population by less than tol.
struct StepControl {
    double max_step = 1e-7;  // s
    double tol = 1e-6;
    double min_step = 1e-11;  // floor for the halving search
};

struct TrajectoryPoint {
    double t = 0.0;
    SpinState state;
};

// Integrates i dpsi/dt = H(t) psi with H(t) = sum_{i<j} J_ij sy_i sy_j +
// B(t) sum_i sx_i. The propagator is a 4th-order (Yoshida) composition of
// split steps, each factor diagonal in the y- or x-product basis and applied
// exactly (the B factor uses the closed-form integral of the ramp), so every
// step is unitary by construction. Step halving enforces the tolerance
// contract; throws StepNotConverged at the min_step floor.
std::vector<TrajectoryPoint> evolve(const SpinState& state, const CouplingMatrix& j,
                                    const RampSchedule& schedule,
                                    std::vector<double> sample_times, StepControl ctl = {});

struct ReversalResult {
    SpinState forward_final;
    SpinState returned;
    double return_probability = 0.0;  // population of the S_x = -N/2 eigenspace
};

// Forward ramp followed by its mirror image, starting from the all-(-x)
// product state.
ReversalResult time_reversal_protocol(const CouplingMatrix& j, const RampSchedule& schedule,
                                      StepControl ctl = {});

// Total population of the manifold configurations in the sigma_y product
// basis.
double ground_population(const SpinState& state, const GroundManifold& manifold);

// Overlap squared with the all-(-x) product state.
double minus_x_population(const SpinState& state);

}  // namespace ionmag
