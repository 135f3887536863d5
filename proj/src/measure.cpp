#include "ionmag/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "ionmag/errors.hpp"

namespace ionmag {

PauliBasis parse_basis(const std::string& name) {
    if (name == "x") return PauliBasis::x;
    if (name == "y") return PauliBasis::y;
    if (name == "z") return PauliBasis::z;
    throw ValidationError("analysis.basis", "unknown basis '" + name + "' (expected x, y or z)");
}

std::string basis_name(PauliBasis b) {
    switch (b) {
        case PauliBasis::x: return "x";
        case PauliBasis::y: return "y";
        default: return "z";
    }
}

PopulationHistogram basis_populations(const SpinState& state, PauliBasis basis) {
    const c2x2* rot = nullptr;
    switch (basis) {
        case PauliBasis::x: rot = &basis_rotation_x(); break;
        case PauliBasis::y: rot = &basis_rotation_y(); break;
        case PauliBasis::z: rot = &basis_rotation_z(); break;
    }
    SpinState rotated = state;
    for (int i = 0; i < rotated.n_spins; ++i) apply_single_qubit(rotated, i, *rot);
    PopulationHistogram hist;
    hist.n_spins = state.n_spins;
    hist.basis = basis;
    hist.probs.resize(rotated.dim());
    for (size_t idx = 0; idx < rotated.dim(); ++idx)
        hist.probs[idx] = std::max(0.0, std::norm(rotated.amplitudes[idx]));
    return hist;
}

std::string config_label(uint32_t config, int n_spins) {
    std::string s;
    for (int i = 0; i < n_spins; ++i)
        s += ((config >> (n_spins - 1 - i)) & 1u) ? "↑" : "↓";
    return s;
}

double SxDistribution::mean() const {
    double m = 0.0;
    for (int k = 0; k <= n_spins; ++k) m += value(k) * probs[k];
    return m;
}

SxDistribution sx_distribution(const SpinState& state) {
    PopulationHistogram hx = basis_populations(state, PauliBasis::x);
    SxDistribution d;
    d.n_spins = state.n_spins;
    d.probs.assign(state.n_spins + 1, 0.0);
    for (size_t idx = 0; idx < hx.probs.size(); ++idx)
        d.probs[std::popcount(idx)] += hx.probs[idx];
    return d;
}

double ground_state_fraction(const PopulationHistogram& hist, const GroundManifold& manifold) {
    if (hist.basis != PauliBasis::y)
        throw ValidationError("analysis.basis",
                              "ground_state_fraction requires a y-basis histogram");
    double p = 0.0;
    for (uint32_t cfg : manifold.configs) {
        if (cfg >= hist.probs.size())
            throw DimensionMismatch("manifold config exceeds histogram size");
        p += hist.probs[cfg];
    }
    return p;
}

std::vector<double> convolve_prep_error(const std::vector<double>& probs, int n_spins,
                                        double prep_error) {
    std::vector<double> p = probs;
    if (prep_error == 0.0) return p;
    const double keep = 1.0 - prep_error;
    for (int i = 0; i < n_spins; ++i) {
        const size_t mask = size_t(1) << (n_spins - 1 - i);
        for (size_t idx = 0; idx < p.size(); ++idx) {
            if (idx & mask) continue;
            const double a = p[idx], b = p[idx | mask];
            p[idx] = keep * a + prep_error * b;
            p[idx | mask] = keep * b + prep_error * a;
        }
    }
    return p;
}

std::vector<uint64_t> sample_shots(const PopulationHistogram& hist, uint64_t n_shots,
                                   double prep_error, uint64_t seed) {
    if (!(prep_error >= 0.0 && prep_error <= 1.0))
        throw ValidationError("analysis.prep_error", "must be in [0, 1]");
    std::vector<double> p = convolve_prep_error(hist.probs, hist.n_spins, prep_error);
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    const double total = acc;
    std::vector<uint64_t> counts(p.size(), 0);
    std::mt19937_64 eng(seed);
    for (uint64_t s = 0; s < n_shots; ++s) {
        // top 53 bits -> uniform in [0, 1); inverse CDF by binary search
        const double u = double(eng() >> 11) * 0x1.0p-53 * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        size_t idx = size_t(it - cdf.begin());
        if (idx >= counts.size()) idx = counts.size() - 1;
        ++counts[idx];
    }
    return counts;
}

}  // namespace ionmag
