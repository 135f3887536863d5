#include "ionmag/crystal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ionmag/errors.hpp"

namespace ionmag {

namespace {

double pair_distance(std::span<const double> xy, int i, int j) {
    const double dx = xy[2 * i] - xy[2 * j];
    const double dy = xy[2 * i + 1] - xy[2 * j + 1];
    return std::hypot(dx, dy);
}

double grad_norm(const std::vector<double>& g) {
    double s = 0.0;
    for (double v : g) s += v * v;
    return std::sqrt(s);
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

PotentialEval dimensionless_potential(std::span<const double> xy, const TrapParams& trap) {
    const int n = int(xy.size() / 2);
    const double ax = trap.ax(), ay = trap.ay();
    PotentialEval out;
    out.gradient.assign(2 * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = xy[2 * i], y = xy[2 * i + 1];
        if (!std::isfinite(x) || !std::isfinite(y))
            throw NumericalError("dimensionless_potential: non-finite position");
        out.energy += 0.5 * (ax * x * x + ay * y * y);
        out.gradient[2 * i] += ax * x;
        out.gradient[2 * i + 1] += ay * y;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = xy[2 * i] - xy[2 * j];
            const double dy = xy[2 * i + 1] - xy[2 * j + 1];
            const double r = std::hypot(dx, dy);
            if (r < kCoincidenceDist)
                throw CoincidentIons("ions " + std::to_string(i) + " and " + std::to_string(j) +
                                     " coincide (distance " + std::to_string(r) + ")");
            out.energy += 1.0 / r;
            const double r3 = r * r * r;
            out.gradient[2 * i] -= dx / r3;
            out.gradient[2 * i + 1] -= dy / r3;
            out.gradient[2 * j] += dx / r3;
            out.gradient[2 * j + 1] += dy / r3;
        }
    }
    return out;
}

Matrix inplane_hessian(std::span<const double> xy, const TrapParams& trap) {
    const int n = int(xy.size() / 2);
    Matrix h(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        h(2 * i, 2 * i) += trap.ax();
        h(2 * i + 1, 2 * i + 1) += trap.ay();
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = xy[2 * i] - xy[2 * j];
            const double dy = xy[2 * i + 1] - xy[2 * j + 1];
            const double r2 = dx * dx + dy * dy;
            const double r = std::sqrt(r2);
            const double r3 = r * r2, r5 = r3 * r2;
            // d^2(1/r) = 3 w w^T / r^5 - I / r^3 for w = u_i - u_j
            const double hxx = 3.0 * dx * dx / r5 - 1.0 / r3;
            const double hyy = 3.0 * dy * dy / r5 - 1.0 / r3;
            const double hxy = 3.0 * dx * dy / r5;
            h(2 * i, 2 * i) += hxx;
            h(2 * i + 1, 2 * i + 1) += hyy;
            h(2 * i, 2 * i + 1) += hxy;
            h(2 * i + 1, 2 * i) += hxy;
            h(2 * j, 2 * j) += hxx;
            h(2 * j + 1, 2 * j + 1) += hyy;
            h(2 * j, 2 * j + 1) += hxy;
            h(2 * j + 1, 2 * j) += hxy;
            h(2 * i, 2 * j) -= hxx;
            h(2 * i + 1, 2 * j + 1) -= hyy;
            h(2 * i, 2 * j + 1) -= hxy;
            h(2 * i + 1, 2 * j) -= hxy;
            h(2 * j, 2 * i) -= hxx;
            h(2 * j + 1, 2 * i + 1) -= hyy;
            h(2 * j, 2 * i + 1) -= hxy;
            h(2 * j + 1, 2 * i) -= hxy;
        }
    }
    return h;
}

Matrix transverse_stiffness(const IonCrystal& crystal, const TrapParams& trap) {
    const int n = crystal.n_ions;
    Matrix k(n, n);
    for (int i = 0; i < n; ++i) k(i, i) = trap.az();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = pair_distance(crystal.xy, i, j);
            const double w = 1.0 / (d * d * d);
            k(i, j) = w;
            k(j, i) = w;
            k(i, i) -= w;
            k(j, j) -= w;
        }
    }
    return k;
}

namespace {

// Cholesky solve of (H + lambda I) s = -g; returns false if the shifted
// matrix is not positive definite.
bool solve_shifted(const Matrix& h, double lambda, const std::vector<double>& g,
                   std::vector<double>& step) {
    const int n = h.rows();
    Matrix l(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = h(i, j) + (i == j ? lambda : 0.0);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double s = -g[i];
        for (int k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    step.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * step[k];
        step[i] = s / l(i, i);
    }
    return true;
}

struct MinimizeResult {
    std::vector<double> xy;
    double energy = 0.0;
    double gnorm = 0.0;
    bool converged = false;
};

// Levenberg-damped Newton descent on the dimensionless energy.
MinimizeResult minimize_from(std::vector<double> xy, const TrapParams& trap) {
    MinimizeResult res;
    double lambda = 1e-3;
    PotentialEval cur;
    try {
        cur = dimensionless_potential(xy, trap);
    } catch (const CoincidentIons&) {
        res.converged = false;
        return res;
    }
    for (int iter = 0; iter < kMaxMinimizeIters; ++iter) {
        res.gnorm = grad_norm(cur.gradient);
        if (res.gnorm < kGradTol) {
            res.xy = xy;
            res.energy = cur.energy;
            res.converged = true;
            return res;
        }
        Matrix h = inplane_hessian(xy, trap);
        std::vector<double> step;
        bool accepted = false;
        for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
            if (!solve_shifted(h, lambda, cur.gradient, step)) {
                lambda = std::max(lambda * 10.0, 1e-12);
                continue;
            }
            std::vector<double> trial(xy.size());
            for (size_t k = 0; k < xy.size(); ++k) trial[k] = xy[k] + step[k];
            try {
                PotentialEval ev = dimensionless_potential(trial, trap);
                if (ev.energy <= cur.energy) {
                    xy = std::move(trial);
                    cur = std::move(ev);
                    lambda = std::max(lambda / 3.0, 1e-14);
                    accepted = true;
                } else {
                    lambda *= 10.0;
                }
            } catch (const CoincidentIons&) {
                lambda *= 10.0;
            }
        }
        if (!accepted) break;  // stuck; report unconverged
    }
    res.xy = xy;
    res.energy = cur.energy;
    res.gnorm = grad_norm(cur.gradient);
    res.converged = res.gnorm < kGradTol;
    return res;
}

}  // namespace

void canonicalize_crystal(IonCrystal& crystal, const TrapParams& trap) {
    const int n = crystal.n_ions;
    if (n == 0) return;
    if (trap_is_isotropic(trap)) {
        double cx = 0.0, cy = 0.0;
        for (int i = 0; i < n; ++i) {
            cx += crystal.x(i);
            cy += crystal.y(i);
        }
        cx /= n;
        cy /= n;
        int far = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double r = std::hypot(crystal.x(i) - cx, crystal.y(i) - cy);
            if (r > best) {
                best = r;
                far = i;
            }
        }
        if (best > 1e-12) {
            const double theta = std::atan2(crystal.y(far) - cy, crystal.x(far) - cx);
            const double c = std::cos(-theta), s = std::sin(-theta);
            for (int i = 0; i < n; ++i) {
                const double x = crystal.x(i), y = crystal.y(i);
                crystal.xy[2 * i] = c * x - s * y;
                crystal.xy[2 * i + 1] = s * x + c * y;
            }
        }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (crystal.x(a) != crystal.x(b)) return crystal.x(a) < crystal.x(b);
        return crystal.y(a) < crystal.y(b);
    });
    std::vector<double> sorted(2 * n);
    for (int k = 0; k < n; ++k) {
        sorted[2 * k] = crystal.x(order[k]);
        sorted[2 * k + 1] = crystal.y(order[k]);
    }
    crystal.xy = std::move(sorted);
}

IonCrystal refine_crystal(const TrapParams& trap, std::span<const double> start_xy) {
    validate_planar(trap);
    MinimizeResult r = minimize_from(std::vector<double>(start_xy.begin(), start_xy.end()), trap);
    if (!r.converged)
        throw NoConvergence("refine_crystal: gradient norm " + std::to_string(r.gnorm) +
                            " after " + std::to_string(kMaxMinimizeIters) + " iterations");
    IonCrystal c;
    c.n_ions = int(start_xy.size() / 2);
    c.xy = std::move(r.xy);
    c.potential_energy = r.energy;
    c.gradient_norm = r.gnorm;
    canonicalize_crystal(c, trap);
    return c;
}

IonCrystal equilibrium_positions(const TrapParams& trap, int n_ions, int restarts,
                                 uint64_t rng_seed) {
    validate_planar(trap);
    if (n_ions < 1) throw ValidationError("n_ions", "must be >= 1");
    if (restarts < 1) throw ValidationError("restarts", "must be >= 1");

    if (n_ions == 1) {
        IonCrystal c;
        c.n_ions = 1;
        c.xy = {0.0, 0.0};
        c.potential_energy = 0.0;
        c.gradient_norm = 0.0;
        return c;
    }

    const double disc_radius = 2.0 * std::sqrt(double(n_ions));
    MinimizeResult best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 eng(splitmix64(rng_seed ^ splitmix64(uint64_t(r) + 1)));
        auto uniform = [&eng]() { return double(eng() >> 11) * 0x1.0p-53; };
        std::vector<double> xy(2 * n_ions);
        for (int i = 0; i < n_ions; ++i) {
            const double rad = disc_radius * std::sqrt(uniform());
            const double ang = kTwoPi * uniform();
            xy[2 * i] = rad * std::cos(ang);
            xy[2 * i + 1] = rad * std::sin(ang);
        }
        MinimizeResult m = minimize_from(std::move(xy), trap);
        if (!m.converged) continue;
        if (!have_best || m.energy < best.energy) {
            best = std::move(m);
            have_best = true;
        }
    }
    if (!have_best)
        throw NoConvergence("equilibrium_positions: no restart reached gradient tolerance " +
                            std::to_string(kGradTol));
    IonCrystal c;
    c.n_ions = n_ions;
    c.xy = std::move(best.xy);
    c.potential_energy = best.energy;
    c.gradient_norm = best.gnorm;
    canonicalize_crystal(c, trap);
    return c;
}

StabilityReport verify_stability(const IonCrystal& crystal, const TrapParams& trap) {
    StabilityReport rep;
    Matrix h = inplane_hessian(crystal.xy, trap);
    SymEig he = sym_eigen(h);
    rep.min_inplane_eigenvalue = he.values.front();
    Matrix k = transverse_stiffness(crystal, trap);
    SymEig ke = sym_eigen(k);
    rep.min_transverse_eigenvalue = ke.values.front();
    rep.planar_stable = rep.min_transverse_eigenvalue > 0.0;
    return rep;
}

}  // namespace ionmag
