#pragma once

#include <cmath>

#include "ionmag/errors.hpp"

namespace ionmag {

enum class RampDirection { forward, reversed };

// Transverse-field ramp B(t) = b0 / (1 + alpha t) for t in [0, duration];
// the reversed direction is the mirror image B(duration - t). The spin-spin
// couplings are held constant over the whole ramp.
struct RampSchedule {
    double b0 = 0.0;       // rad/s
    double alpha = 0.0;    // 1/s
    double duration = 0.0; // s
    RampDirection direction = RampDirection::forward;

    // alpha chosen so B(duration) = terminal_fraction * b0.
    static RampSchedule from_terminal_fraction(double b0, double duration,
                                               double terminal_fraction,
                                               RampDirection dir = RampDirection::forward) {
        if (!(b0 > 0.0)) throw ValidationError("schedule.b0_khz", "must be > 0");
        if (!(duration > 0.0)) throw ValidationError("schedule.duration_us", "must be > 0");
        if (!(terminal_fraction > 0.0 && terminal_fraction < 1.0))
            throw ValidationError("schedule.b_end_fraction", "must be in (0, 1)");
        RampSchedule s;
        s.b0 = b0;
        s.duration = duration;
        s.alpha = (1.0 / terminal_fraction - 1.0) / duration;
        s.direction = dir;
        return s;
    }

    void validate() const {
        if (!(b0 > 0.0)) throw ValidationError("schedule.b0_khz", "must be > 0");
        if (!(alpha > 0.0)) throw ValidationError("schedule.alpha", "must be > 0");
        if (!(duration > 0.0)) throw ValidationError("schedule.duration_us", "must be > 0");
    }

    double field(double t) const {
        const double tau = direction == RampDirection::forward ? t : duration - t;
        return b0 / (1.0 + alpha * tau);
    }

    // Closed form of int_{t0}^{t1} B dt; exact for either direction and for
    // reversed sub-intervals (t1 < t0).
    double field_integral(double t0, double t1) const {
        if (direction == RampDirection::reversed) {
            // substitute tau = duration - t
            return -integral_forward(duration - t0, duration - t1);
        }
        return integral_forward(t0, t1);
    }

    RampSchedule mirrored() const {
        RampSchedule s = *this;
        s.direction = direction == RampDirection::forward ? RampDirection::reversed
                                                          : RampDirection::forward;
        return s;
    }

  private:
    double integral_forward(double t0, double t1) const {
        return (b0 / alpha) * std::log((1.0 + alpha * t1) / (1.0 + alpha * t0));
    }
};

}  // namespace ionmag
