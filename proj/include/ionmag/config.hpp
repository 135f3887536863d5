#pragma once

#include <optional>
#include <string>

#include "ionmag/coupling.hpp"
#include "ionmag/measure.hpp"
#include "ionmag/schedule.hpp"
#include "ionmag/serialize.hpp"
#include "ionmag/trap.hpp"

namespace ionmag {

struct TrapBlock {
    TrapParams params;
    int n_ions = 0;
    int restarts = 32;
    uint64_t seed = 0;
};

struct ScheduleBlock {
    double b0 = rad_from_khz(29.0);
    double duration = 300e-6;
    double b_end_fraction = 0.05;
    int samples = 41;
    double tol = 1e-6;
    double max_step = 1e-7;

    RampSchedule ramp(RampDirection dir = RampDirection::forward) const {
        return RampSchedule::from_terminal_fraction(b0, duration, b_end_fraction, dir);
    }
};

struct AnalysisBlock {
    PauliBasis basis = PauliBasis::y;
    uint64_t shots = 0;
    double prep_error = 0.0;
    uint64_t seed = 0;
    double edge_threshold = 0.2;
    int gap_samples = 0;  // 0 = skip the gap stage
    int gap_levels = 4;
};

// A validated experiment definition. Unknown keys anywhere are rejected
// with their full key path. When a preset is named, the blocks it defines
// (trap, couplings) override same-named user blocks; schedule and analysis
// stay user-tunable.
struct ExperimentConfig {
    std::string preset;  // empty when fully explicit
    uint64_t seed = 0;
    TrapBlock trap;
    std::optional<RamanDrive> drive;             // Eq.-style synthesis route
    std::optional<CouplingMatrix> couplings;     // direct-J route
    ScheduleBlock schedule;
    AnalysisBlock analysis;
    json resolved;  // canonical resolved form; hash_of(resolved) keys caching

    std::string config_hash() const { return hash_of(resolved); }
};

ExperimentConfig parse_config(const json& raw);
ExperimentConfig config_from_file(const std::string& path);

}  // namespace ionmag
