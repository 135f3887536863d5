#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ionmag/config.hpp"
#include "ionmag/evolve.hpp"

namespace ionmag {

struct TrajectoryRow {
    double t_us = 0.0;
    double b_khz = 0.0;
    double ground_population = 0.0;
    double mean_sx = 0.0;
    std::vector<double> top_populations;  // y-basis, indices fixed per run
};

struct ReversalRecord {
    double return_probability = 0.0;
    SxDistribution sx_initial, sx_forward, sx_returned;
};

// Everything one experiment produced, plus provenance. All files written
// under out_dir embed the resolved-config hash, so identical configs give
// byte-identical trees and stage outputs can be reused as caches.
struct RunRecord {
    ExperimentConfig config;
    std::string config_hash;
    std::string out_dir;

    IonCrystal crystal;
    ModeSpectrum spectrum;
    CouplingMatrix couplings;
    InteractionDiagram diagram;
    GroundManifold manifold;
    std::vector<uint32_t> top_indices;
    std::vector<TrajectoryRow> trajectory;
    SpinState final_state;
    PopulationHistogram histogram;
    SxDistribution sx;
    double ground_fraction = 0.0;
    double mean_sx = 0.0;
    std::optional<GapProfile> gaps;
    std::optional<ReversalRecord> reversal;
    std::vector<std::string> stage_log;  // "computed" / "cached" per stage
};

// Runs crystal -> modes -> couplings -> ground [-> gaps] -> evolve ->
// analyze, resuming any stage whose cached output in out_dir carries a
// matching stage hash. with_reversal additionally runs the mirrored
// ramp-back protocol.
RunRecord run_pipeline(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool with_reversal = false);

// Figure-shaped CSV exports (time evolution, histogram, S_x bars, mode
// comb, gap table when present).
void emit_plot_data(const RunRecord& record);

}  // namespace ionmag
