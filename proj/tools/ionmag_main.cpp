// ionmag command-line front end: one subcommand per pipeline stage plus the
// full orchestrated run. Exit codes: 0 ok, 2 validation error, 3 numerical
// failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ionmag/config.hpp"
#include "ionmag/pipeline.hpp"
#include "ionmag/presets.hpp"

using namespace ionmag;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "json";
    long long seed_override = -1;
};

ExperimentConfig load_config(const GlobalOpts& g) {
    json raw = g.config_path.empty() ? json::object() : read_json_file(g.config_path);
    if (g.seed_override >= 0) raw["seed"] = uint64_t(g.seed_override);
    return parse_config(raw);
}

void print_summary(const GlobalOpts& g, const json& j) {
    if (g.format == "csv") {
        for (auto it = j.begin(); it != j.end(); ++it)
            std::cout << it.key() << "," << it.value().dump() << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ionmag: planar ion-crystal quantum magnet simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--config", g.config_path, "experiment config (JSON)");
    app.add_option("--out-dir", g.out_dir, "output directory");
    app.add_option("--seed", g.seed_override, "override the config seed");
    app.add_option("--format", g.format, "stdout summary format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_crystal = app.add_subcommand("crystal", "minimize the ion crystal geometry");
    auto* cmd_modes = app.add_subcommand("modes", "transverse normal modes of the crystal");
    auto* cmd_coupl = app.add_subcommand("couplings", "spin-spin coupling matrix and diagram");
    auto* cmd_ground = app.add_subcommand("ground", "classical ground manifold");
    auto* cmd_gaps = app.add_subcommand("gaps", "spectral gap profile along the ramp");
    auto* cmd_evolve = app.add_subcommand("evolve", "adiabatic ramp evolution");
    auto* cmd_reverse = app.add_subcommand("reverse", "forward ramp plus mirrored ramp-back");
    auto* cmd_analyze = app.add_subcommand("analyze", "histograms and observables");
    auto* cmd_run = app.add_subcommand("run", "full pipeline");
    auto* cmd_presets = app.add_subcommand("presets", "list built-in presets");

    std::string analyze_state, analyze_manifold, analyze_basis = "y";
    long long analyze_shots = 0, analyze_seed = -1;
    double analyze_prep = 0.0;
    cmd_analyze->add_option("--state", analyze_state, "state JSON (default: out-dir artifact)");
    cmd_analyze->add_option("--manifold", analyze_manifold,
                            "manifold JSON (default: out-dir artifact)");
    cmd_analyze->add_option("--basis", analyze_basis, "x|y|z");
    cmd_analyze->add_option("--shots", analyze_shots, "finite-shot sample count");
    cmd_analyze->add_option("--prep-error", analyze_prep, "per-spin flip probability");
    cmd_analyze->add_option("--seed", analyze_seed, "sampling seed");

    int gap_samples = 0, gap_levels = 0;
    cmd_gaps->add_option("--samples", gap_samples, "number of ramp samples (default from config)");
    cmd_gaps->add_option("--levels", gap_levels, "sector eigenvalues to keep");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_presets->parsed()) {
            json out = json::array();
            for (const auto& p : preset_catalog())
                out.push_back(json{{"name", p.name},
                                   {"description", p.description},
                                   {"n_ions", p.n_ions},
                                   {"has_couplings", p.has_couplings}});
            print_summary(g, json{{"presets", out}});
            return 0;
        }

        // analyze can run directly on serialized artifacts
        if (cmd_analyze->parsed() && !analyze_state.empty()) {
            std::filesystem::create_directories(g.out_dir);
            SpinState state = state_from_json(read_json_file(analyze_state));
            GroundManifold manifold;
            if (!analyze_manifold.empty())
                manifold = manifold_from_json(read_json_file(analyze_manifold));
            PopulationHistogram hist = basis_populations(state, parse_basis(analyze_basis));
            SxDistribution sx = sx_distribution(state);
            write_text_file(g.out_dir + "/histogram.csv", csv_histogram(hist));
            write_text_file(g.out_dir + "/sx.csv", csv_sx({sx}, {"state"}));
            json summary{{"mean_sx", sx.mean()}};
            if (!analyze_manifold.empty()) {
                PopulationHistogram hy = basis_populations(state, PauliBasis::y);
                summary["ground_fraction"] = ground_state_fraction(hy, manifold);
            }
            if (analyze_shots > 0) {
                auto counts = sample_shots(hist, uint64_t(analyze_shots), analyze_prep,
                                           analyze_seed >= 0 ? uint64_t(analyze_seed) : 0);
                std::string csv = "index,label,count\n";
                for (size_t i = 0; i < counts.size(); ++i)
                    csv += std::to_string(i) + "," + config_label(uint32_t(i), hist.n_spins) +
                           "," + std::to_string(counts[i]) + "\n";
                write_text_file(g.out_dir + "/shots.csv", csv);
            }
            write_json_file(g.out_dir + "/summary.json", summary);
            print_summary(g, summary);
            return 0;
        }

        ExperimentConfig cfg = load_config(g);

        if (cmd_run->parsed() || cmd_crystal->parsed() || cmd_modes->parsed() ||
            cmd_coupl->parsed() || cmd_ground->parsed() || cmd_evolve->parsed() ||
            cmd_analyze->parsed() || cmd_gaps->parsed() || cmd_reverse->parsed()) {
            if (cmd_gaps->parsed()) {
                if (gap_samples > 0) cfg.analysis.gap_samples = gap_samples;
                if (cfg.analysis.gap_samples <= 0) cfg.analysis.gap_samples = 33;
                if (gap_levels > 0) cfg.analysis.gap_levels = gap_levels;
                cfg.resolved["analysis"]["gap_samples"] = cfg.analysis.gap_samples;
                cfg.resolved["analysis"]["gap_levels"] = cfg.analysis.gap_levels;
            }
            if (cmd_analyze->parsed()) {
                cfg.analysis.basis = parse_basis(analyze_basis);
                cfg.analysis.shots = uint64_t(std::max(0ll, analyze_shots));
                cfg.analysis.prep_error = analyze_prep;
                if (analyze_seed >= 0) cfg.analysis.seed = uint64_t(analyze_seed);
                cfg.resolved["analysis"]["basis"] = analyze_basis;
                cfg.resolved["analysis"]["shots"] = cfg.analysis.shots;
                cfg.resolved["analysis"]["prep_error"] = cfg.analysis.prep_error;
                cfg.resolved["analysis"]["seed"] = cfg.analysis.seed;
            }

            RunRecord rec = run_pipeline(cfg, g.out_dir, cmd_reverse->parsed());

            json summary{{"config_hash", rec.config_hash}, {"out_dir", rec.out_dir}};
            if (cmd_crystal->parsed()) {
                summary["energy"] = rec.crystal.potential_energy;
                summary["gradient_norm"] = rec.crystal.gradient_norm;
            } else if (cmd_modes->parsed()) {
                summary["com_frequency_mhz"] = mhz_from_rad(rec.spectrum.frequencies.front());
                summary["n_modes"] = rec.spectrum.n_ions;
            } else if (cmd_coupl->parsed()) {
                summary["edges"] = rec.diagram.edges.size();
                summary["dropped_edges"] = rec.diagram.n_dropped;
            } else if (cmd_ground->parsed()) {
                summary["degeneracy"] = rec.manifold.degeneracy;
                summary["energy_khz"] = khz_from_rad(rec.manifold.energy);
            } else if (cmd_gaps->parsed()) {
                double min_gap = rec.gaps->samples.front().gap;
                for (const auto& s : rec.gaps->samples) min_gap = std::min(min_gap, s.gap);
                summary["min_gap_khz"] = khz_from_rad(min_gap);
            } else if (cmd_reverse->parsed()) {
                summary["return_probability"] = rec.reversal->return_probability;
            } else {
                summary["ground_fraction"] = rec.ground_fraction;
                summary["mean_sx"] = rec.mean_sx;
                summary["manifold_degeneracy"] = rec.manifold.degeneracy;
            }
            print_summary(g, summary);
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
