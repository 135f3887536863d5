#include "ionmag/pipeline.hpp"

#include <algorithm>
#include <filesystem>

namespace ionmag {

namespace {

namespace fs = std::filesystem;

json stage_inputs_trap(const ExperimentConfig& cfg) { return cfg.resolved.at("trap"); }

json stage_inputs_couplings(const ExperimentConfig& cfg) {
    json j;
    j["trap"] = cfg.resolved.at("trap");
    if (cfg.resolved.contains("drive")) j["drive"] = cfg.resolved.at("drive");
    if (cfg.resolved.contains("couplings")) j["couplings"] = cfg.resolved.at("couplings");
    j["edge_threshold"] = cfg.analysis.edge_threshold;
    return j;
}

json stage_inputs_evolve(const ExperimentConfig& cfg) {
    json j = stage_inputs_couplings(cfg);
    j["schedule"] = cfg.resolved.at("schedule");
    return j;
}

// A cached stage file is reusable when its embedded stage_hash matches the
// hash of the stage's resolved inputs.
std::optional<json> load_cached(const std::string& path, const std::string& stage_hash) {
    if (!fs::exists(path)) return std::nullopt;
    try {
        json j = read_json_file(path);
        if (j.value("stage_hash", "") == stage_hash) return j;
    } catch (...) {
    }
    return std::nullopt;
}

std::vector<uint32_t> pick_top_indices(const PopulationHistogram& h, size_t count) {
    std::vector<uint32_t> idx(h.probs.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = uint32_t(i);
    std::stable_sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
        if (h.probs[a] != h.probs[b]) return h.probs[a] > h.probs[b];
        return a < b;
    });
    idx.resize(std::min(count, idx.size()));
    return idx;
}

std::string csv_trajectory(const RunRecord& rec) {
    std::string head = "t_us,b_khz,ground_population,mean_sx";
    for (uint32_t i : rec.top_indices) head += ",pop_y_" + std::to_string(i);
    head += "\n";
    std::string body;
    for (const auto& row : rec.trajectory) {
        body += format_double(row.t_us) + "," + format_double(row.b_khz) + "," +
                format_double(row.ground_population) + "," + format_double(row.mean_sx);
        for (double p : row.top_populations) body += "," + format_double(p);
        body += "\n";
    }
    return head + body;
}

}  // namespace

RunRecord run_pipeline(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool with_reversal) {
    RunRecord rec;
    rec.config = cfg;
    rec.config_hash = cfg.config_hash();
    rec.out_dir = out_dir;
    fs::create_directories(out_dir);
    const auto path = [&](const std::string& name) { return out_dir + "/" + name; };

    // -- crystal ------------------------------------------------------------
    {
        const std::string h = hash_of(stage_inputs_trap(cfg));
        if (auto cached = load_cached(path("crystal.json"), h)) {
            rec.crystal = crystal_from_json(*cached);
            rec.stage_log.push_back("crystal: cached");
        } else {
            rec.crystal = equilibrium_positions(cfg.trap.params, cfg.trap.n_ions,
                                                cfg.trap.restarts, cfg.trap.seed);
            json j = with_provenance(crystal_to_json(rec.crystal, cfg.trap.params),
                                     rec.config_hash);
            j["stage_hash"] = h;
            write_json_file(path("crystal.json"), j);
            write_text_file(path("crystal.csv"), csv_positions(rec.crystal, cfg.trap.params));
            rec.stage_log.push_back("crystal: computed");
        }
    }

    // -- modes ---------------------------------------------------------------
    {
        const std::string h = hash_of(stage_inputs_trap(cfg));
        if (auto cached = load_cached(path("modes.json"), h)) {
            rec.spectrum = spectrum_from_json(*cached);
            rec.stage_log.push_back("modes: cached");
        } else {
            rec.spectrum = transverse_modes(rec.crystal, cfg.trap.params);
            json j = with_provenance(spectrum_to_json(rec.spectrum), rec.config_hash);
            j["stage_hash"] = h;
            write_json_file(path("modes.json"), j);
            write_text_file(path("mode_comb.csv"), csv_mode_comb(rec.spectrum));
            rec.stage_log.push_back("modes: computed");
        }
    }

    // -- couplings -----------------------------------------------------------
    {
        const std::string h = hash_of(stage_inputs_couplings(cfg));
        if (auto cached = load_cached(path("couplings.json"), h)) {
            rec.couplings = coupling_from_json(*cached);
            rec.stage_log.push_back("couplings: cached");
        } else {
            if (cfg.couplings)
                rec.couplings = *cfg.couplings;
            else if (cfg.drive)
                rec.couplings = coupling_matrix(rec.spectrum, *cfg.drive);
            else
                throw ValidationError("couplings",
                                      "config needs a drive block, a couplings block, or a "
                                      "preset with couplings");
            json j = with_provenance(coupling_to_json(rec.couplings), rec.config_hash);
            j["stage_hash"] = h;
            write_json_file(path("couplings.json"), j);
            write_text_file(path("couplings.csv"), csv_coupling(rec.couplings));
            write_json_file(path("diagram.json"),
                            with_provenance(
                                diagram_to_json(classify_graph(rec.couplings,
                                                               cfg.analysis.edge_threshold)),
                                rec.config_hash));
            rec.stage_log.push_back("couplings: computed");
        }
        rec.diagram = classify_graph(rec.couplings, cfg.analysis.edge_threshold);
    }

    // -- classical ground manifold --------------------------------------------
    {
        const std::string h = hash_of(stage_inputs_couplings(cfg));
        if (auto cached = load_cached(path("manifold.json"), h)) {
            rec.manifold = manifold_from_json(*cached);
            rec.stage_log.push_back("ground: cached");
        } else {
            rec.manifold = classical_ground_manifold(rec.couplings);
            json j = with_provenance(manifold_to_json(rec.manifold, rec.couplings.n_ions),
                                     rec.config_hash);
            j["stage_hash"] = h;
            write_json_file(path("manifold.json"), j);
            rec.stage_log.push_back("ground: computed");
        }
    }

    // -- gap profile (optional) ------------------------------------------------
    if (cfg.analysis.gap_samples > 0) {
        rec.gaps = gap_profile(rec.couplings, cfg.schedule.ramp(), cfg.analysis.gap_samples,
                               cfg.analysis.gap_levels);
        write_text_file(path("gaps.csv"), csv_gap_profile(*rec.gaps));
        rec.stage_log.push_back("gaps: computed");
    }

    // -- evolve -----------------------------------------------------------------
    {
        const std::string h = hash_of(stage_inputs_evolve(cfg));
        auto cached = load_cached(path("evolve.json"), h);
        if (cached) {
            rec.final_state = state_from_json(cached->at("final_state"));
            rec.top_indices.clear();
            for (const auto& v : cached->at("top_indices"))
                rec.top_indices.push_back(v.get<uint32_t>());
            rec.trajectory.clear();
            for (const auto& row : cached->at("trajectory")) {
                TrajectoryRow r;
                r.t_us = row.at("t_us").get<double>();
                r.b_khz = row.at("b_khz").get<double>();
                r.ground_population = row.at("ground_population").get<double>();
                r.mean_sx = row.at("mean_sx").get<double>();
                r.top_populations = row.at("top_populations").get<std::vector<double>>();
                rec.trajectory.push_back(std::move(r));
            }
            rec.stage_log.push_back("evolve: cached");
        } else {
            const RampSchedule ramp = cfg.schedule.ramp();
            std::vector<double> times;
            for (int s = 0; s < cfg.schedule.samples; ++s)
                times.push_back(ramp.duration * double(s) / double(cfg.schedule.samples - 1));
            StepControl ctl;
            ctl.max_step = cfg.schedule.max_step;
            ctl.tol = cfg.schedule.tol;
            auto traj = evolve(initial_state(cfg.trap.n_ions), rec.couplings, ramp, times, ctl);
            rec.final_state = traj.back().state;
            rec.top_indices =
                pick_top_indices(basis_populations(rec.final_state, PauliBasis::y), 8);
            for (const auto& pt : traj) {
                TrajectoryRow row;
                row.t_us = pt.t * 1e6;
                row.b_khz = khz_from_rad(ramp.field(pt.t));
                row.ground_population = ground_population(pt.state, rec.manifold);
                row.mean_sx = sx_distribution(pt.state).mean();
                PopulationHistogram hy = basis_populations(pt.state, PauliBasis::y);
                for (uint32_t idx : rec.top_indices) row.top_populations.push_back(hy.probs[idx]);
                rec.trajectory.push_back(std::move(row));
            }
            json j = with_provenance(json::object(), rec.config_hash);
            j["stage_hash"] = h;
            j["final_state"] = state_to_json(rec.final_state);
            j["top_indices"] = rec.top_indices;
            json rows = json::array();
            for (const auto& row : rec.trajectory)
                rows.push_back(json{{"t_us", row.t_us},
                                    {"b_khz", row.b_khz},
                                    {"ground_population", row.ground_population},
                                    {"mean_sx", row.mean_sx},
                                    {"top_populations", row.top_populations}});
            j["trajectory"] = rows;
            write_json_file(path("evolve.json"), j);
            write_json_file(path("final_state.json"),
                            with_provenance(state_to_json(rec.final_state), rec.config_hash));
            write_text_file(path("trajectory.csv"), csv_trajectory(rec));
            rec.stage_log.push_back("evolve: computed");
        }
    }

    // -- reversal (optional) -------------------------------------------------------
    if (with_reversal) {
        StepControl ctl;
        ctl.max_step = cfg.schedule.max_step;
        ctl.tol = cfg.schedule.tol;
        ReversalResult rr = time_reversal_protocol(rec.couplings, cfg.schedule.ramp(), ctl);
        ReversalRecord rev;
        rev.return_probability = rr.return_probability;
        rev.sx_initial = sx_distribution(initial_state(cfg.trap.n_ions));
        rev.sx_forward = sx_distribution(rr.forward_final);
        rev.sx_returned = sx_distribution(rr.returned);
        rec.reversal = rev;
        json j = with_provenance(json{{"return_probability", rev.return_probability}},
                                 rec.config_hash);
        j["sx_initial"] = sx_to_json(rev.sx_initial);
        j["sx_forward"] = sx_to_json(rev.sx_forward);
        j["sx_returned"] = sx_to_json(rev.sx_returned);
        write_json_file(path("reversal.json"), j);
        rec.stage_log.push_back("reverse: computed");
    }

    // -- analyze ----------------------------------------------------------------
    {
        rec.histogram = basis_populations(rec.final_state, cfg.analysis.basis);
        PopulationHistogram hy = cfg.analysis.basis == PauliBasis::y
                                     ? rec.histogram
                                     : basis_populations(rec.final_state, PauliBasis::y);
        rec.ground_fraction = ground_state_fraction(hy, rec.manifold);
        rec.sx = sx_distribution(rec.final_state);
        rec.mean_sx = rec.sx.mean();
        write_text_file(path("histogram.csv"), csv_histogram(rec.histogram));
        json summary = with_provenance(json{{"ground_fraction", rec.ground_fraction},
                                            {"mean_sx", rec.mean_sx},
                                            {"manifold_degeneracy", rec.manifold.degeneracy}},
                                       rec.config_hash);
        if (rec.reversal)
            summary["return_probability"] = rec.reversal->return_probability;
        if (cfg.analysis.shots > 0) {
            auto counts = sample_shots(rec.histogram, cfg.analysis.shots, cfg.analysis.prep_error,
                                       cfg.analysis.seed);
            std::string csv = "index,label,count\n";
            for (size_t i = 0; i < counts.size(); ++i)
                csv += std::to_string(i) + "," + config_label(uint32_t(i), rec.histogram.n_spins) +
                       "," + std::to_string(counts[i]) + "\n";
            write_text_file(path("shots.csv"), csv);
            summary["shots"] = cfg.analysis.shots;
        }
        write_json_file(path("summary.json"), summary);
        rec.stage_log.push_back("analyze: computed");
    }

    // -- record -------------------------------------------------------------------
    // (no freshness log here: record.json must be byte-identical across
    // cached and fresh runs of the same config)
    {
        json j = with_provenance(json::object(), rec.config_hash);
        j["config"] = cfg.resolved;
        write_json_file(path("record.json"), j);
    }
    emit_plot_data(rec);
    return rec;
}

void emit_plot_data(const RunRecord& rec) {
    const auto path = [&](const std::string& name) { return rec.out_dir + "/" + name; };
    // evolution.csv mirrors the time-evolution panels
    std::string ev = "t_us,B_khz,ground_fraction\n";
    for (const auto& row : rec.trajectory)
        ev += format_double(row.t_us) + "," + format_double(row.b_khz) + "," +
              format_double(row.ground_population) + "\n";
    write_text_file(path("evolution.csv"), ev);

    if (rec.reversal) {
        write_text_file(path("sx.csv"),
                        csv_sx({rec.reversal->sx_initial, rec.reversal->sx_forward,
                                rec.reversal->sx_returned},
                               {"initial", "post_forward", "post_return"}));
    } else {
        write_text_file(path("sx.csv"), csv_sx({rec.sx}, {"final"}));
    }
}

}  // namespace ionmag
