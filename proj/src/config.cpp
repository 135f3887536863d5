#include "ionmag/config.hpp"

#include <set>

#include "ionmag/presets.hpp"

namespace ionmag {

namespace {

void reject_unknown_keys(const json& block, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (auto it = block.begin(); it != block.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError(path + "." + it.key(), "unknown key");
}

double number_at(const json& block, const std::string& path, const std::string& key,
                 double fallback) {
    if (!block.contains(key)) return fallback;
    const auto& v = block.at(key);
    if (!v.is_number()) throw ValidationError(path + "." + key, "expected a number");
    return v.get<double>();
}

TrapBlock parse_trap(const json& block, uint64_t global_seed) {
    reject_unknown_keys(block, "trap",
                        {"omega_x_khz", "omega_y_khz", "omega_z_khz", "mass_amu", "charge_e",
                         "n_ions", "restarts", "seed"});
    TrapBlock t;
    t.params.omega_x = rad_from_khz(number_at(block, "trap", "omega_x_khz", 0.0));
    t.params.omega_y = rad_from_khz(number_at(block, "trap", "omega_y_khz", 0.0));
    t.params.omega_z = rad_from_khz(number_at(block, "trap", "omega_z_khz", 0.0));
    t.params.ion_mass = number_at(block, "trap", "mass_amu", 171.0) * kAmuKg;
    t.params.ion_charge = number_at(block, "trap", "charge_e", 1.0) * kElementaryCharge;
    t.n_ions = int(number_at(block, "trap", "n_ions", 0.0));
    t.restarts = int(number_at(block, "trap", "restarts", 32.0));
    t.seed = uint64_t(number_at(block, "trap", "seed", double(global_seed)));
    if (t.n_ions < 1) throw ValidationError("trap.n_ions", "must be >= 1");
    if (t.restarts < 1) throw ValidationError("trap.restarts", "must be >= 1");
    validate_planar(t.params);
    return t;
}

RamanDrive parse_drive(const json& block, const TrapBlock& trap) {
    reject_unknown_keys(block, "drive",
                        {"rabi_khz", "mu_mhz", "recoil_khz", "delta_k_per_m", "carrier_ghz",
                         "resonance_guard_khz"});
    RamanDrive d;
    if (!block.contains("rabi_khz")) throw ValidationError("drive.rabi_khz", "required");
    const auto& rabi = block.at("rabi_khz");
    if (rabi.is_number()) {
        d.rabi.assign(trap.n_ions, rad_from_khz(rabi.get<double>()));
    } else if (rabi.is_array()) {
        for (const auto& v : rabi) d.rabi.push_back(rad_from_khz(v.get<double>()));
        if (int(d.rabi.size()) != trap.n_ions)
            throw ValidationError("drive.rabi_khz",
                                  "list length must equal trap.n_ions = " +
                                      std::to_string(trap.n_ions));
    } else {
        throw ValidationError("drive.rabi_khz", "expected number or list");
    }
    d.mu = rad_from_mhz(number_at(block, "drive", "mu_mhz", 0.0));
    if (block.contains("recoil_khz")) {
        d.recoil = rad_from_khz(block.at("recoil_khz").get<double>());
    } else if (block.contains("delta_k_per_m")) {
        d.delta_k = block.at("delta_k_per_m").get<double>();
        d.recoil = RamanDrive::recoil_from_delta_k(*d.delta_k, trap.params.ion_mass);
    } else {
        throw ValidationError("drive.recoil_khz", "need recoil_khz or delta_k_per_m");
    }
    d.carrier_hint_hz = number_at(block, "drive", "carrier_ghz", kDefaultCarrierHz / 1e9) * 1e9;
    d.resonance_guard =
        rad_from_khz(number_at(block, "drive", "resonance_guard_khz",
                               khz_from_rad(kDefaultResonanceGuard)));
    validate_drive(d);
    return d;
}

CouplingMatrix parse_couplings(const json& block, int n_ions) {
    reject_unknown_keys(block, "couplings", {"j_khz", "sign_flip"});
    if (!block.contains("j_khz")) throw ValidationError("couplings.j_khz", "required");
    const auto& rows = block.at("j_khz");
    if (int(rows.size()) != n_ions)
        throw ValidationError("couplings.j_khz", "expected " + std::to_string(n_ions) + " rows");
    CouplingMatrix m = CouplingMatrix::zero(n_ions);
    for (int i = 0; i < n_ions; ++i) {
        if (int(rows.at(i).size()) != n_ions)
            throw ValidationError("couplings.j_khz", "row " + std::to_string(i) + " length");
        for (int k = 0; k < n_ions; ++k)
            m.j(i, k) = rad_from_khz(rows.at(i).at(k).get<double>());
    }
    for (int i = 0; i < n_ions; ++i) {
        if (m.j(i, i) != 0.0) throw ValidationError("couplings.j_khz", "diagonal must be zero");
        for (int k = 0; k < n_ions; ++k)
            if (m.j(i, k) != m.j(k, i))
                throw ValidationError("couplings.j_khz", "matrix must be symmetric");
    }
    if (block.contains("sign_flip")) m.sign_flip = block.at("sign_flip").get<bool>();
    return m;
}

ScheduleBlock parse_schedule(const json& block) {
    reject_unknown_keys(block, "schedule",
                        {"b0_khz", "duration_us", "b_end_fraction", "samples", "tol",
                         "max_step_ns"});
    ScheduleBlock s;
    s.b0 = rad_from_khz(number_at(block, "schedule", "b0_khz", 29.0));
    s.duration = number_at(block, "schedule", "duration_us", 300.0) * 1e-6;
    s.b_end_fraction = number_at(block, "schedule", "b_end_fraction", 0.05);
    s.samples = int(number_at(block, "schedule", "samples", 41.0));
    s.tol = number_at(block, "schedule", "tol", 1e-6);
    s.max_step = number_at(block, "schedule", "max_step_ns", 100.0) * 1e-9;
    if (s.samples < 2) throw ValidationError("schedule.samples", "must be >= 2");
    if (!(s.tol > 0.0)) throw ValidationError("schedule.tol", "must be > 0");
    if (!(s.max_step > 0.0)) throw ValidationError("schedule.max_step_ns", "must be > 0");
    s.ramp();  // validates b0, duration, fraction
    return s;
}

AnalysisBlock parse_analysis(const json& block, uint64_t global_seed) {
    reject_unknown_keys(block, "analysis",
                        {"basis", "shots", "prep_error", "seed", "edge_threshold", "gap_samples",
                         "gap_levels"});
    AnalysisBlock a;
    a.seed = global_seed;
    if (block.contains("basis")) a.basis = parse_basis(block.at("basis").get<std::string>());
    a.shots = uint64_t(number_at(block, "analysis", "shots", 0.0));
    a.prep_error = number_at(block, "analysis", "prep_error", 0.0);
    if (!(a.prep_error >= 0.0 && a.prep_error <= 1.0))
        throw ValidationError("analysis.prep_error", "must be in [0, 1]");
    a.seed = uint64_t(number_at(block, "analysis", "seed", double(global_seed)));
    a.edge_threshold = number_at(block, "analysis", "edge_threshold", 0.2);
    a.gap_samples = int(number_at(block, "analysis", "gap_samples", 0.0));
    a.gap_levels = int(number_at(block, "analysis", "gap_levels", 4.0));
    return a;
}

json resolved_json(const ExperimentConfig& cfg) {
    json out;
    out["preset"] = cfg.preset;
    out["seed"] = cfg.seed;
    out["trap"] = trap_to_json(cfg.trap.params);
    out["trap"]["n_ions"] = cfg.trap.n_ions;
    out["trap"]["restarts"] = cfg.trap.restarts;
    out["trap"]["seed"] = cfg.trap.seed;
    if (cfg.drive) {
        json d;
        json rabi = json::array();
        for (double r : cfg.drive->rabi) rabi.push_back(khz_from_rad(r));
        d["rabi_khz"] = rabi;
        d["mu_mhz"] = mhz_from_rad(cfg.drive->mu);
        d["recoil_khz"] = khz_from_rad(cfg.drive->recoil);
        d["carrier_ghz"] = cfg.drive->carrier_hint_hz / 1e9;
        d["resonance_guard_khz"] = khz_from_rad(cfg.drive->resonance_guard);
        out["drive"] = d;
    }
    if (cfg.couplings) out["couplings"] = coupling_to_json(*cfg.couplings);
    json s;
    s["b0_khz"] = khz_from_rad(cfg.schedule.b0);
    s["duration_us"] = cfg.schedule.duration * 1e6;
    s["b_end_fraction"] = cfg.schedule.b_end_fraction;
    s["samples"] = cfg.schedule.samples;
    s["tol"] = cfg.schedule.tol;
    s["max_step_ns"] = cfg.schedule.max_step * 1e9;
    out["schedule"] = s;
    json a;
    a["basis"] = basis_name(cfg.analysis.basis);
    a["shots"] = cfg.analysis.shots;
    a["prep_error"] = cfg.analysis.prep_error;
    a["seed"] = cfg.analysis.seed;
    a["edge_threshold"] = cfg.analysis.edge_threshold;
    a["gap_samples"] = cfg.analysis.gap_samples;
    a["gap_levels"] = cfg.analysis.gap_levels;
    out["analysis"] = a;
    return out;
}

}  // namespace

ExperimentConfig parse_config(const json& raw) {
    if (!raw.is_object()) throw ValidationError("", "config must be a JSON object");
    reject_unknown_keys(raw, "config",
                        {"preset", "seed", "trap", "drive", "couplings", "schedule", "analysis"});

    ExperimentConfig cfg;
    cfg.seed = raw.contains("seed") ? raw.at("seed").get<uint64_t>() : 0;
    if (raw.contains("preset")) {
        cfg.preset = raw.at("preset").get<std::string>();
        if (!is_preset(cfg.preset))
            throw ValidationError("preset", "unknown preset '" + cfg.preset + "'");
    }

    json trap_block = raw.value("trap", json::object());
    const bool preset_couplings = !cfg.preset.empty() && [&] {
        for (const auto& p : preset_catalog())
            if (p.name == cfg.preset) return p.has_couplings;
        return false;
    }();

    if (!cfg.preset.empty()) {
        // presets fully override the blocks they define
        trap_block = trap_to_json(trap_preset(cfg.preset));
        trap_block["n_ions"] = preset_ion_count(cfg.preset);
        if (raw.contains("trap")) {
            for (const auto& key : {"restarts", "seed"})
                if (raw.at("trap").contains(key)) trap_block[key] = raw.at("trap").at(key);
        }
    }
    cfg.trap = parse_trap(trap_block, cfg.seed);

    if (preset_couplings) {
        cfg.couplings = coupling_preset(cfg.preset);
    } else if (raw.contains("couplings")) {
        cfg.couplings = parse_couplings(raw.at("couplings"), cfg.trap.n_ions);
    }
    if (raw.contains("drive")) cfg.drive = parse_drive(raw.at("drive"), cfg.trap);
    if (cfg.couplings && cfg.drive)
        throw ValidationError("drive", "give either a drive block or direct couplings, not both");

    cfg.schedule = parse_schedule(raw.value("schedule", json::object()));
    cfg.analysis = parse_analysis(raw.value("analysis", json::object()), cfg.seed);
    cfg.resolved = resolved_json(cfg);
    return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
    json raw;
    try {
        raw = read_json_file(path);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("", std::string("config parse error: ") + e.what());
    }
    return parse_config(raw);
}

}  // namespace ionmag
