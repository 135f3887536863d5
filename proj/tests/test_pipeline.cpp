#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>

#include "ionmag/config.hpp"
#include "ionmag/pipeline.hpp"
#include "ionmag/presets.hpp"

using namespace ionmag;
namespace fs = std::filesystem;

namespace {

json fm4_config() {
    return json{{"preset", "fm4"},
                {"seed", 1},
                {"schedule",
                 {{"b0_khz", 29.0}, {"duration_us", 300.0}, {"b_end_fraction", 0.05},
                  {"samples", 9}}}};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("unknown keys are rejected with their key path") {
    json raw = fm4_config();
    raw["schedule"]["duration_ms"] = 1.0;
    try {
        parse_config(raw);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.key_path == "schedule.duration_ms");
    }
}

TEST_CASE("planar-crystal condition is named in the error") {
    json raw{{"trap",
              {{"omega_x_khz", 700.0}, {"omega_y_khz", 500.0}, {"omega_z_khz", 600.0},
               {"n_ions", 4}}}};
    try {
        parse_config(raw);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("planar-crystal condition") != std::string::npos);
        CHECK(e.key_path == "trap.omega_z_khz");
    }
}

TEST_CASE("drive and direct couplings are mutually exclusive") {
    json raw = fm4_config();
    raw["drive"] = {{"rabi_khz", 50.0}, {"mu_mhz", 1.5}, {"recoil_khz", 37.0}};
    CHECK_THROWS_AS(parse_config(raw), ValidationError);
}

TEST_CASE("serialization round-trips") {
    ExperimentConfig cfg = parse_config(fm4_config());
    TrapParams t2 = trap_from_json(trap_to_json(cfg.trap.params));
    CHECK(std::abs(t2.omega_x - cfg.trap.params.omega_x) < 1e-12 * cfg.trap.params.omega_x);

    IonCrystal c = equilibrium_positions(cfg.trap.params, 4, 8, 1);
    IonCrystal c2 = crystal_from_json(crystal_to_json(c, cfg.trap.params));
    for (size_t k = 0; k < c.xy.size(); ++k) CHECK(c2.xy[k] == c.xy[k]);

    ModeSpectrum s = transverse_modes(c, cfg.trap.params);
    ModeSpectrum s2 = spectrum_from_json(spectrum_to_json(s));
    for (int m = 0; m < s.n_ions; ++m)
        CHECK(std::abs(s2.frequencies[m] - s.frequencies[m]) < 1e-12 * s.frequencies[m]);

    CouplingMatrix j = coupling_preset("hex7_case1");
    CouplingMatrix j2 = coupling_from_json(coupling_to_json(j));
    for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 7; ++k)
            CHECK(std::abs(j2.j(i, k) - j.j(i, k)) <= 1e-12 * std::abs(j.j(i, k)));

    GroundManifold m = classical_ground_manifold(j);
    GroundManifold m2 = manifold_from_json(manifold_to_json(m, 7));
    CHECK(m2.configs == m.configs);

    SpinState psi = initial_state(3);
    SpinState psi2 = state_from_json(state_to_json(psi));
    for (size_t k = 0; k < psi.dim(); ++k) CHECK(psi2.amplitudes[k] == psi.amplitudes[k]);
}

TEST_CASE("fm4 preset end-to-end: manifold degeneracy 2 and sane outputs") {
    TempDir dir("ionmag_test_fm4");
    ExperimentConfig cfg = parse_config(fm4_config());
    RunRecord rec = run_pipeline(cfg, dir.path.string());
    CHECK(rec.manifold.degeneracy == 2);
    CHECK(rec.crystal.n_ions == 4);
    CHECK(rec.histogram.probs.size() == 16);
    CHECK(rec.ground_fraction > 0.5);
    for (const char* f :
         {"crystal.json", "crystal.csv", "modes.json", "mode_comb.csv", "couplings.json",
          "couplings.csv", "manifold.json", "evolve.json", "final_state.json", "trajectory.csv",
          "histogram.csv", "summary.json", "record.json", "evolution.csv", "sx.csv"})
        CHECK_MESSAGE(fs::exists(dir.path / f), f);
}

TEST_CASE("same config twice gives byte-identical artifacts") {
    TempDir d1("ionmag_test_det1");
    TempDir d2("ionmag_test_det2");
    ExperimentConfig cfg = parse_config(fm4_config());
    run_pipeline(cfg, d1.path.string());
    run_pipeline(cfg, d2.path.string());
    for (const auto& entry : fs::directory_iterator(d1.path)) {
        const std::string name = entry.path().filename().string();
        CHECK_MESSAGE(read_text_file((d1.path / name).string()) ==
                          read_text_file((d2.path / name).string()),
                      name);
    }
}

TEST_CASE("stages resume from cache and reruns stay byte-identical") {
    TempDir dir("ionmag_test_cache");
    ExperimentConfig cfg = parse_config(fm4_config());
    RunRecord first = run_pipeline(cfg, dir.path.string());
    std::map<std::string, std::string> bytes;
    for (const auto& entry : fs::directory_iterator(dir.path))
        bytes[entry.path().filename().string()] =
            read_text_file(entry.path().string());
    RunRecord second = run_pipeline(cfg, dir.path.string());
    CHECK(second.stage_log[0] == "crystal: cached");
    CHECK(second.stage_log[1] == "modes: cached");
    for (const auto& entry : fs::directory_iterator(dir.path)) {
        const std::string name = entry.path().filename().string();
        CHECK_MESSAGE(bytes[name] == read_text_file(entry.path().string()), name);
    }
    CHECK(first.manifold.degeneracy == second.manifold.degeneracy);
}

TEST_CASE("CSV headers are stable (golden)") {
    TempDir dir("ionmag_test_golden");
    ExperimentConfig cfg = parse_config(fm4_config());
    RunRecord rec = run_pipeline(cfg, dir.path.string());
    auto first_line = [&](const std::string& name) {
        const std::string text = read_text_file((dir.path / name).string());
        return text.substr(0, text.find('\n'));
    };
    CHECK(first_line("crystal.csv") == "ion,x_dimensionless,y_dimensionless,x_um,y_um");
    CHECK(first_line("mode_comb.csv") ==
          "mode_from_com,frequency_mhz,weight_ion_1,weight_ion_2,weight_ion_3,weight_ion_4");
    CHECK(first_line("couplings.csv") == "j_khz,ion_1,ion_2,ion_3,ion_4");
    CHECK(first_line("histogram.csv") == "index,label,probability");
    CHECK(first_line("evolution.csv") == "t_us,B_khz,ground_fraction");
    CHECK(first_line("trajectory.csv").substr(0, 34) == "t_us,b_khz,ground_population,mean_");
    CHECK(first_line("sx.csv") == "sx,final");
    (void)rec;
}

TEST_CASE("histogram CSV has 2^N rows") {
    TempDir dir("ionmag_test_rows");
    ExperimentConfig cfg = parse_config(fm4_config());
    run_pipeline(cfg, dir.path.string());
    const std::string text = read_text_file((dir.path / "histogram.csv").string());
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16);
}

TEST_CASE("reversal record writes three S_x distributions") {
    TempDir dir("ionmag_test_rev");
    json raw = fm4_config();
    ExperimentConfig cfg = parse_config(raw);
    RunRecord rec = run_pipeline(cfg, dir.path.string(), true);
    REQUIRE(rec.reversal.has_value());
    const std::string text = read_text_file((dir.path / "sx.csv").string());
    CHECK(text.substr(0, text.find('\n')) == "sx,initial,post_forward,post_return");
    CHECK(rec.reversal->return_probability > 0.9);  // 4-ion FM is nearly reversible
}

TEST_CASE("presets catalogue lists every built-in") {
    CHECK(preset_catalog().size() == 10);
    CHECK(is_preset("hex7_case2"));
    CHECK_FALSE(is_preset("nonsense"));
    CHECK_THROWS_AS(coupling_preset("pair2"), ValidationError);
}
