#include "ionmag/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ionmag/errors.hpp"
#include "ionmag/units.hpp"

namespace ionmag {

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_of(const json& j) {
    // sorted-key dump is canonical regardless of insertion order
    const std::string dump = nlohmann::json(j).dump();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(dump));
    return buf;
}

json with_provenance(json body, const std::string& config_hash) {
    body["config_hash"] = config_hash;
    body["version"] = kVersion;
    return body;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json trap_to_json(const TrapParams& t) {
    return json{{"omega_x_khz", khz_from_rad(t.omega_x)},
                {"omega_y_khz", khz_from_rad(t.omega_y)},
                {"omega_z_khz", khz_from_rad(t.omega_z)},
                {"mass_amu", t.ion_mass / kAmuKg},
                {"charge_e", t.ion_charge / kElementaryCharge}};
}

TrapParams trap_from_json(const json& j) {
    TrapParams t;
    t.omega_x = rad_from_khz(j.at("omega_x_khz").get<double>());
    t.omega_y = rad_from_khz(j.at("omega_y_khz").get<double>());
    t.omega_z = rad_from_khz(j.at("omega_z_khz").get<double>());
    t.ion_mass = j.at("mass_amu").get<double>() * kAmuKg;
    t.ion_charge = j.at("charge_e").get<double>() * kElementaryCharge;
    return t;
}

json crystal_to_json(const IonCrystal& c, const TrapParams& t) {
    json pos_dimless = json::array();
    json pos_um = json::array();
    const double scale_um = t.length_scale() * 1e6;
    for (int i = 0; i < c.n_ions; ++i) {
        pos_dimless.push_back({c.x(i), c.y(i)});
        pos_um.push_back({c.x(i) * scale_um, c.y(i) * scale_um});
    }
    return json{{"n_ions", c.n_ions},
                {"positions_dimensionless", pos_dimless},
                {"positions_um", pos_um},
                {"energy", c.potential_energy},
                {"gradient_norm", c.gradient_norm},
                {"length_scale_um", scale_um},
                {"trap", trap_to_json(t)}};
}

IonCrystal crystal_from_json(const json& j) {
    IonCrystal c;
    c.n_ions = j.at("n_ions").get<int>();
    for (const auto& row : j.at("positions_dimensionless")) {
        c.xy.push_back(row.at(0).get<double>());
        c.xy.push_back(row.at(1).get<double>());
    }
    if (int(c.xy.size()) != 2 * c.n_ions)
        throw ValidationError("crystal.positions_dimensionless", "row count mismatch");
    c.potential_energy = j.at("energy").get<double>();
    c.gradient_norm = j.at("gradient_norm").get<double>();
    return c;
}

json spectrum_to_json(const ModeSpectrum& s) {
    json freqs = json::array();
    for (double w : s.frequencies) freqs.push_back(mhz_from_rad(w));
    json rows = json::array();
    for (int i = 0; i < s.n_ions; ++i) {
        json row = json::array();
        for (int m = 0; m < s.n_ions; ++m) row.push_back(s.mode_matrix(i, m));
        rows.push_back(row);
    }
    return json{{"n_ions", s.n_ions},
                {"frequencies_mhz", freqs},
                {"mode_matrix", rows},
                {"trap", trap_to_json(s.trap)}};
}

ModeSpectrum spectrum_from_json(const json& j) {
    ModeSpectrum s;
    s.n_ions = j.at("n_ions").get<int>();
    for (const auto& f : j.at("frequencies_mhz")) s.frequencies.push_back(rad_from_mhz(f.get<double>()));
    s.mode_matrix = Matrix(s.n_ions, s.n_ions);
    const auto& rows = j.at("mode_matrix");
    for (int i = 0; i < s.n_ions; ++i)
        for (int m = 0; m < s.n_ions; ++m) s.mode_matrix(i, m) = rows.at(i).at(m).get<double>();
    s.trap = trap_from_json(j.at("trap"));
    return s;
}

json coupling_to_json(const CouplingMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.n_ions; ++i) {
        json row = json::array();
        for (int k = 0; k < m.n_ions; ++k) row.push_back(khz_from_rad(m.j(i, k)));
        rows.push_back(row);
    }
    return json{{"n_ions", m.n_ions}, {"j_khz", rows}, {"sign_flip", m.sign_flip}};
}

CouplingMatrix coupling_from_json(const json& j) {
    CouplingMatrix m = CouplingMatrix::zero(j.at("n_ions").get<int>());
    const auto& rows = j.at("j_khz");
    for (int i = 0; i < m.n_ions; ++i)
        for (int k = 0; k < m.n_ions; ++k) m.j(i, k) = rad_from_khz(rows.at(i).at(k).get<double>());
    m.sign_flip = j.at("sign_flip").get<bool>();
    return m;
}

json manifold_to_json(const GroundManifold& m, int n_ions) {
    json configs = json::array();
    json labels = json::array();
    for (uint32_t c : m.configs) {
        configs.push_back(c);
        labels.push_back(config_label(c, n_ions));
    }
    return json{{"n_ions", n_ions},
                {"energy_khz", khz_from_rad(m.energy)},
                {"degeneracy", m.degeneracy},
                {"configs", configs},
                {"labels", labels}};
}

GroundManifold manifold_from_json(const json& j) {
    GroundManifold m;
    m.energy = rad_from_khz(j.at("energy_khz").get<double>());
    for (const auto& c : j.at("configs")) m.configs.push_back(c.get<uint32_t>());
    m.degeneracy = j.at("degeneracy").get<int>();
    return m;
}

json state_to_json(const SpinState& s) {
    json amp = json::array();
    for (const cplx& a : s.amplitudes) amp.push_back({a.real(), a.imag()});
    return json{{"n_spins", s.n_spins}, {"amplitudes", amp}};
}

SpinState state_from_json(const json& j) {
    SpinState s;
    s.n_spins = j.at("n_spins").get<int>();
    for (const auto& a : j.at("amplitudes"))
        s.amplitudes.push_back(cplx(a.at(0).get<double>(), a.at(1).get<double>()));
    if (s.amplitudes.size() != size_t(1) << s.n_spins)
        throw ValidationError("state.amplitudes", "length is not 2^n_spins");
    return s;
}

json histogram_to_json(const PopulationHistogram& h) {
    return json{{"n_spins", h.n_spins}, {"basis", basis_name(h.basis)}, {"probs", h.probs}};
}

PopulationHistogram histogram_from_json(const json& j) {
    PopulationHistogram h;
    h.n_spins = j.at("n_spins").get<int>();
    h.basis = parse_basis(j.at("basis").get<std::string>());
    h.probs = j.at("probs").get<std::vector<double>>();
    return h;
}

json diagram_to_json(const InteractionDiagram& d) {
    json edges = json::array();
    for (const auto& e : d.edges)
        edges.push_back(json{{"i", e.i},
                             {"j", e.j},
                             {"j_khz", khz_from_rad(e.j_rad)},
                             {"sign", e.ferromagnetic() ? "FM" : "AFM"},
                             {"tier", e.tier}});
    return json{{"edges", edges},
                {"dropped_edges", d.n_dropped},
                {"threshold_khz", khz_from_rad(d.threshold_abs)}};
}

json sx_to_json(const SxDistribution& d) {
    json values = json::array(), probs = json::array();
    for (int k = 0; k <= d.n_spins; ++k) {
        values.push_back(d.value(k));
        probs.push_back(d.probs[k]);
    }
    return json{{"n_spins", d.n_spins}, {"values", values}, {"probs", probs}, {"mean", d.mean()}};
}

namespace {
std::string g(double v) { return format_double(v); }
}  // namespace

std::string csv_positions(const IonCrystal& c, const TrapParams& t) {
    std::ostringstream os;
    os << "ion,x_dimensionless,y_dimensionless,x_um,y_um\n";
    const double s = t.length_scale() * 1e6;
    for (int i = 0; i < c.n_ions; ++i)
        os << (i + 1) << ',' << g(c.x(i)) << ',' << g(c.y(i)) << ',' << g(c.x(i) * s) << ','
           << g(c.y(i) * s) << '\n';
    return os.str();
}

std::string csv_mode_comb(const ModeSpectrum& s) {
    std::ostringstream os;
    os << "mode_from_com,frequency_mhz";
    for (int i = 0; i < s.n_ions; ++i) os << ",weight_ion_" << (i + 1);
    os << '\n';
    for (const auto& row : mode_comb(s)) {
        os << row.index_from_com << ',' << g(row.frequency_mhz);
        for (double w : row.weights) os << ',' << g(w);
        os << '\n';
    }
    return os.str();
}

std::string csv_coupling(const CouplingMatrix& m) {
    std::ostringstream os;
    os << "j_khz";
    for (int i = 0; i < m.n_ions; ++i) os << ",ion_" << (i + 1);
    os << '\n';
    for (int i = 0; i < m.n_ions; ++i) {
        os << "ion_" << (i + 1);
        for (int k = 0; k < m.n_ions; ++k) os << ',' << g(khz_from_rad(m.j(i, k)));
        os << '\n';
    }
    return os.str();
}

std::string csv_histogram(const PopulationHistogram& h) {
    std::ostringstream os;
    os << "index,label,probability\n";
    for (size_t idx = 0; idx < h.probs.size(); ++idx)
        os << idx << ',' << config_label(uint32_t(idx), h.n_spins) << ',' << g(h.probs[idx])
           << '\n';
    return os.str();
}

std::string csv_sx(const std::vector<SxDistribution>& dists,
                   const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "sx";
    for (const auto& n : names) os << ',' << n;
    os << '\n';
    if (dists.empty()) return os.str();
    const int n = dists.front().n_spins;
    for (int k = 0; k <= n; ++k) {
        os << g(k - 0.5 * n);
        for (const auto& d : dists) os << ',' << g(d.probs[k]);
        os << '\n';
    }
    return os.str();
}

std::string csv_gap_profile(const GapProfile& gp) {
    std::ostringstream os;
    const size_t klev = gp.samples.empty() ? 0 : gp.samples.front().sector_eigenvalues.size();
    os << "t_us,b_khz,gap_khz";
    for (size_t k = 0; k < klev; ++k) os << ",e" << k << "_khz";
    os << '\n';
    for (const auto& s : gp.samples) {
        os << g(s.t * 1e6) << ',' << g(khz_from_rad(s.b_field)) << ',' << g(khz_from_rad(s.gap));
        for (double e : s.sector_eigenvalues) os << ',' << g(khz_from_rad(e));
        os << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot open " + path + " for writing");
    f << contents;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

json read_json_file(const std::string& path) {
    return json::parse(read_text_file(path));
}

}  // namespace ionmag
