#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionmag/coupling.hpp"
#include "ionmag/crystal.hpp"
#include "ionmag/evolve.hpp"
#include "ionmag/ising.hpp"
#include "ionmag/measure.hpp"
#include "ionmag/modes.hpp"
#include "ionmag/trap.hpp"

namespace ionmag {

using json = nlohmann::ordered_json;

// FNV-1a over the canonical (sorted-key) dump; used for provenance stamps
// and stage caching.
uint64_t fnv1a64(const std::string& bytes);
std::string hash_of(const json& j);

// Every artifact carries the same provenance envelope.
json with_provenance(json body, const std::string& config_hash);

json trap_to_json(const TrapParams& t);
TrapParams trap_from_json(const json& j);

json crystal_to_json(const IonCrystal& c, const TrapParams& t);
IonCrystal crystal_from_json(const json& j);

json spectrum_to_json(const ModeSpectrum& s);
ModeSpectrum spectrum_from_json(const json& j);

json coupling_to_json(const CouplingMatrix& m);
CouplingMatrix coupling_from_json(const json& j);

json manifold_to_json(const GroundManifold& m, int n_ions);
GroundManifold manifold_from_json(const json& j);

json state_to_json(const SpinState& s);
SpinState state_from_json(const json& j);

json histogram_to_json(const PopulationHistogram& h);
PopulationHistogram histogram_from_json(const json& j);

json diagram_to_json(const InteractionDiagram& d);
json sx_to_json(const SxDistribution& d);

// CSV emitters. Column schemas are stable; headers are covered by golden
// tests. Floats are printed with %.17g so reloads are exact.
std::string csv_positions(const IonCrystal& c, const TrapParams& t);
std::string csv_mode_comb(const ModeSpectrum& s);
std::string csv_coupling(const CouplingMatrix& m);
std::string csv_histogram(const PopulationHistogram& h);
std::string csv_sx(const std::vector<SxDistribution>& dists,
                   const std::vector<std::string>& names);
std::string csv_gap_profile(const GapProfile& g);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

std::string format_double(double v);

}  // namespace ionmag
