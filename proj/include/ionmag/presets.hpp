#pragma once

#include <string>
#include <vector>

#include "ionmag/coupling.hpp"
#include "ionmag/trap.hpp"

namespace ionmag {

// Built-in experiments. Trap anisotropies were chosen by scanning until the
// minimizer reproduces the intended geometry class; the coupling presets are
// hand-coded signed graphs with two magnitude tiers (|J0| and 0.4 |J0|)
// whose classical ground manifolds carry the intended degeneracies. Ion
// numbering inside each preset is documented next to its builder.
struct PresetInfo {
    std::string name;
    std::string description;
    int n_ions = 0;
    bool has_couplings = false;
};

const std::vector<PresetInfo>& preset_catalog();
bool is_preset(const std::string& name);

// Trap geometry presets: pair2, rhombus4, hexagon7, crystal10, disc12.
TrapParams trap_preset(const std::string& name);
int preset_ion_count(const std::string& name);

// Coupling presets: fm4, neel4, hex7_case1, hex7_case2, hex7_case3,
// crystal10. Throws ValidationError for trap-only presets.
CouplingMatrix coupling_preset(const std::string& name);

// Name of the trap preset an experiment preset rides on (e.g. fm4 ->
// rhombus4).
std::string trap_preset_for(const std::string& name);

}  // namespace ionmag
