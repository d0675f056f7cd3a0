#pragma once

#include <string>
#include <vector>

#include "djcm/states.hpp"
#include "djcm/wigner.hpp"

namespace djcm::tools {

// Bundled named runs (fig2a..fig6d). Times are in kappa_eff*t units; all
// bundled amplitudes are real.
struct Preset {
  std::string name;
  std::string command;  // "inversion" or "wigner"
  CavityKind cavity = CavityKind::coherent;
  double alpha = 0;
  double beta = 0;
  double delta_over_keff = 0;
  double eps_a = 0;
  double eps_b = 0;

  // inversion presets: uniform time grid
  double t_start = 0;
  double t_stop = 0;
  int t_count = 0;

  // wigner presets: single time + phase-space window
  double t = 0;
  PhaseGrid grid{};
  int ell = 0;

  // The large-drive runs are series-only: the verifier's basis would need
  // ~400 quanta in the drive mode.
  bool oracle_feasible = true;
};

const std::vector<Preset>& presets();

// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

}  // namespace djcm::tools
