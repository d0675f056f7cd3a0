#include "presets.hpp"

#include <cmath>

namespace djcm::tools {

namespace {

std::vector<Preset> build_presets() {
  std::vector<Preset> out;
  double s10 = std::sqrt(10.0);
  double eq = 1.0 / std::sqrt(2.0);

  // Inversion sweeps: unbalanced couplings, cat cavity states, four drive /
  // detuning combinations each.
  struct InvCase {
    char tag;
    double delta;
    double beta;
  };
  const InvCase inv_cases[] = {
      {'a', 0.0, 2.0}, {'b', 6.0, 2.0}, {'c', 0.0, 20.0}, {'d', 6.0, 20.0}};
  for (int fig = 2; fig <= 3; ++fig) {
    for (const InvCase& c : inv_cases) {
      Preset p;
      p.name = "fig" + std::to_string(fig) + c.tag;
      p.command = "inversion";
      p.cavity = fig == 2 ? CavityKind::even_cat : CavityKind::odd_cat;
      p.alpha = 1.0;
      p.beta = c.beta;
      p.delta_over_keff = c.delta;
      p.eps_a = 3.0 / s10;
      p.eps_b = 1.0 / s10;
      p.t_start = 0.0;
      p.t_stop = 200.0;
      p.t_count = 2001;
      p.oracle_feasible = c.beta <= 2.0;
      out.push_back(p);
    }
  }

  // Phase-space surfaces: balanced couplings, fixed window and order.
  struct WigCase {
    char tag;
    double delta;
    double beta;
  };
  const WigCase wig_cases[] = {
      {'a', 0.0, 2.0}, {'b', 0.0, 5.0}, {'c', 10.0, 2.0}, {'d', 10.0, 5.0}};
  for (int fig = 4; fig <= 6; ++fig) {
    for (const WigCase& c : wig_cases) {
      Preset p;
      p.name = "fig" + std::to_string(fig) + c.tag;
      p.command = "wigner";
      p.cavity = fig == 4 ? CavityKind::even_cat
                          : (fig == 5 ? CavityKind::odd_cat
                                      : CavityKind::coherent);
      p.alpha = 1.0;
      p.beta = c.beta;
      p.delta_over_keff = c.delta;
      p.eps_a = eq;
      p.eps_b = eq;
      p.t = 100.0;
      p.grid = PhaseGrid{-10.0, 4.0, -7.0, 7.0, 61, 61};
      p.ell = 50;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = build_presets();
  return table;
}

const Preset* find_preset(const std::string& name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace djcm::tools
