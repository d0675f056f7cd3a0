#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace djcm {

using complex = std::complex<double>;

// Couplings of the atom to the cavity mode (kappa_a) and the driving mode
// (kappa_b), plus the atom-field detuning. The normalized mixing weights
// eps_a, eps_b describe the rotated mode combination that carries the whole
// atom-field interaction; kappa_eff sets the time scale (figure axes use
// kappa_eff * t).
struct ModelParams {
  double kappa_a = 0;
  double kappa_b = 0;
  double delta = 0;

  double kappa_eff = 0;
  double eps_a = 0;
  double eps_b = 0;

  // Hard bound for every adaptive series in the library.
  int series_cap = 4096;

  static ModelParams from_couplings(double kappa_a, double kappa_b,
                                    double delta);
  // Accepts unnormalized mixing weights; they are scaled to eps_a^2+eps_b^2=1.
  static ModelParams from_mixing(double eps_a, double eps_b, double delta,
                                 double kappa_eff = 1.0);
};

// Per-excitation evolution scalars of the two-state block with n+1 quanta.
struct RabiFactors {
  int n = 0;
  double omega_n = 0;
  double delta_n = 0;
  complex F{1.0, 0.0};
  complex G{0.0, 0.0};
};

double rabi_frequency(int n, const ModelParams& params);

RabiFactors evolution_factors(int n, const ModelParams& params, double t);

// F and G for all n in [0, n_max], sized n_max+1.
void evolution_tables(int n_max, const ModelParams& params, double t,
                      std::vector<complex>& F, std::vector<complex>& G);

// Coherent labels of the rotated mode pair: (eps_a*a + eps_b*b,
// eps_b*a - eps_a*b). Norm-preserving.
std::pair<complex, complex> quasimode_transform(complex alpha_a,
                                                complex alpha_b,
                                                const ModelParams& params);

}  // namespace djcm
