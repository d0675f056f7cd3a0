#include "djcm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace djcm {

ModelParams ModelParams::from_couplings(double kappa_a, double kappa_b,
                                        double delta) {
  if (!(kappa_a >= 0) || !(kappa_b >= 0))
    throw std::invalid_argument("couplings must be non-negative");
  double kappa_eff = std::hypot(kappa_a, kappa_b);
  if (!(kappa_eff > 0))
    throw std::invalid_argument("at least one coupling must be positive");
  ModelParams p;
  p.kappa_a = kappa_a;
  p.kappa_b = kappa_b;
  p.delta = delta;
  p.kappa_eff = kappa_eff;
  p.eps_a = kappa_a / kappa_eff;
  p.eps_b = kappa_b / kappa_eff;
  return p;
}

ModelParams ModelParams::from_mixing(double eps_a, double eps_b, double delta,
                                     double kappa_eff) {
  if (!(eps_a >= 0) || !(eps_b >= 0))
    throw std::invalid_argument("mixing weights must be non-negative");
  if (!(kappa_eff > 0))
    throw std::invalid_argument("kappa_eff must be positive");
  double norm = std::hypot(eps_a, eps_b);
  if (!(norm > 0)) throw std::invalid_argument("mixing weights are both zero");
  ModelParams p;
  p.eps_a = eps_a / norm;
  p.eps_b = eps_b / norm;
  p.kappa_eff = kappa_eff;
  p.kappa_a = kappa_eff * p.eps_a;
  p.kappa_b = kappa_eff * p.eps_b;
  p.delta = delta;
  return p;
}

double rabi_frequency(int n, const ModelParams& params) {
  if (n < 0) throw std::invalid_argument("excitation index must be >= 0");
  return 2.0 * params.kappa_eff * std::sqrt(n + 1.0);
}

RabiFactors evolution_factors(int n, const ModelParams& params, double t) {
  RabiFactors r;
  r.n = n;
  r.omega_n = rabi_frequency(n, params);
  r.delta_n = std::hypot(params.delta, r.omega_n);
  double half = 0.5 * r.delta_n * t;
  double c = std::cos(half), s = std::sin(half);
  r.F = complex(c, -(params.delta / r.delta_n) * s);
  r.G = complex(0.0, -(r.omega_n / r.delta_n) * s);
  return r;
}

void evolution_tables(int n_max, const ModelParams& params, double t,
                      std::vector<complex>& F, std::vector<complex>& G) {
  F.resize(n_max + 1);
  G.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    RabiFactors r = evolution_factors(n, params, t);
    F[n] = r.F;
    G[n] = r.G;
  }
}

std::pair<complex, complex> quasimode_transform(complex alpha_a,
                                                complex alpha_b,
                                                const ModelParams& params) {
  return {params.eps_a * alpha_a + params.eps_b * alpha_b,
          params.eps_b * alpha_a - params.eps_a * alpha_b};
}

}  // namespace djcm
