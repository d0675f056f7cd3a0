#include "djcm/states.hpp"

#include <cmath>
#include <stdexcept>

namespace djcm {

CavityState CavityState::coherent(complex alpha) {
  return {CavityKind::coherent, alpha, 0.0};
}

CavityState CavityState::even_cat(complex alpha) {
  if (std::abs(alpha) == 0.0)
    throw std::invalid_argument("cat amplitude must be nonzero");
  return {CavityKind::even_cat, alpha, 0.0};
}

CavityState CavityState::odd_cat(complex alpha) {
  if (std::abs(alpha) == 0.0)
    throw std::invalid_argument("odd cat is undefined at zero amplitude");
  return {CavityKind::odd_cat, alpha, 0.0};
}

CavityState CavityState::thermal(double nbar) {
  if (!(nbar >= 0)) throw std::invalid_argument("nbar must be >= 0");
  return {CavityKind::thermal, complex{}, nbar};
}

double mean_photon_number(const CavityState& state) {
  double a2 = std::norm(state.alpha);
  switch (state.kind) {
    case CavityKind::coherent:
      return a2;
    case CavityKind::even_cat:
      return a2 * std::tanh(a2);
    case CavityKind::odd_cat:
      return a2 / std::tanh(a2);
    case CavityKind::thermal:
      return state.nbar;
  }
  return 0.0;
}

FockCoefficients fock_coefficients(const CavityState& state, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  FockCoefficients out;

  if (state.kind == CavityKind::thermal) {
    out.mixture = true;
    out.weights.resize(cutoff + 1, 0.0);
    if (state.nbar == 0.0) {
      out.weights[0] = 1.0;
      out.tail_mass = 0.0;
    } else {
      double ratio = state.nbar / (1.0 + state.nbar);
      double w = 1.0 / (1.0 + state.nbar);
      double kept = 0.0;
      for (int n = 0; n <= cutoff; ++n) {
        out.weights[n] = w;
        kept += w;
        w *= ratio;
      }
      out.tail_mass = 1.0 - kept;
    }
    out.truncated = out.tail_mass > 1e-10;
    return out;
  }

  double a2 = std::norm(state.alpha);
  out.amplitudes.resize(cutoff + 1, complex{});
  // coherent amplitudes built multiplicatively, then parity-masked for cats
  std::vector<complex> coh(cutoff + 1);
  coh[0] = std::exp(-0.5 * a2);
  for (int n = 1; n <= cutoff; ++n)
    coh[n] = coh[n - 1] * state.alpha / std::sqrt(static_cast<double>(n));

  double kept = 0.0;
  switch (state.kind) {
    case CavityKind::coherent:
      out.amplitudes = coh;
      break;
    case CavityKind::even_cat: {
      // untruncated norm of the parity-projected coherent state
      double norm = std::sqrt(std::exp(-a2) * std::cosh(a2));
      for (int n = 0; n <= cutoff; n += 2) out.amplitudes[n] = coh[n] / norm;
      break;
    }
    case CavityKind::odd_cat: {
      double norm = std::sqrt(std::exp(-a2) * std::sinh(a2));
      for (int n = 1; n <= cutoff; n += 2) out.amplitudes[n] = coh[n] / norm;
      break;
    }
    case CavityKind::thermal:
      break;  // handled above
  }
  for (const complex& c : out.amplitudes) kept += std::norm(c);
  out.tail_mass = 1.0 - kept;
  out.truncated = out.tail_mass > 1e-10;
  return out;
}

}  // namespace djcm
