#pragma once

#include <vector>

#include "djcm/model.hpp"
#include "djcm/states.hpp"

namespace djcm {

// Rectangular phase-space window in the quadratures q = sqrt(2) Re(gamma),
// p = sqrt(2) Im(gamma).
struct PhaseGrid {
  double q_min = 0;
  double q_max = 0;
  double p_min = 0;
  double p_max = 0;
  int n_q = 0;
  int n_p = 0;

  void validate() const;  // n >= 2 per axis, max > min
  double q_at(int iq) const;
  double p_at(int ip) const;
};

// Independent holomorphic/antiholomorphic labels for the cavity (a) and
// drive (b) modes. Ordinary evaluation ties antihol = conj(hol); the
// decoupled form is what makes the superposition cross terms reachable by
// plain kernel calls.
struct KernelArgs {
  complex hol_a{0.0, 0.0};
  complex antihol_a{0.0, 0.0};
  complex hol_b{0.0, 0.0};
  complex antihol_b{0.0, 0.0};

  static KernelArgs physical(complex alpha_a, complex alpha_b);
};

// Expectation of the displacement operator for the reduced cavity state
// grown from the labeled coherent pair. terms > 0 fixes the series order;
// 0 picks it from the mean occupation.
complex char_kernel(const KernelArgs& args, const ModelParams& params,
                    complex xi, double t, int terms = 0);

// Phase-space kernel at gamma for the labeled coherent pair. Physical labels
// give a real result up to roundoff; the imaginary part is returned so the
// caller can record the residue.
complex wigner_kernel(const KernelArgs& args, const ModelParams& params,
                      complex gamma, double t, int terms = 0);

// Simplified finite-sum form available when eps_a == eps_b (throws
// otherwise). Returns the real part; for physical labels the sum is real.
double wigner_kernel_equal(const KernelArgs& args, const ModelParams& params,
                           complex gamma, double t, int ell = 50);

// Interference contribution of a +-alpha superposition: two decoupled-label
// kernel evaluations combined into a real value.
double cross_kernel(complex alpha, complex beta, const ModelParams& params,
                    complex gamma, double t, int terms = 0);

double wigner_coherent(complex alpha, complex beta, const ModelParams& params,
                       complex gamma, double t);
double wigner_even(complex alpha, complex beta, const ModelParams& params,
                   complex gamma, double t);
double wigner_odd(complex alpha, complex beta, const ModelParams& params,
                  complex gamma, double t);

struct WignerSurface {
  PhaseGrid grid;
  std::vector<double> values;  // row-major, index iq * n_p + ip
  RunRecord meta;
  double t = 0;
  int ell_used = 0;  // 0 = adaptive order per point
  double max_imag_residue = 0;
  double min_value = 0;
  double max_value = 0;
};

// Full-grid sweep, parallel over points. ell > 0 fixes the series order
// (using the simplified equal-coupling form where it applies); ell = 0 lets
// every point pick its own order. Thermal cavities are rejected.
WignerSurface wigner_surface(const CavityState& cavity, const DriveState& drive,
                             const ModelParams& params, double t,
                             const PhaseGrid& grid, int ell = 0);

}  // namespace djcm
