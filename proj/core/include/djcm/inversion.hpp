#pragma once

#include <vector>

#include "djcm/model.hpp"
#include "djcm/states.hpp"

namespace djcm {

struct TimeSeries {
  std::vector<double> times;  // physical time; exporters rescale by kappa_eff
  std::vector<double> values;
  RunRecord meta;
};

// Population difference of the atom for a coherent pair of field labels
// (alpha_a, alpha_b). Accepts independent complex labels so callers can feed
// the rotated-mode amplitude directly.
double xi_kernel(complex alpha_a, complex alpha_b, const ModelParams& params,
                 double t);

// Photon-number distribution of the rotated mode A when the cavity holds an
// even/odd superposition of +-alpha and the drive holds coherent beta.
// Returns count+1 weights; they are probabilities (nonnegative, sum to 1 up
// to truncation).
std::vector<double> cat_quasimode_weights(complex alpha, complex beta,
                                          const ModelParams& params, bool even,
                                          int count);

double inversion_coherent(complex alpha, complex beta,
                          const ModelParams& params, double t);
double inversion_even(complex alpha, complex beta, const ModelParams& params,
                      double t);
double inversion_odd(complex alpha, complex beta, const ModelParams& params,
                     double t);
double inversion_thermal(double nbar, complex beta, const ModelParams& params,
                         double t);

// Dispatches on the cavity kind over a nondecreasing time grid; evaluation is
// parallel over grid points.
TimeSeries inversion_series(const CavityState& cavity, const DriveState& drive,
                            const ModelParams& params,
                            const std::vector<double>& times);

}  // namespace djcm
