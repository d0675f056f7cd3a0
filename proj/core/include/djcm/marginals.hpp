#pragma once

#include <vector>

#include "djcm/model.hpp"
#include "djcm/states.hpp"
#include "djcm/wigner.hpp"

namespace djcm {

enum class Axis { q, p };

struct MarginalCurve {
  Axis axis = Axis::q;
  std::vector<double> points;
  std::vector<double> values;
  RunRecord meta;
  double t = 0;
  // false: the curve integrates to sqrt(2*pi); true: rescaled to integrate
  // to 1.
  bool unit_normalized = false;
};

// Finite double-Hermite sum used by the quadrature-density displays: k runs
// to min(m, mp), with binomial zero-argument Laguerre values and Hermite
// polynomials of the shifted (generally complex) argument.
complex hermite_kernel(double mu, int m, int mp, complex alpha_a,
                       complex alpha_b, const ModelParams& params);

// Position / momentum quadrature density (times sqrt(2*pi)) of the reduced
// cavity state grown from the coherent pair (alpha_a, alpha_b).
double marginal_q_kernel(complex alpha_a, complex alpha_b,
                         const ModelParams& params, double q, double t);
double marginal_p_kernel(complex alpha_a, complex alpha_b,
                         const ModelParams& params, double p, double t);

// Curve over the requested points for a coherent cavity state; parallel over
// points.
MarginalCurve marginal_coherent(complex alpha, complex beta,
                                const ModelParams& params, Axis axis,
                                const std::vector<double>& points, double t);

// Trapezoid integration of a phase-space surface along the other axis,
// scaled by 1/sqrt(2*pi). Needs at least 8 points per axis.
MarginalCurve marginal_from_surface(const WignerSurface& surface, Axis axis);

}  // namespace djcm
