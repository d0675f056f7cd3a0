#include "djcm/marginals.hpp"

#include <cmath>
#include <stdexcept>

#include "djcm/errors.hpp"
#include "djcm/parallel.hpp"
#include "pair_series.hpp"

namespace djcm {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

// Physicists' Hermite polynomial of complex argument, forward recurrence.
complex hermite_poly(int n, complex x) {
  if (n == 0) return complex{1.0, 0.0};
  complex hm1{1.0, 0.0};
  complex h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    complex next = 2.0 * x * h - 2.0 * double(k) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out *= double(n - k + j) / double(j);
  return out;
}

double marginal_eval(complex aa, complex ab, const ModelParams& params,
                     double mu, double t, Axis axis) {
  double ea = params.eps_a;
  double eb = params.eps_b;
  // The p-axis density is the q-axis machine evaluated on labels rotated a
  // quarter turn (holomorphic by -i, antiholomorphic by +i).
  complex ha, hb, aha, ahb;
  if (axis == Axis::q) {
    ha = aa;
    hb = ab;
    aha = std::conj(aa);
    ahb = std::conj(ab);
  } else {
    ha = complex{0.0, -1.0} * aa;
    hb = complex{0.0, -1.0} * ab;
    aha = complex{0.0, 1.0} * std::conj(aa);
    ahb = complex{0.0, 1.0} * std::conj(ab);
  }
  complex Ah = ea * ha + eb * hb;
  complex Aah = ea * aha + eb * ahb;
  complex Bh = eb * ha - ea * hb;
  complex Bah = eb * aha - ea * ahb;
  complex Q = std::sqrt(2.0) * mu - eb * (Bh + Bah);
  complex u = ea * Q;
  complex S = detail::pair_sum(u, u, complex{ea * ea, 0.0},
                               complex{eb * eb, 0.0}, Ah, Aah, params, t, 0);
  complex value =
      std::sqrt(2.0) * std::exp(-0.5 * Q * Q - Ah * Aah) * S;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw convergence_error("quadrature density produced non-finite value");
  }
  if (value.real() < -1e-9) {
    throw convergence_error("quadrature density " +
                            std::to_string(value.real()) + " below zero");
  }
  return value.real();
}

}  // namespace

complex hermite_kernel(double mu, int m, int mp, complex alpha_a,
                       complex alpha_b, const ModelParams& params) {
  if (m < 0 || mp < 0) throw std::invalid_argument("orders must be >= 0");
  double ea = params.eps_a;
  double eb = params.eps_b;
  complex nu_a = ea * (ea * alpha_a - eb * alpha_b);
  complex nu_b = eb * (eb * alpha_a - ea * alpha_b);
  complex arg = mu - (nu_a + std::conj(nu_b)) / std::sqrt(2.0);

  int kmax = std::min(m, mp);
  complex ratio{0.0, 0.0};
  if (kmax > 0) {
    complex den = ea * eb * (eb * alpha_a + ea * alpha_b);
    if (std::abs(den) == 0.0) {
      throw std::domain_error("cross-term ratio undefined at this label pair");
    }
    complex num = ea * ea * ea * alpha_a + eb * eb * eb * alpha_b;
    ratio = num / den;
  }

  complex sum{0.0, 0.0};
  double dfact = 1.0;  // (2k)!! = 2^k k!
  complex ratio_pow{1.0, 0.0};
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      dfact *= 2.0 * k;
      ratio_pow *= ratio;
    }
    sum += dfact * binomial(m, k) * binomial(mp, k) * ratio_pow *
           hermite_poly(m - k, arg) * hermite_poly(mp - k, arg);
  }
  return sum;
}

double marginal_q_kernel(complex alpha_a, complex alpha_b,
                         const ModelParams& params, double q, double t) {
  return marginal_eval(alpha_a, alpha_b, params, q, t, Axis::q);
}

double marginal_p_kernel(complex alpha_a, complex alpha_b,
                         const ModelParams& params, double p, double t) {
  return marginal_eval(alpha_a, alpha_b, params, p, t, Axis::p);
}

MarginalCurve marginal_coherent(complex alpha, complex beta,
                                const ModelParams& params, Axis axis,
                                const std::vector<double>& points, double t) {
  for (double x : points) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("marginal points must be finite");
    }
  }
  MarginalCurve curve;
  curve.axis = axis;
  curve.points = points;
  curve.values.assign(points.size(), 0.0);
  curve.meta = RunRecord{params, CavityState::coherent(alpha),
                         DriveState{beta}};
  curve.t = t;
  parallel_for(static_cast<int>(points.size()), [&](int i) {
    curve.values[i] = marginal_eval(alpha, beta, params, points[i], t, axis);
  });
  return curve;
}

MarginalCurve marginal_from_surface(const WignerSurface& surface, Axis axis) {
  const PhaseGrid& grid = surface.grid;
  if (grid.n_q < 8 || grid.n_p < 8) {
    throw std::invalid_argument(
        "surface grid too coarse for marginal integration (need >= 8 points "
        "per axis)");
  }
  MarginalCurve curve;
  curve.axis = axis;
  curve.meta = surface.meta;
  curve.t = surface.t;
  if (axis == Axis::q) {
    double h = (grid.p_max - grid.p_min) / (grid.n_p - 1);
    curve.points.resize(grid.n_q);
    curve.values.resize(grid.n_q);
    for (int iq = 0; iq < grid.n_q; ++iq) {
      curve.points[iq] = grid.q_at(iq);
      const double* row = &surface.values[static_cast<std::size_t>(iq) *
                                          grid.n_p];
      double s = 0.0;
      for (int ip = 0; ip < grid.n_p; ++ip) s += row[ip];
      s -= 0.5 * (row[0] + row[grid.n_p - 1]);
      curve.values[iq] = s * h / kSqrt2Pi;
    }
  } else {
    double h = (grid.q_max - grid.q_min) / (grid.n_q - 1);
    curve.points.resize(grid.n_p);
    curve.values.resize(grid.n_p);
    for (int ip = 0; ip < grid.n_p; ++ip) {
      curve.points[ip] = grid.p_at(ip);
      double s = 0.0;
      for (int iq = 0; iq < grid.n_q; ++iq) {
        s += surface.values[static_cast<std::size_t>(iq) * grid.n_p + ip];
      }
      s -= 0.5 * (surface.values[ip] +
                  surface.values[static_cast<std::size_t>(grid.n_q - 1) *
                                     grid.n_p +
                                 ip]);
      curve.values[ip] = s * h / kSqrt2Pi;
    }
  }
  return curve;
}

}  // namespace djcm
