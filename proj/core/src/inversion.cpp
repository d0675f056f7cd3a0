#include "djcm/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "djcm/errors.hpp"
#include "djcm/parallel.hpp"

namespace djcm {

namespace {

// 1 - 2s must stay a population difference; anything further out than noise
// means the series went wrong.
double checked_inversion(double s) {
  double value = 1.0 - 2.0 * s;
  if (!(std::abs(value) <= 1.0 + 1e-9)) {
    throw convergence_error("inversion " + std::to_string(value) +
                            " outside [-1, 1]");
  }
  return value;
}

double cat_inversion(complex alpha, complex beta, const ModelParams& params,
                     double t, bool even) {
  // The weights fall off super-exponentially past the larger of the two
  // Poisson means, so a 10-sigma margin is past double precision already.
  complex u = params.eps_a * alpha + params.eps_b * beta;
  complex v = params.eps_a * alpha - params.eps_b * beta;
  double lmax = std::max(std::norm(u), std::norm(v));
  int count = static_cast<int>(std::ceil(lmax + 10.0 * std::sqrt(lmax) + 30.0));
  if (count > params.series_cap) {
    throw series_cap_error(lmax, params.series_cap);
  }

  std::vector<double> weights =
      cat_quasimode_weights(alpha, beta, params, even, count);
  std::vector<complex> F, G;
  evolution_tables(count, params, t, F, G);
  double s = 0.0;
  for (int n = 0; n <= count; ++n) s += weights[n] * std::norm(G[n]);
  return checked_inversion(s);
}

}  // namespace

double xi_kernel(complex alpha_a, complex alpha_b, const ModelParams& params,
                 double t) {
  double lam = std::norm(params.eps_a * alpha_a + params.eps_b * alpha_b);
  double s = 0.0;
  double w = std::exp(-lam);  // Poisson weight, advanced multiplicatively
  int n = 0;
  while (true) {
    RabiFactors rf = evolution_factors(n, params, t);
    s += w * std::norm(rf.G);
    if (n > lam) {
      // Remaining mass is below w * r/(1-r) once the ratio r dips under 1,
      // and |G|^2 <= 1 caps each addend.
      double r = lam / (n + 1);
      if (w * r / (1.0 - r) < 1e-16 * (1.0 + std::abs(s))) break;
    }
    ++n;
    w *= lam / n;
    if (n > params.series_cap) throw series_cap_error(lam, params.series_cap);
  }
  return checked_inversion(s);
}

std::vector<double> cat_quasimode_weights(complex alpha, complex beta,
                                          const ModelParams& params, bool even,
                                          int count) {
  if (count < 0) throw std::invalid_argument("weight count must be >= 0");
  if (!even && std::abs(alpha) == 0.0) {
    throw std::invalid_argument("odd superposition needs alpha != 0");
  }
  double lam = std::norm(alpha);
  complex u = params.eps_a * alpha + params.eps_b * beta;
  complex v = params.eps_a * alpha - params.eps_b * beta;
  double lu = std::norm(u);
  double lv = std::norm(v);
  complex w = u * std::conj(v);

  // Log-space Poisson factors keep the three pieces finite for any count.
  auto poisson = [count](double l, std::vector<double>& out) {
    out.assign(count + 1, 0.0);
    if (l > 0.0) {
      double logl = std::log(l);
      for (int n = 0; n <= count; ++n) {
        out[n] = std::exp(-l + n * logl - std::lgamma(n + 1.0));
      }
    } else {
      out[0] = 1.0;
    }
  };
  std::vector<double> t1, t2;
  poisson(lu, t1);
  poisson(lv, t2);

  // Interference piece: a complex base raised to n, kept in polar form so the
  // phase advances linearly instead of compounding rounding error.
  std::vector<double> t3(count + 1, 0.0);
  double aw = std::abs(w);
  if (aw == 0.0) {
    t3[0] = 2.0 * std::exp(-2.0 * lam + w.real());
  } else {
    double logaw = std::log(aw);
    double arg_neg_w = std::arg(-w);
    for (int n = 0; n <= count; ++n) {
      double mag = std::exp(-2.0 * lam + w.real() + n * logaw -
                            std::lgamma(n + 1.0));
      t3[n] = 2.0 * mag * std::cos(w.imag() + n * arg_neg_w);
    }
  }

  double pref = even ? 1.0 / (2.0 * (1.0 + std::exp(-2.0 * lam)))
                     : 1.0 / (2.0 * (1.0 - std::exp(-2.0 * lam)));
  std::vector<double> out(count + 1);
  for (int n = 0; n <= count; ++n) {
    out[n] = even ? pref * (t1[n] + t2[n] + t3[n])
                  : pref * (t1[n] + t2[n] - t3[n]);
  }
  return out;
}

double inversion_coherent(complex alpha, complex beta,
                          const ModelParams& params, double t) {
  return xi_kernel(alpha, beta, params, t);
}

double inversion_even(complex alpha, complex beta, const ModelParams& params,
                      double t) {
  return cat_inversion(alpha, beta, params, t, true);
}

double inversion_odd(complex alpha, complex beta, const ModelParams& params,
                     double t) {
  if (std::abs(alpha) == 0.0) {
    throw std::invalid_argument("odd superposition needs alpha != 0");
  }
  return cat_inversion(alpha, beta, params, t, false);
}

double inversion_thermal(double nbar, complex beta, const ModelParams& params,
                         double t) {
  if (nbar < 0.0) throw std::invalid_argument("nbar must be >= 0");
  double x = params.eps_a * params.eps_a * nbar;
  double c = params.eps_b * params.eps_b * std::norm(beta);
  double w = x / (1.0 + x);
  double wz = -c / ((1.0 + x) * (1.0 + x));
  double pref = std::exp(-c / (1.0 + x)) / (1.0 + x);

  // Weights p_n = pref * T_n with T_n advanced by the scaled three-term
  // recurrence; regular at nbar = 0 where only n = 0 contributes through T.
  double s = 0.0;
  double mean_scale = x + c + 10.0 * std::sqrt(x + c) + 10.0;
  double Tm1 = 0.0;
  double T = 1.0;
  int n = 0;
  while (true) {
    RabiFactors rf = evolution_factors(n, params, t);
    double p = pref * T;
    s += p * std::norm(rf.G);
    if (n > mean_scale && std::abs(p) < 1e-18) break;
    double Tn1 = ((w * (2 * n + 1) - wz) * T - n * w * w * Tm1) / (n + 1);
    Tm1 = T;
    T = Tn1;
    ++n;
    if (n > params.series_cap) {
      throw series_cap_error(x + c, params.series_cap);
    }
  }
  return checked_inversion(s);
}

TimeSeries inversion_series(const CavityState& cavity, const DriveState& drive,
                            const ModelParams& params,
                            const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) ||
        (i > 0 && !(times[i] >= times[i - 1]))) {
      throw std::invalid_argument("time grid must be finite and nondecreasing");
    }
  }

  TimeSeries series;
  series.times = times;
  series.values.assign(times.size(), 0.0);
  series.meta = RunRecord{params, cavity, drive};

  int n = static_cast<int>(times.size());
  switch (cavity.kind) {
    case CavityKind::coherent:
      parallel_for(n, [&](int i) {
        series.values[i] =
            inversion_coherent(cavity.alpha, drive.beta, params, times[i]);
      });
      break;
    case CavityKind::even_cat:
    case CavityKind::odd_cat: {
      // The number weights do not depend on t: compute them once, then sweep.
      bool even = cavity.kind == CavityKind::even_cat;
      complex u = params.eps_a * cavity.alpha + params.eps_b * drive.beta;
      complex v = params.eps_a * cavity.alpha - params.eps_b * drive.beta;
      double lmax = std::max(std::norm(u), std::norm(v));
      int count =
          static_cast<int>(std::ceil(lmax + 10.0 * std::sqrt(lmax) + 30.0));
      if (count > params.series_cap) {
        throw series_cap_error(lmax, params.series_cap);
      }
      std::vector<double> weights =
          cat_quasimode_weights(cavity.alpha, drive.beta, params, even, count);
      parallel_for(n, [&](int i) {
        std::vector<complex> F, G;
        evolution_tables(count, params, times[i], F, G);
        double s = 0.0;
        for (int k = 0; k <= count; ++k) s += weights[k] * std::norm(G[k]);
        series.values[i] = checked_inversion(s);
      });
      break;
    }
    case CavityKind::thermal:
      parallel_for(n, [&](int i) {
        series.values[i] =
            inversion_thermal(cavity.nbar, drive.beta, params, times[i]);
      });
      break;
  }
  return series;
}

}  // namespace djcm
