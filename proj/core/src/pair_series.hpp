#pragma once

// Internal series machinery shared by the phase-space and quadrature-density
// kernels. Not installed.

#include <cmath>
#include <vector>

#include "djcm/errors.hpp"
#include "djcm/model.hpp"

namespace djcm::detail {

// Normalized mixed-derivative table of exp(u s1 + v s2 - (b/2)(s1^2+s2^2)
// + c s1 s2) at the origin: T(m,n) = d^m_{s1} d^n_{s2} / sqrt(m! n!).
// Row-major (order+1) x (order+1).
inline void build_table(complex u, complex v, complex b, complex c, int order,
                        std::vector<complex>& T) {
  int w = order + 1;
  T.assign(static_cast<std::size_t>(w) * w, complex{0.0, 0.0});
  T[0] = complex{1.0, 0.0};
  for (int n = 1; n <= order; ++n) {
    complex val = v * T[n - 1];
    if (n >= 2) val -= b * std::sqrt(double(n - 1)) * T[n - 2];
    T[n] = val / std::sqrt(double(n));
  }
  for (int m = 1; m <= order; ++m) {
    complex* row = &T[static_cast<std::size_t>(m) * w];
    const complex* up = &T[static_cast<std::size_t>(m - 1) * w];
    const complex* up2 =
        m >= 2 ? &T[static_cast<std::size_t>(m - 2) * w] : nullptr;
    double sm = std::sqrt(double(m));
    double bsm = m >= 2 ? std::sqrt(double(m - 1)) : 0.0;
    row[0] = (u * up[0] - (up2 ? b * bsm * up2[0] : complex{0.0, 0.0})) / sm;
    for (int n = 1; n <= order; ++n) {
      complex val = u * up[n] + c * std::sqrt(double(n)) * up[n - 1];
      if (up2) val -= b * bsm * up2[n];
      row[n] = val / sm;
    }
  }
}

// The common bilinear sum: weights (Aah^m / sqrt(m!)) x (Ah^n / sqrt(n!))
// against time factors and two staggered reads of the derivative table. The
// outermost row/column band is monitored so a too-small order is detected
// and retried instead of silently truncating.
inline complex pair_sum_once(complex u, complex v, complex b, complex c,
                             complex Ah, complex Aah,
                             const ModelParams& params, double t, int N,
                             double& band_abs, double& total_abs) {
  std::vector<complex> T;
  build_table(u, v, b, c, N + 1, T);
  int w = N + 2;
  std::vector<complex> F, G;
  evolution_tables(N + 1, params, t, F, G);

  std::vector<complex> wm(N + 1), wn(N + 1);
  wm[0] = wn[0] = complex{1.0, 0.0};
  for (int m = 1; m <= N; ++m) {
    double inv = 1.0 / std::sqrt(double(m));
    wm[m] = wm[m - 1] * Aah * inv;
    wn[m] = wn[m - 1] * Ah * inv;
  }

  complex S{0.0, 0.0};
  band_abs = 0.0;
  total_abs = 0.0;
  for (int m = 0; m <= N; ++m) {
    const complex* row = &T[static_cast<std::size_t>(m) * w];
    const complex* row1 = &T[static_cast<std::size_t>(m + 1) * w];
    complex Fm = std::conj(F[m]);
    complex Gm = std::conj(G[m]);
    complex rsum{0.0, 0.0};
    for (int n = 0; n <= N; ++n) {
      complex term = wn[n] * (Fm * F[n] * row[n] + Gm * G[n] * row1[n + 1]);
      rsum += term;
      double a = std::abs(wm[m] * term);
      total_abs += a;
      if (m == N || n == N) band_abs += a;
    }
    S += wm[m] * rsum;
  }
  return S;
}

// terms > 0 fixes the order; terms <= 0 starts from the mean-occupation
// estimate and grows until the outer band is negligible against the total
// absolute mass of the series.
inline complex pair_sum(complex u, complex v, complex b, complex c, complex Ah,
                        complex Aah, const ModelParams& params, double t,
                        int terms) {
  double lam = std::abs(Ah) * std::abs(Aah);
  int N = terms;
  bool adaptive = terms <= 0;
  if (adaptive) {
    N = static_cast<int>(std::ceil(lam + 10.0 * std::sqrt(lam) + 25.0));
  }
  while (true) {
    if (N > params.series_cap) throw series_cap_error(lam, params.series_cap);
    double band_abs = 0.0, total_abs = 0.0;
    complex S =
        pair_sum_once(u, v, b, c, Ah, Aah, params, t, N, band_abs, total_abs);
    if (!adaptive || band_abs <= 1e-12 * (total_abs + 1e-300)) return S;
    N = std::max(N + 8, (3 * N) / 2);
  }
}

}  // namespace djcm::detail
