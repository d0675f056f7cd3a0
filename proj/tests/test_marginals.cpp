#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "djcm/marginals.hpp"
#include "djcm/oracle.hpp"

using namespace djcm;

namespace {

const ModelParams kBalanced = ModelParams::from_mixing(1.0, 1.0, 0.0);
const ModelParams kSkew = ModelParams::from_mixing(3.0, 1.0, 0.0);
const ModelParams kSkewMid = ModelParams::from_mixing(3.0, 1.0, 2.0);

complex rand_c(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius / std::sqrt(2.0),
                                           radius / std::sqrt(2.0));
  return complex{u(rng), u(rng)};
}

// Direct evaluation of the double-Hermite sum from its definition: explicit
// factorials, explicit powers of the cross-term ratio, coefficient-form
// Hermite polynomials. Small orders only; exists to check the production
// recurrence form against an independent reading.
complex brute_hermite_sum(double mu, int m, int mp, complex aa, complex ab,
                          const ModelParams& p) {
  auto fact = [](int n) {
    double f = 1.0;
    for (int j = 2; j <= n; ++j) f *= j;
    return f;
  };
  auto hermite = [&](int n, complex x) {
    complex sum{0.0, 0.0};
    for (int j = 0; 2 * j <= n; ++j) {
      double coef = fact(n) / (fact(j) * fact(n - 2 * j));
      sum += coef * std::pow(-1.0, j) * std::pow(2.0 * x, n - 2 * j);
    }
    return sum;
  };
  double ea = p.eps_a, eb = p.eps_b;
  complex nu_a = ea * (ea * aa - eb * ab);
  complex nu_b = eb * (eb * aa - ea * ab);
  complex arg = mu - (nu_a + std::conj(nu_b)) / std::sqrt(2.0);
  complex ratio = (ea * ea * ea * aa + eb * eb * eb * ab) /
                  (ea * eb * (eb * aa + ea * ab));
  complex sum{0.0, 0.0};
  for (int k = 0; k <= std::min(m, mp); ++k) {
    double dfact = 1.0;
    for (int j = 1; j <= k; ++j) dfact *= 2.0 * j;
    double binoms = fact(m) / (fact(k) * fact(m - k)) * fact(mp) /
                    (fact(k) * fact(mp - k));
    sum += dfact * binoms * std::pow(ratio, k) * hermite(m - k, arg) *
           hermite(mp - k, arg);
  }
  return sum;
}

}  // namespace

TEST_CASE("double-Hermite sum at tiny orders") {
  complex aa{0.8, -0.3}, ab{1.2, 0.4};
  CHECK(hermite_kernel(0.7, 0, 0, aa, ab, kSkew) == complex{1.0, 0.0});

  double ea = kSkew.eps_a, eb = kSkew.eps_b;
  complex nu_a = ea * (ea * aa - eb * ab);
  complex nu_b = eb * (eb * aa - ea * ab);
  complex arg = 0.7 - (nu_a + std::conj(nu_b)) / std::sqrt(2.0);
  complex h10 = hermite_kernel(0.7, 1, 0, aa, ab, kSkew);
  CHECK(std::abs(h10 - 2.0 * arg) <= 1e-13);
}

TEST_CASE("double-Hermite sum matches a direct expansion") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> umu(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    complex aa = rand_c(rng, 2.0);
    complex ab = rand_c(rng, 2.0);
    if (std::abs(kSkew.eps_b * aa + kSkew.eps_a * ab) < 0.3) continue;
    double mu = umu(rng);
    for (int m = 0; m <= 3; ++m) {
      for (int mp = 0; mp <= 3; ++mp) {
        complex got = hermite_kernel(mu, m, mp, aa, ab, kSkew);
        complex want = brute_hermite_sum(mu, m, mp, aa, ab, kSkew);
        CHECK(std::abs(got - want) <=
              1e-11 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("double-Hermite sum rejects the vanishing-denominator pair") {
  // The cross-term ratio is undefined when the rotated label cancels; only
  // orders that actually use it are affected.
  complex aa{1.0, 0.0};
  complex ab = -aa;  // balanced mixing: eb*aa + ea*ab = 0
  CHECK_THROWS_AS(hermite_kernel(0.3, 1, 1, aa, ab, kBalanced),
                  std::domain_error);
  CHECK_NOTHROW(hermite_kernel(0.3, 1, 0, aa, ab, kBalanced));
}

TEST_CASE("quadrature densities before any evolution") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> uq(-4.0, 4.0);
  for (int i = 0; i < 15; ++i) {
    complex alpha = rand_c(rng, 2.0);
    complex beta = rand_c(rng, 2.0);
    double q = uq(rng);
    double want = std::sqrt(2.0) *
                  std::exp(-std::pow(q - std::sqrt(2.0) * alpha.real(), 2));
    CHECK(std::abs(marginal_q_kernel(alpha, beta, kSkewMid, q, 0.0) - want) <=
          1e-12);
    double want_p = std::sqrt(2.0) *
                    std::exp(-std::pow(q - std::sqrt(2.0) * alpha.imag(), 2));
    CHECK(std::abs(marginal_p_kernel(alpha, beta, kSkewMid, q, 0.0) - want_p) <=
          1e-12);
  }
}

TEST_CASE("quadrature densities at frozen reference points") {
  CHECK(std::abs(marginal_q_kernel(1.0, 2.0, kBalanced, 0.3, 7.0) -
                 0.67327841247838527) <= 1e-13);
  CHECK(std::abs(marginal_q_kernel(1.0, 2.0, kSkewMid, 0.3, 7.0) -
                 0.45307459024567082) <= 1e-13);
  CHECK(std::abs(marginal_p_kernel(1.0, 2.0, kBalanced, 0.4, 13.0) -
                 0.59262009293499041) <= 1e-13);
}

TEST_CASE("position and momentum densities are dual") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> ut(0.0, 50.0);
  const ModelParams* params[] = {&kBalanced, &kSkewMid};
  for (int i = 0; i < 30; ++i) {
    complex aa = rand_c(rng, 2.0);
    complex ab = rand_c(rng, 2.0);
    double x = ux(rng);
    double t = ut(rng);
    const ModelParams& p = *params[i % 2];
    double uq = marginal_q_kernel(aa, ab, p, x, t);
    double vp = marginal_p_kernel(complex{0.0, 1.0} * aa,
                                  complex{0.0, 1.0} * ab, p, x, t);
    CHECK(std::abs(uq - vp) <= 1e-10);
    CHECK(uq >= -1e-9);
  }
}

TEST_CASE("conjugation with reversed detuning mirrors the momentum axis") {
  // Conjugating both labels and flipping the sign of the detuning conjugates
  // the reduced density matrix, which reflects p -> -p and leaves the
  // position density untouched.
  const ModelParams mirrored = ModelParams::from_mixing(3.0, 1.0, -2.0);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    complex aa = rand_c(rng, 2.0);
    complex ab = rand_c(rng, 2.0);
    double x = ux(rng);
    double a = marginal_q_kernel(aa, ab, kSkewMid, x, 5.0);
    double b = marginal_q_kernel(std::conj(aa), std::conj(ab), mirrored, x,
                                 5.0);
    CHECK(std::abs(a - b) <= 1e-12);
    double c = marginal_p_kernel(aa, ab, kSkewMid, x, 5.0);
    double d = marginal_p_kernel(std::conj(aa), std::conj(ab), mirrored, -x,
                                 5.0);
    CHECK(std::abs(c - d) <= 1e-12);
  }
}

TEST_CASE("coherent curve evaluation and normalization") {
  std::vector<double> points(321);
  for (int i = 0; i < 321; ++i) points[i] = -8.0 + 16.0 * i / 320.0;
  complex alpha{1.0, -0.5};
  MarginalCurve curve = marginal_coherent(alpha, 2.0, kSkewMid, Axis::q,
                                          points, 5.0);
  REQUIRE(curve.values.size() == points.size());
  CHECK(curve.axis == Axis::q);
  CHECK(!curve.unit_normalized);
  for (int i : {0, 57, 200}) {
    CHECK(curve.values[i] ==
          doctest::Approx(marginal_q_kernel(alpha, 2.0, kSkewMid, points[i],
                                            5.0))
              .epsilon(1e-14));
  }
  double h = points[1] - points[0];
  double integral = 0.0;
  for (double v : curve.values) integral += v;
  integral -= 0.5 * (curve.values.front() + curve.values.back());
  integral *= h;
  CHECK(std::abs(integral - std::sqrt(2.0 * std::acos(-1.0))) <= 2e-3);

  CHECK_THROWS_AS(marginal_coherent(alpha, 2.0, kSkewMid, Axis::q,
                                    {0.0, std::nan("")}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("surface-integrated marginal reproduces the analytic curve") {
  // Coherent state: direct kernel vs integrated surface.
  PhaseGrid grid{-8.0, 8.0, -8.0, 8.0, 161, 161};
  DriveState drive{2.0};
  WignerSurface wc = wigner_surface(CavityState::coherent(1.0), drive,
                                    kBalanced, 0.0, grid);
  MarginalCurve mc = marginal_from_surface(wc, Axis::q);
  REQUIRE(mc.points.size() == 161);
  for (int i = 0; i < 161; i += 20) {
    double want = marginal_q_kernel(1.0, 2.0, kBalanced, mc.points[i], 0.0);
    CHECK(std::abs(mc.values[i] - want) <= 1e-8);
  }

  // Even superposition at t=0: closed-form transverse integral for real
  // amplitude.
  double a = 1.0, lam = a * a;
  WignerSurface we = wigner_surface(CavityState::even_cat(a), drive, kBalanced,
                                    0.0, grid);
  MarginalCurve me = marginal_from_surface(we, Axis::q);
  double norm_int = 0.0;
  double h = me.points[1] - me.points[0];
  for (int i = 0; i < 161; ++i) {
    double q = me.points[i];
    double want = (std::exp(lam) / std::cosh(lam)) * std::exp(-2.0 * lam) /
                  std::sqrt(2.0) * std::exp(-q * q) *
                  (1.0 + std::cosh(2.0 * std::sqrt(2.0) * a * q));
    CHECK(std::abs(me.values[i] - want) <= 1e-8);
    norm_int += me.values[i];
  }
  norm_int -= 0.5 * (me.values.front() + me.values.back());
  norm_int *= h;
  CHECK(std::abs(norm_int - std::sqrt(2.0 * std::acos(-1.0))) <= 2e-3);

  // Momentum-axis route on the same surface: even superposition of real
  // amplitude is symmetric in p, and the p-curve integrates the q direction.
  MarginalCurve mp = marginal_from_surface(we, Axis::p);
  for (int i = 0; i < 80; ++i) {
    CHECK(std::abs(mp.values[i] - mp.values[160 - i]) <= 1e-9);
  }

  PhaseGrid coarse{-2.0, 2.0, -2.0, 2.0, 7, 12};
  WignerSurface tiny = wigner_surface(CavityState::coherent(0.0), DriveState{},
                                      kBalanced, 0.0, coarse);
  CHECK_THROWS_AS(marginal_from_surface(tiny, Axis::q), std::invalid_argument);
}

TEST_CASE("quadrature density matches the integrated verifier surface") {
  // Independent route: reduced density from direct evolution, its
  // displaced-parity surface integrated over the transverse axis.
  int n_a = 130, n_b = 30;
  OracleEvolver evolver(kSkew, n_a, n_b);
  FockCoefficients ca = fock_coefficients(CavityState::coherent(1.0), n_a);
  FockCoefficients cb = fock_coefficients(CavityState::coherent(2.0), n_b);
  TruncatedState st0 = evolver.prepare_excited(ca.amplitudes, cb.amplitudes);
  std::vector<complex> rho = reduced_density_a(evolver.evolve(st0, 5.0));

  const int np = 201;
  const double plim = 7.0;
  const double hp = 2.0 * plim / (np - 1);
  for (double q : {-1.5, 0.0, 2.0}) {
    double acc = 0.0;
    for (int j = 0; j < np; ++j) {
      double p = -plim + j * hp;
      double w = oracle_wigner(rho, n_a + 1,
                               complex{q / std::sqrt(2.0),
                                       p / std::sqrt(2.0)});
      acc += (j == 0 || j == np - 1) ? 0.5 * w : w;
    }
    double reference = acc * hp / std::sqrt(2.0 * std::acos(-1.0));
    double series = marginal_q_kernel(1.0, 2.0, kSkew, q, 5.0);
    CHECK(std::abs(series - reference) <= 5e-4);
  }
}
