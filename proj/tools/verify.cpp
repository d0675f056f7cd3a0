#include "verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "djcm/inversion.hpp"
#include "djcm/oracle.hpp"
#include "djcm/wigner.hpp"
#include "export.hpp"

namespace djcm::tools {

namespace {

struct Check {
  std::string name;
  double max_dev = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_dev <= tolerance; }
};

// Max |series - verifier| for one cavity state over a [0, 20] time grid.
double inversion_deviation(const CavityState& cavity, complex beta,
                           const ModelParams& params, int points) {
  int n_a = default_cutoff(mean_photon_number(cavity));
  int n_b = default_cutoff(std::norm(beta));
  OracleEvolver evolver(params, n_a, n_b);
  FockCoefficients ca = fock_coefficients(cavity, n_a);
  FockCoefficients cb =
      fock_coefficients(CavityState::coherent(beta), n_b);
  TruncatedState st0 = evolver.prepare_excited(ca.amplitudes, cb.amplitudes);

  double max_dev = 0.0;
  for (int i = 0; i < points; ++i) {
    double t = 20.0 * i / (points - 1);
    double reference = oracle_inversion(evolver.evolve(st0, t));
    double series;
    switch (cavity.kind) {
      case CavityKind::even_cat:
        series = inversion_even(cavity.alpha, beta, params, t);
        break;
      case CavityKind::odd_cat:
        series = inversion_odd(cavity.alpha, beta, params, t);
        break;
      default:
        series = inversion_coherent(cavity.alpha, beta, params, t);
        break;
    }
    max_dev = std::max(max_dev, std::abs(series - reference));
  }
  return max_dev;
}

}  // namespace

int run_verify(const std::string& out_path) {
  std::vector<Check> checks;
  double s10 = std::sqrt(10.0);
  ModelParams unbalanced = ModelParams::from_mixing(3 / s10, 1 / s10, 0.0);
  ModelParams unbalanced_detuned =
      ModelParams::from_mixing(3 / s10, 1 / s10, 6.0);
  ModelParams balanced = ModelParams::from_mixing(1.0, 1.0, 0.0);

  checks.push_back({"inversion_coherent_delta0",
                    inversion_deviation(CavityState::coherent(1.0), 2.0,
                                        unbalanced, 81),
                    1e-6});
  checks.push_back({"inversion_coherent_delta6",
                    inversion_deviation(CavityState::coherent(1.0), 2.0,
                                        unbalanced_detuned, 81),
                    1e-6});
  checks.push_back({"inversion_even_cat",
                    inversion_deviation(CavityState::even_cat(1.0), 2.0,
                                        unbalanced, 81),
                    1e-6});
  checks.push_back({"inversion_odd_cat",
                    inversion_deviation(CavityState::odd_cat(1.0), 2.0,
                                        unbalanced, 81),
                    1e-6});

  {
    double max_dev = 0.0;
    for (double t : {0.0, 5.0, 9.0, 20.0}) {
      EnsembleResult ens =
          thermal_ensemble_run(1.0, 2.0, unbalanced, t, 44, 30, 60);
      double series = inversion_thermal(1.0, 2.0, unbalanced, t);
      max_dev = std::max(max_dev, std::abs(series - ens.inversion));
    }
    checks.push_back({"inversion_thermal_nbar1", max_dev, 1e-6});
  }

  {
    // General vs simplified kernel on random balanced-coupling points.
    std::mt19937_64 rng(20260822);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    std::uniform_real_distribution<double> time(0.0, 100.0);
    const double deltas[] = {0.0, 2.0, 10.0};
    double max_dev = 0.0;
    for (int i = 0; i < 200; ++i) {
      complex alpha{amp(rng), amp(rng)};
      complex beta{amp(rng), amp(rng)};
      complex gamma{amp(rng), amp(rng)};
      double t = time(rng);
      ModelParams P = ModelParams::from_mixing(1.0, 1.0, deltas[i % 3]);
      KernelArgs args = KernelArgs::physical(alpha, beta);
      double general = wigner_kernel(args, P, gamma, t).real();
      double simplified = wigner_kernel_equal(args, P, gamma, t, 90);
      max_dev = std::max(max_dev, std::abs(general - simplified));
    }
    checks.push_back({"kernel_general_vs_simplified", max_dev, 1e-10});
  }

  {
    // Coherent-state surface vs displaced-parity evaluation, 21x21 window.
    int n_a = 300, n_b = 30;
    OracleEvolver evolver(balanced, n_a, n_b);
    FockCoefficients ca =
        fock_coefficients(CavityState::coherent(1.0), n_a);
    FockCoefficients cb =
        fock_coefficients(CavityState::coherent(2.0), n_b);
    TruncatedState st0 = evolver.prepare_excited(ca.amplitudes, cb.amplitudes);
    std::vector<complex> rho = reduced_density_a(evolver.evolve(st0, 5.0));
    double max_dev = 0.0;
    for (int iq = 0; iq < 21; ++iq) {
      for (int ip = 0; ip < 21; ++ip) {
        double q = -10.0 + 14.0 * iq / 20.0;
        double p = -7.0 + 14.0 * ip / 20.0;
        complex gamma{q / std::sqrt(2.0), p / std::sqrt(2.0)};
        double reference = oracle_wigner(rho, n_a + 1, gamma);
        double series = wigner_coherent(1.0, 2.0, balanced, gamma, 5.0);
        max_dev = std::max(max_dev, std::abs(series - reference));
      }
    }
    checks.push_back({"wigner_vs_oracle_21x21", max_dev, 1e-5});
  }

  json report;
  report["version"] = "1.0.0";
  int failures = 0;
  json list = json::array();
  for (const Check& c : checks) {
    std::printf("%-32s max dev %.3e  tol %.0e  %s\n", c.name.c_str(),
                c.max_dev, c.tolerance, c.pass() ? "pass" : "FAIL");
    if (!c.pass()) ++failures;
    list.push_back(json{{"name", c.name},
                        {"max_abs_deviation", c.max_dev},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass()}});
  }
  report["checks"] = list;
  report["pass"] = failures == 0;
  if (!out_path.empty()) {
    write_text_file(out_path, report.dump(2) + "\n");
  }
  std::printf("verify: %s\n", failures == 0 ? "all checks passed"
                                            : "CHECKS FAILED");
  return failures;
}

}  // namespace djcm::tools
