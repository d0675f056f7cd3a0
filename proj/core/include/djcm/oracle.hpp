#pragma once

#include <memory>
#include <vector>

#include "djcm/model.hpp"
#include "djcm/states.hpp"

namespace djcm {

// Brute-force verifier: direct evolution of atom x cavity x drive in a
// truncated number basis. Everything here is independent of the series
// kernels so the two paths can check each other.

// Flat layout: index = s*(n_a+1)*(n_b+1) + na*(n_b+1) + nb, where s = 0 is
// the excited atom and s = 1 the ground atom.
struct TruncatedState {
  int n_a = 0;
  int n_b = 0;
  std::vector<complex> amp;
  double norm_defect = 0.0;  // |1 - sum |amp|^2| at preparation

  double norm_squared() const;
  int index(int s, int na, int nb) const {
    return (s * (n_a + 1) + na) * (n_b + 1) + nb;
  }
};

struct SparseOperator {
  struct Entry {
    int row;
    int col;
    double value;
  };
  int dim = 0;
  std::vector<Entry> entries;
};

// Hermitian coupling operator over the truncated basis: detuning on the
// diagonal plus the two ladder couplings.
SparseOperator build_interaction_hamiltonian(const ModelParams& params,
                                             int n_a, int n_b);

// Exact evolution by eigendecomposition of the conserved-excitation blocks.
// Blocks are built lazily and cached; instances are safe to share across
// threads.
class OracleEvolver {
public:
  OracleEvolver(const ModelParams& params, int n_a, int n_b);
  ~OracleEvolver();
  OracleEvolver(const OracleEvolver&) = delete;
  OracleEvolver& operator=(const OracleEvolver&) = delete;

  // Atom starts excited; the field modes hold the given number-basis
  // amplitudes (anything beyond the cutoffs is dropped and recorded in
  // norm_defect).
  TruncatedState prepare_excited(
      const std::vector<complex>& cavity_amplitudes,
      const std::vector<complex>& drive_amplitudes) const;

  TruncatedState evolve(const TruncatedState& state, double t) const;

  int cutoff_a() const;
  int cutoff_b() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// <sigma_z>: excited minus ground population.
double oracle_inversion(const TruncatedState& state);

// Reduced cavity density matrix, (n_a+1)^2 row-major.
std::vector<complex> reduced_density_a(const TruncatedState& state);

// Displaced-parity evaluation of the quasiprobability at gamma. Requires
// |gamma|^2 <= (dim-1)/4 so the displaced state stays inside the cutoff.
double oracle_wigner(const std::vector<complex>& rho_a, int dim,
                     complex gamma);

// Tr[rho D(xi)].
complex oracle_characteristic(const std::vector<complex>& rho_a, int dim,
                              complex xi);

struct EnsembleResult {
  std::vector<double> weights;
  std::vector<double> inversions;
  double tail_mass = 0.0;
  double inversion = 0.0;  // weight-summed observable
};

// Thermal cavity as a geometric mixture of number-state initial conditions,
// each evolved exactly; stops early once weights drop below 1e-14.
EnsembleResult thermal_ensemble_run(double nbar, complex beta,
                                    const ModelParams& params, double t,
                                    int n_a, int n_b, int n_terms);

// Cutoff heuristic for a mode with the given mean occupation.
int default_cutoff(double mean_occupation);

}  // namespace djcm
