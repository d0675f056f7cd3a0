#include "djcm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "djcm/errors.hpp"
#include "djcm/parallel.hpp"

namespace djcm {

namespace {

void check_cutoffs(int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) throw std::invalid_argument("cutoffs must be >= 1");
  // Guard the flat index arithmetic.
  long long dim = 2LL * (n_a + 1) * (n_b + 1);
  if (dim > (1LL << 30)) throw std::invalid_argument("cutoffs too large");
}

// <m|D(gamma)|n> for m,n <= order, built offset by offset from the scaled
// Laguerre recurrence q_{n+1} = (2n+k+1-x)/sqrt((n+1)(n+k+1)) q_n
//                              - sqrt(n(n+k))/sqrt((n+1)(n+k+1)) q_{n-1}.
std::vector<complex> displacement_matrix(complex gamma, int order) {
  int w = order + 1;
  std::vector<complex> d(static_cast<std::size_t>(w) * w, complex{0.0, 0.0});
  double x = std::norm(gamma);
  double ag = std::abs(gamma);
  std::vector<double> q(w);
  for (int k = 0; k <= order; ++k) {
    double pref;
    complex phase;
    if (ag > 0.0) {
      pref = std::exp(k * std::log(ag) - 0.5 * x - 0.5 * std::lgamma(k + 1.0));
      phase = std::polar(1.0, k * std::arg(gamma));
    } else {
      pref = k == 0 ? 1.0 : 0.0;
      phase = complex{1.0, 0.0};
    }
    q[0] = 1.0;
    for (int n = 0; n < order; ++n) {
      double den = std::sqrt(double(n + 1) * double(n + k + 1));
      double a1 = (2.0 * n + k + 1.0 - x) / den;
      double a2 = n > 0 ? std::sqrt(double(n) * double(n + k)) / den : 0.0;
      q[n + 1] = a1 * q[n] - a2 * (n > 0 ? q[n - 1] : 0.0);
    }
    double sign = k % 2 == 0 ? 1.0 : -1.0;
    for (int n = 0; n + k <= order; ++n) {
      d[static_cast<std::size_t>(n + k) * w + n] = pref * phase * q[n];
      if (k > 0) {
        d[static_cast<std::size_t>(n) * w + n + k] =
            pref * std::conj(phase) * q[n] * sign;
      }
    }
  }
  return d;
}

}  // namespace

double TruncatedState::norm_squared() const {
  double s = 0.0;
  for (const complex& a : amp) s += std::norm(a);
  return s;
}

SparseOperator build_interaction_hamiltonian(const ModelParams& params,
                                             int n_a, int n_b) {
  check_cutoffs(n_a, n_b);
  TruncatedState layout;
  layout.n_a = n_a;
  layout.n_b = n_b;
  SparseOperator op;
  op.dim = 2 * (n_a + 1) * (n_b + 1);
  for (int na = 0; na <= n_a; ++na) {
    for (int nb = 0; nb <= n_b; ++nb) {
      int e = layout.index(0, na, nb);
      int g = layout.index(1, na, nb);
      if (params.delta != 0.0) {
        op.entries.push_back({e, e, params.delta / 2.0});
        op.entries.push_back({g, g, -params.delta / 2.0});
      }
      // Lowering the atom raises one of the modes.
      if (na + 1 <= n_a) {
        int j = layout.index(1, na + 1, nb);
        double v = params.kappa_a * std::sqrt(double(na + 1));
        op.entries.push_back({j, e, v});
        op.entries.push_back({e, j, v});
      }
      if (nb + 1 <= n_b) {
        int j = layout.index(1, na, nb + 1);
        double v = params.kappa_b * std::sqrt(double(nb + 1));
        op.entries.push_back({j, e, v});
        op.entries.push_back({e, j, v});
      }
    }
  }
  return op;
}

struct OracleEvolver::Impl {
  ModelParams params;
  int n_a;
  int n_b;

  // One conserved-excitation block: basis slots as flat state indices, with
  // eigendecomposition of the dense block Hamiltonian.
  struct Block {
    std::vector<int> slots;
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
  };
  mutable std::mutex mutex;
  mutable std::map<int, std::unique_ptr<Block>> blocks;

  int index(int s, int na, int nb) const {
    return (s * (n_a + 1) + na) * (n_b + 1) + nb;
  }

  const Block& block(int E) const {
    {
      std::lock_guard<std::mutex> lock(mutex);
      auto it = blocks.find(E);
      if (it != blocks.end()) return *it->second;
    }
    auto blk = std::make_unique<Block>();
    // Excited slots carry E-1 field quanta, ground slots carry E.
    std::vector<std::pair<int, int>> excited, ground;
    for (int na = 0; na <= n_a; ++na) {
      int nb = E - 1 - na;
      if (nb >= 0 && nb <= n_b) excited.emplace_back(na, nb);
    }
    for (int na = 0; na <= n_a; ++na) {
      int nb = E - na;
      if (nb >= 0 && nb <= n_b) ground.emplace_back(na, nb);
    }
    int dim = static_cast<int>(excited.size() + ground.size());
    std::map<std::pair<int, std::pair<int, int>>, int> pos;
    blk->slots.reserve(dim);
    int row = 0;
    for (auto& [na, nb] : excited) {
      pos[{0, {na, nb}}] = row++;
      blk->slots.push_back(index(0, na, nb));
    }
    for (auto& [na, nb] : ground) {
      pos[{1, {na, nb}}] = row++;
      blk->slots.push_back(index(1, na, nb));
    }

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    int i = 0;
    for (auto& [na, nb] : excited) {
      H(i, i) = params.delta / 2.0;
      auto down_a = pos.find({1, {na + 1, nb}});
      if (na + 1 <= n_a && down_a != pos.end()) {
        double v = params.kappa_a * std::sqrt(double(na + 1));
        H(i, down_a->second) = v;
        H(down_a->second, i) = v;
      }
      auto down_b = pos.find({1, {na, nb + 1}});
      if (nb + 1 <= n_b && down_b != pos.end()) {
        double v = params.kappa_b * std::sqrt(double(nb + 1));
        H(i, down_b->second) = v;
        H(down_b->second, i) = v;
      }
      ++i;
    }
    for (std::size_t k = 0; k < ground.size(); ++k) {
      int j = static_cast<int>(excited.size() + k);
      H(j, j) = -params.delta / 2.0;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    blk->evals = solver.eigenvalues();
    blk->evecs = solver.eigenvectors();

    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = blocks.try_emplace(E, std::move(blk));
    (void)inserted;
    return *it->second;
  }
};

OracleEvolver::OracleEvolver(const ModelParams& params, int n_a, int n_b)
    : impl_(std::make_unique<Impl>()) {
  check_cutoffs(n_a, n_b);
  impl_->params = params;
  impl_->n_a = n_a;
  impl_->n_b = n_b;
}

OracleEvolver::~OracleEvolver() = default;

int OracleEvolver::cutoff_a() const { return impl_->n_a; }
int OracleEvolver::cutoff_b() const { return impl_->n_b; }

TruncatedState OracleEvolver::prepare_excited(
    const std::vector<complex>& cavity_amplitudes,
    const std::vector<complex>& drive_amplitudes) const {
  TruncatedState state;
  state.n_a = impl_->n_a;
  state.n_b = impl_->n_b;
  state.amp.assign(2 * (state.n_a + 1) * (state.n_b + 1), complex{0.0, 0.0});
  int la = std::min<int>(static_cast<int>(cavity_amplitudes.size()),
                         state.n_a + 1);
  int lb = std::min<int>(static_cast<int>(drive_amplitudes.size()),
                         state.n_b + 1);
  for (int na = 0; na < la; ++na) {
    if (cavity_amplitudes[na] == complex{0.0, 0.0}) continue;
    for (int nb = 0; nb < lb; ++nb) {
      state.amp[state.index(0, na, nb)] =
          cavity_amplitudes[na] * drive_amplitudes[nb];
    }
  }
  state.norm_defect = std::abs(1.0 - state.norm_squared());
  return state;
}

TruncatedState OracleEvolver::evolve(const TruncatedState& state,
                                     double t) const {
  if (state.n_a != impl_->n_a || state.n_b != impl_->n_b) {
    throw std::invalid_argument("state cutoffs do not match this evolver");
  }
  TruncatedState out;
  out.n_a = state.n_a;
  out.n_b = state.n_b;
  out.norm_defect = state.norm_defect;
  out.amp.assign(state.amp.size(), complex{0.0, 0.0});

  int e_max = state.n_a + state.n_b + 1;
  for (int E = 0; E <= e_max; ++E) {
    // Gather this block's coefficients; skip empty blocks cheaply.
    const Impl::Block* blk = nullptr;
    bool occupied = false;
    // Cheap occupancy test without forcing an eigendecomposition: scan the
    // candidate slots directly.
    for (int na = 0; na <= state.n_a && !occupied; ++na) {
      int nb = E - 1 - na;
      if (nb >= 0 && nb <= state.n_b &&
          state.amp[state.index(0, na, nb)] != complex{0.0, 0.0}) {
        occupied = true;
      }
      nb = E - na;
      if (nb >= 0 && nb <= state.n_b &&
          state.amp[state.index(1, na, nb)] != complex{0.0, 0.0}) {
        occupied = true;
      }
    }
    if (!occupied) continue;
    blk = &impl_->block(E);

    int dim = static_cast<int>(blk->slots.size());
    Eigen::VectorXcd c(dim);
    for (int i = 0; i < dim; ++i) c(i) = state.amp[blk->slots[i]];
    Eigen::VectorXcd modal = blk->evecs.transpose() * c;
    for (int i = 0; i < dim; ++i) {
      modal(i) *= std::polar(1.0, -blk->evals(i) * t);
    }
    Eigen::VectorXcd evolved = blk->evecs * modal;
    for (int i = 0; i < dim; ++i) out.amp[blk->slots[i]] = evolved(i);
  }

  double drift = std::abs(out.norm_squared() - state.norm_squared());
  if (drift > 1e-8) throw norm_drift_error(drift);
  return out;
}

double oracle_inversion(const TruncatedState& state) {
  int half = (state.n_a + 1) * (state.n_b + 1);
  double s = 0.0;
  for (int i = 0; i < half; ++i) s += std::norm(state.amp[i]);
  for (int i = half; i < 2 * half; ++i) s -= std::norm(state.amp[i]);
  return s;
}

std::vector<complex> reduced_density_a(const TruncatedState& state) {
  int da = state.n_a + 1;
  int db = state.n_b + 1;
  std::vector<complex> rho(static_cast<std::size_t>(da) * da,
                           complex{0.0, 0.0});
  // Cross terms between excitation blocks survive the partial trace, so the
  // contraction runs over the full amplitude tensor.
  for (int s = 0; s < 2; ++s) {
    for (int nb = 0; nb < db; ++nb) {
      for (int na1 = 0; na1 < da; ++na1) {
        complex a1 = state.amp[state.index(s, na1, nb)];
        if (a1 == complex{0.0, 0.0}) continue;
        for (int na2 = 0; na2 < da; ++na2) {
          complex a2 = state.amp[state.index(s, na2, nb)];
          rho[static_cast<std::size_t>(na1) * da + na2] += a1 * std::conj(a2);
        }
      }
    }
  }
  return rho;
}

double oracle_wigner(const std::vector<complex>& rho_a, int dim,
                     complex gamma) {
  if (dim < 1 ||
      rho_a.size() != static_cast<std::size_t>(dim) * dim) {
    throw std::invalid_argument("density matrix size mismatch");
  }
  int order = dim - 1;
  if (std::norm(gamma) > order / 4.0) {
    throw std::invalid_argument(
        "gamma too far out for this cutoff (need |gamma|^2 <= (dim-1)/4)");
  }
  std::vector<complex> d = displacement_matrix(2.0 * gamma, order);
  complex s{0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    double sign = i % 2 == 0 ? 1.0 : -1.0;
    for (int j = 0; j < dim; ++j) {
      s += rho_a[static_cast<std::size_t>(i) * dim + j] * sign *
           d[static_cast<std::size_t>(j) * dim + i];
    }
  }
  return 2.0 * s.real();
}

complex oracle_characteristic(const std::vector<complex>& rho_a, int dim,
                              complex xi) {
  if (dim < 1 ||
      rho_a.size() != static_cast<std::size_t>(dim) * dim) {
    throw std::invalid_argument("density matrix size mismatch");
  }
  int order = dim - 1;
  std::vector<complex> d = displacement_matrix(xi, order);
  complex s{0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      s += rho_a[static_cast<std::size_t>(i) * dim + j] *
           d[static_cast<std::size_t>(j) * dim + i];
    }
  }
  return s;
}

EnsembleResult thermal_ensemble_run(double nbar, complex beta,
                                    const ModelParams& params, double t,
                                    int n_a, int n_b, int n_terms) {
  if (nbar < 0.0) throw std::invalid_argument("nbar must be >= 0");
  if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
  OracleEvolver evolver(params, n_a, n_b);

  CavityState drive_state = CavityState::coherent(beta);
  FockCoefficients cb = fock_coefficients(drive_state, n_b);

  EnsembleResult result;
  double ratio = nbar > 0.0 ? nbar / (1.0 + nbar) : 0.0;
  double w = 1.0 / (1.0 + nbar);
  for (int k = 0; k < n_terms && k <= n_a; ++k) {
    if (w < 1e-14) break;
    result.weights.push_back(w);
    if (nbar == 0.0) break;
    w *= ratio;
  }
  int members = static_cast<int>(result.weights.size());
  result.inversions.assign(members, 0.0);

  parallel_for(members, [&](int k) {
    std::vector<complex> ck(k + 1, complex{0.0, 0.0});
    ck[k] = complex{1.0, 0.0};
    TruncatedState st = evolver.prepare_excited(ck, cb.amplitudes);
    result.inversions[k] = oracle_inversion(evolver.evolve(st, t));
  });

  double wsum = 0.0;
  result.inversion = 0.0;
  for (int k = 0; k < members; ++k) {
    wsum += result.weights[k];
    result.inversion += result.weights[k] * result.inversions[k];
  }
  result.tail_mass = 1.0 - wsum;
  return result;
}

int default_cutoff(double mean_occupation) {
  if (mean_occupation < 0.0) {
    throw std::invalid_argument("mean occupation must be >= 0");
  }
  return static_cast<int>(
      std::ceil(mean_occupation + 8.0 * std::sqrt(mean_occupation) + 10.0));
}

}  // namespace djcm
