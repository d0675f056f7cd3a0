#include "djcm/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "djcm/errors.hpp"
#include "djcm/parallel.hpp"
#include "pair_series.hpp"

namespace djcm {

using detail::pair_sum;

namespace {

constexpr double kEqualCouplingTol = 1e-12;

struct ModeMix {
  complex Ah, Aah, Bh, Bah;
};

ModeMix mode_mix(const KernelArgs& args, const ModelParams& params) {
  double ea = params.eps_a;
  double eb = params.eps_b;
  ModeMix m;
  m.Ah = ea * args.hol_a + eb * args.hol_b;
  m.Aah = ea * args.antihol_a + eb * args.antihol_b;
  m.Bh = eb * args.hol_a - ea * args.hol_b;
  m.Bah = eb * args.antihol_a - ea * args.antihol_b;
  return m;
}

// Assembly of a +-alpha superposition from its three kernel pieces.
double superposition_value(double Kp, double Km, double KK, double lam,
                           bool even) {
  double e2 = std::exp(-2.0 * lam);
  return even ? (Kp + Km + e2 * KK) / (2.0 * (1.0 + e2))
              : (Kp + Km - e2 * KK) / (2.0 * (1.0 - e2));
}

// Full complex total of the simplified equal-coupling sum; the imaginary
// part is roundoff for physical labels.
complex equal_total(const KernelArgs& args, const ModelParams& params,
                    complex gamma, double t, int ell) {
  if (std::abs(params.eps_a - params.eps_b) > kEqualCouplingTol) {
    throw std::invalid_argument(
        "simplified kernel form requires equal mode couplings");
  }
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");

  complex X = args.hol_a + args.hol_b;
  complex Xb = args.antihol_a + args.antihol_b;
  complex Y = 2.0 * gamma - (args.hol_a - args.hol_b);
  complex Yb = 2.0 * std::conj(gamma) - (args.antihol_a - args.antihol_b);
  complex YYb = Y * Yb;

  std::vector<complex> F, G;
  evolution_tables(ell, params, t, F, G);

  complex O0 = std::sqrt(2.0) * std::exp(-0.25 * (X * Xb + YYb));
  std::vector<complex> Om(ell + 1), Obm(ell + 1);
  Om[0] = Obm[0] = O0;
  complex base = X * Yb;
  complex baseb = Xb * Y;
  for (int m = 1; m <= ell; ++m) {
    Om[m] = Om[m - 1] * base / (2.0 * m);
    Obm[m] = Obm[m - 1] * baseb / (2.0 * m);
  }

  complex tot{0.0, 0.0};
  for (int m = 0; m <= ell; ++m) {
    complex acc{0.0, 0.0};
    for (int mp = 0; mp <= ell; ++mp) {
      complex R = F[m] * std::conj(F[mp]) +
                  0.5 * YYb * G[m] * std::conj(G[mp]) /
                      std::sqrt(double(m + 1) * double(mp + 1));
      acc += Obm[mp] * R;
    }
    tot += Om[m] * acc;
  }
  return tot;
}

KernelArgs flipped_sign(const KernelArgs& args) {
  return KernelArgs{-args.hol_a, -args.antihol_a, args.hol_b, args.antihol_b};
}

KernelArgs continuation_args(complex alpha, complex beta) {
  return KernelArgs{alpha, -std::conj(alpha), beta, std::conj(beta)};
}

}  // namespace

void PhaseGrid::validate() const {
  if (n_q < 2 || n_p < 2) {
    throw std::invalid_argument("phase grid needs at least 2 points per axis");
  }
  if (!(q_max > q_min) || !(p_max > p_min)) {
    throw std::invalid_argument("phase grid needs max > min on both axes");
  }
}

double PhaseGrid::q_at(int iq) const {
  return q_min + (q_max - q_min) * iq / (n_q - 1);
}

double PhaseGrid::p_at(int ip) const {
  return p_min + (p_max - p_min) * ip / (n_p - 1);
}

KernelArgs KernelArgs::physical(complex alpha_a, complex alpha_b) {
  return KernelArgs{alpha_a, std::conj(alpha_a), alpha_b, std::conj(alpha_b)};
}

complex char_kernel(const KernelArgs& args, const ModelParams& params,
                    complex xi, double t, int terms) {
  ModeMix mm = mode_mix(args, params);
  complex u = params.eps_a * xi;
  complex v = -params.eps_a * std::conj(xi);
  complex S = pair_sum(u, v, complex{0.0, 0.0}, complex{1.0, 0.0}, mm.Ah,
                       mm.Aah, params, t, terms);
  complex pref =
      std::exp(-0.5 * xi * std::conj(xi) +
               params.eps_b * (xi * mm.Bah - std::conj(xi) * mm.Bh) -
               mm.Ah * mm.Aah);
  complex value = pref * S;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw convergence_error("characteristic kernel produced non-finite value");
  }
  return value;
}

complex wigner_kernel(const KernelArgs& args, const ModelParams& params,
                      complex gamma, double t, int terms) {
  double ea = params.eps_a;
  double eb = params.eps_b;
  ModeMix mm = mode_mix(args, params);
  complex gh = gamma - eb * mm.Bh;
  complex gah = std::conj(gamma) - eb * mm.Bah;
  complex u = 2.0 * ea * gh;
  complex v = 2.0 * ea * gah;
  complex c{eb * eb - ea * ea, 0.0};
  complex S =
      pair_sum(u, v, complex{0.0, 0.0}, c, mm.Ah, mm.Aah, params, t, terms);
  complex pref = 2.0 * std::exp(-2.0 * gh * gah - mm.Ah * mm.Aah);
  complex value = pref * S;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw convergence_error("phase-space kernel produced non-finite value");
  }
  return value;
}

double wigner_kernel_equal(const KernelArgs& args, const ModelParams& params,
                           complex gamma, double t, int ell) {
  return equal_total(args, params, gamma, t, ell).real();
}

double cross_kernel(complex alpha, complex beta, const ModelParams& params,
                    complex gamma, double t, int terms) {
  complex K =
      wigner_kernel(continuation_args(alpha, beta), params, gamma, t, terms);
  return 2.0 * K.real();
}

double wigner_coherent(complex alpha, complex beta, const ModelParams& params,
                       complex gamma, double t) {
  return wigner_kernel(KernelArgs::physical(alpha, beta), params, gamma, t)
      .real();
}

double wigner_even(complex alpha, complex beta, const ModelParams& params,
                   complex gamma, double t) {
  double lam = std::norm(alpha);
  double Kp =
      wigner_kernel(KernelArgs::physical(alpha, beta), params, gamma, t).real();
  double Km =
      wigner_kernel(KernelArgs::physical(-alpha, beta), params, gamma, t)
          .real();
  double KK = cross_kernel(alpha, beta, params, gamma, t);
  return superposition_value(Kp, Km, KK, lam, true);
}

double wigner_odd(complex alpha, complex beta, const ModelParams& params,
                  complex gamma, double t) {
  if (std::abs(alpha) == 0.0) {
    throw std::invalid_argument("odd superposition needs alpha != 0");
  }
  double lam = std::norm(alpha);
  double Kp =
      wigner_kernel(KernelArgs::physical(alpha, beta), params, gamma, t).real();
  double Km =
      wigner_kernel(KernelArgs::physical(-alpha, beta), params, gamma, t)
          .real();
  double KK = cross_kernel(alpha, beta, params, gamma, t);
  return superposition_value(Kp, Km, KK, lam, false);
}

WignerSurface wigner_surface(const CavityState& cavity, const DriveState& drive,
                             const ModelParams& params, double t,
                             const PhaseGrid& grid, int ell) {
  grid.validate();
  if (cavity.kind == CavityKind::thermal) {
    throw std::invalid_argument(
        "phase-space surfaces are not available for thermal cavities");
  }
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");

  bool equal_form =
      ell > 0 && std::abs(params.eps_a - params.eps_b) <= kEqualCouplingTol;
  bool is_cat = cavity.kind != CavityKind::coherent;
  bool even = cavity.kind == CavityKind::even_cat;
  complex alpha = cavity.alpha;
  complex beta = drive.beta;
  double lam = std::norm(alpha);

  WignerSurface surface;
  surface.grid = grid;
  surface.meta = RunRecord{params, cavity, drive};
  surface.t = t;
  surface.ell_used = ell;
  int total = grid.n_q * grid.n_p;
  surface.values.assign(total, 0.0);
  std::vector<double> residues(total, 0.0);

  parallel_for(total, [&](int idx) {
    int iq = idx / grid.n_p;
    int ip = idx % grid.n_p;
    complex gamma{grid.q_at(iq) / std::sqrt(2.0),
                  grid.p_at(ip) / std::sqrt(2.0)};

    auto eval = [&](const KernelArgs& args) -> complex {
      return equal_form ? equal_total(args, params, gamma, t, ell)
                        : wigner_kernel(args, params, gamma, t, ell);
    };

    double value;
    double residue;
    if (!is_cat) {
      complex K = eval(KernelArgs::physical(alpha, beta));
      value = K.real();
      residue = std::abs(K.imag());
    } else {
      complex Kp = eval(KernelArgs::physical(alpha, beta));
      complex Km = eval(flipped_sign(KernelArgs::physical(alpha, beta)));
      double KK = 2.0 * eval(continuation_args(alpha, beta)).real();
      value = superposition_value(Kp.real(), Km.real(), KK, lam, even);
      residue = std::max(std::abs(Kp.imag()), std::abs(Km.imag()));
    }
    surface.values[idx] = value;
    residues[idx] = residue;
  });

  surface.min_value = surface.values[0];
  surface.max_value = surface.values[0];
  surface.max_imag_residue = 0.0;
  for (int idx = 0; idx < total; ++idx) {
    surface.min_value = std::min(surface.min_value, surface.values[idx]);
    surface.max_value = std::max(surface.max_value, surface.values[idx]);
    surface.max_imag_residue =
        std::max(surface.max_imag_residue, residues[idx]);
  }
  if (std::max(std::abs(surface.min_value), std::abs(surface.max_value)) >
      2.0 + 1e-9) {
    throw convergence_error("surface value outside the quasiprobability bound");
  }
  if (surface.max_imag_residue > 1e-9) {
    throw convergence_error("surface imaginary residue above 1e-9");
  }
  return surface;
}

}  // namespace djcm
