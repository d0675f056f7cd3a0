#pragma once

#include <complex>
#include <vector>

#include "djcm/model.hpp"

namespace djcm {

enum class CavityKind { coherent, even_cat, odd_cat, thermal };

struct CavityState {
  CavityKind kind = CavityKind::coherent;
  complex alpha{0.0, 0.0};  // coherent / cat amplitude
  double nbar = 0.0;        // thermal occupation

  static CavityState coherent(complex alpha);
  static CavityState even_cat(complex alpha);
  static CavityState odd_cat(complex alpha);  // rejects alpha == 0
  static CavityState thermal(double nbar);    // rejects nbar < 0
};

struct DriveState {
  complex beta{0.0, 0.0};
};

double mean_photon_number(const CavityState& state);

// Number-basis content over |0..cutoff>. Pure states fill `amplitudes`
// (normalized against the untruncated norm); a thermal state fills diagonal
// `weights`. `tail_mass` is the probability lost to truncation; `truncated`
// flags a tail above 1e-10.
struct FockCoefficients {
  bool mixture = false;
  std::vector<complex> amplitudes;
  std::vector<double> weights;
  double tail_mass = 0.0;
  bool truncated = false;
};

FockCoefficients fock_coefficients(const CavityState& state, int cutoff);

// Complete description of one run, carried on every result object so an
// output file can be regenerated from its metadata alone.
struct RunRecord {
  ModelParams params;
  CavityState cavity;
  DriveState drive;
};

}  // namespace djcm
