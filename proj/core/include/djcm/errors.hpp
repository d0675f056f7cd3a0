#pragma once

#include <stdexcept>
#include <string>

namespace djcm {

// An adaptive series hit its hard term cap before its tail bound was met.
class series_cap_error : public std::runtime_error {
public:
  series_cap_error(double mean_occupation, int cap)
      : std::runtime_error("series cap " + std::to_string(cap) +
                           " exceeded at mean occupation " +
                           std::to_string(mean_occupation)),
        mean_occupation_(mean_occupation), cap_(cap) {}

  double mean_occupation() const noexcept { return mean_occupation_; }
  int cap() const noexcept { return cap_; }

private:
  double mean_occupation_;
  int cap_;
};

// A result violates a physical bound by more than numerical noise; treated as
// a convergence bug rather than something to clamp away.
class convergence_error : public std::runtime_error {
public:
  explicit convergence_error(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

// Oracle evolution lost more norm than its unitarity budget allows.
class norm_drift_error : public std::runtime_error {
public:
  explicit norm_drift_error(double drift)
      : std::runtime_error("state norm drifted by " + std::to_string(drift)),
        drift_(drift) {}

  double drift() const noexcept { return drift_; }

private:
  double drift_;
};

}  // namespace djcm
