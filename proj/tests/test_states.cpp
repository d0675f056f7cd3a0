#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "djcm/states.hpp"

using namespace djcm;

TEST_CASE("mean photon numbers of the supported families") {
  CHECK(std::abs(mean_photon_number(CavityState::even_cat(1.0)) - 0.762) <=
        1e-3);
  CHECK(std::abs(mean_photon_number(CavityState::odd_cat(1.0)) - 1.313) <=
        1e-3);
  CHECK(mean_photon_number(CavityState::coherent(2.0)) ==
        doctest::Approx(4.0).epsilon(1e-15));
  CHECK(mean_photon_number(CavityState::coherent(5.0)) ==
        doctest::Approx(25.0).epsilon(1e-15));
  CHECK(mean_photon_number(CavityState::thermal(0.7)) == 0.7);

  // Exact closed forms behind the quoted figures.
  CHECK(mean_photon_number(CavityState::even_cat(1.0)) ==
        doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
  CHECK(mean_photon_number(CavityState::odd_cat(1.0)) ==
        doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-15));
}

TEST_CASE("degenerate constructions are rejected") {
  CHECK_THROWS_AS(CavityState::odd_cat(0.0), std::invalid_argument);
  CHECK_THROWS_AS(CavityState::even_cat(0.0), std::invalid_argument);
  CHECK_THROWS_AS(CavityState::thermal(-0.1), std::invalid_argument);
  CHECK_NOTHROW(CavityState::thermal(0.0));
}

TEST_CASE("number-basis content of pure states") {
  FockCoefficients vac = fock_coefficients(CavityState::coherent(0.0), 4);
  REQUIRE(vac.amplitudes.size() == 5);
  CHECK(vac.amplitudes[0] == complex{1.0, 0.0});
  for (int n = 1; n <= 4; ++n) CHECK(vac.amplitudes[n] == complex{0.0, 0.0});
  CHECK(vac.tail_mass <= 1e-15);
  CHECK(!vac.truncated);

  FockCoefficients even = fock_coefficients(CavityState::even_cat(1.0), 20);
  double total = 0.0;
  for (int n = 0; n <= 20; ++n) {
    if (n % 2 == 1) CHECK(even.amplitudes[n] == complex{0.0, 0.0});
    total += std::norm(even.amplitudes[n]);
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);

  FockCoefficients odd = fock_coefficients(CavityState::odd_cat(1.0), 21);
  for (int n = 0; n <= 21; n += 2) {
    CHECK(odd.amplitudes[n] == complex{0.0, 0.0});
  }

  CHECK_THROWS_AS(fock_coefficients(CavityState::coherent(1.0), 0),
                  std::invalid_argument);
}

TEST_CASE("thermal weights form a geometric distribution") {
  FockCoefficients th = fock_coefficients(CavityState::thermal(1.0), 200);
  REQUIRE(th.mixture);
  REQUIRE(th.weights.size() == 201);
  double sum = 0.0, mean = 0.0;
  for (int n = 0; n <= 200; ++n) {
    sum += th.weights[n];
    mean += n * th.weights[n];
  }
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  CHECK(std::abs(mean - 1.0) <= 1e-9);
  CHECK(th.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(!th.truncated);
}

TEST_CASE("moment consistency between representations") {
  const CavityState states[] = {
      CavityState::coherent(complex{1.1, -0.4}),
      CavityState::even_cat(complex{0.8, 0.6}),
      CavityState::odd_cat(1.0),
  };
  for (const CavityState& s : states) {
    FockCoefficients fc = fock_coefficients(s, 80);
    double mean = 0.0;
    for (int n = 0; n <= 80; ++n) mean += n * std::norm(fc.amplitudes[n]);
    CHECK(std::abs(mean - mean_photon_number(s)) <= 1e-9);
  }

  FockCoefficients th = fock_coefficients(CavityState::thermal(0.5), 300);
  double mean = 0.0;
  for (int n = 0; n <= 300; ++n) mean += n * th.weights[n];
  CHECK(std::abs(mean - 0.5) <= 1e-9);
}

TEST_CASE("truncation below the captured-norm bar is flagged") {
  FockCoefficients tight = fock_coefficients(CavityState::coherent(3.0), 4);
  CHECK(tight.truncated);
  CHECK(tight.tail_mass > 1e-10);

  FockCoefficients roomy = fock_coefficients(CavityState::coherent(3.0), 60);
  CHECK(!roomy.truncated);
  CHECK(std::abs(roomy.tail_mass) <= 1e-10);
}
