#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ionlink/metrics.hpp"
#include "ionlink/operators.hpp"
#include "test_util.hpp"

using namespace ionlink;
using namespace ionlink::testing;

namespace {

ComplexMatrix bell_density() { return projector(bell_state()).matrix; }

ComplexMatrix ground_product() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(3, 3) = 1.0;  // |g1 g2>
  return m;
}

}  // namespace

TEST_CASE("concurrence of reference states") {
  CHECK(concurrence(bell_density()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(concurrence(ground_product()) == 0.0);
  CHECK(concurrence(ComplexMatrix::Identity(4, 4) / 4.0) == 0.0);

  // channel state at gamma t = ln 2, no dephasing
  ChannelSpec spec{1.0, 0.0, std::log(2.0)};
  CHECK(concurrence(analytic_final_state(spec).matrix) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("fully entangled fraction of reference states") {
  CHECK(fully_entangled_fraction(bell_density()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fully_entangled_fraction(ComplexMatrix::Identity(4, 4) / 4.0) ==
        doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("channel family closed forms on a grid") {
  for (double g : {0.0, 0.4, 0.9, 1.7, 2.0}) {
    for (double gp : {0.0, 0.5, 1.3, 2.0}) {
      for (double t : {0.0, 0.3, 1.0, 2.0}) {
        ChannelSpec spec{g, gp, t};
        ComplexMatrix rho = analytic_final_state(spec).matrix;
        const double c_expected = std::exp(-(g + gp) * t);
        const double f_expected = (1.0 + std::exp(-g * t) + 2.0 * c_expected) / 4.0;
        CHECK(std::abs(concurrence(rho) - c_expected) <= 1e-9);
        CHECK(std::abs(fully_entangled_fraction(rho) - f_expected) <= 1e-9);
      }
    }
  }
}

TEST_CASE("brute-force oracle on trivial states") {
  // |Phi+> = (|00> + |11>)/sqrt(2)
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
  CHECK(fef_bruteforce_oracle(phi * phi.adjoint(), 1000, 42) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fef_bruteforce_oracle(ComplexMatrix::Identity(4, 4) / 4.0, 1000, 42) ==
        doctest::Approx(0.25).epsilon(1e-6));
  CHECK_THROWS_AS(fef_bruteforce_oracle(bell_density(), 10, 42), validation_error);
}

TEST_CASE("oracle agrees with the spectral FEF on the channel family") {
  for (double gt : {0.0, 0.5, 1.0}) {
    for (double gpt : {0.0, 0.5, 1.0}) {
      ChannelSpec spec{gt, gpt, 1.0};
      ComplexMatrix rho = analytic_final_state(spec).matrix;
      double spectral = fully_entangled_fraction(rho);
      double oracle = fef_bruteforce_oracle(rho, 1500, 7);
      CHECK(std::abs(spectral - oracle) <= 1e-4);
      // the search cannot beat the true maximum
      CHECK(oracle <= spectral + 1e-6);
    }
  }
}

TEST_CASE("oracle is deterministic for a fixed seed") {
  ComplexMatrix rho = analytic_final_state({1.0, 0.5, 0.7}).matrix;
  CHECK(fef_bruteforce_oracle(rho, 1200, 99) == fef_bruteforce_oracle(rho, 1200, 99));
}

TEST_CASE("teleportation fidelity conversion") {
  CHECK(teleportation_fidelity(1.0) == 1.0);
  CHECK(teleportation_fidelity(0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(teleportation_fidelity(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(teleportation_fidelity(1.2), validation_error);
  CHECK_THROWS_AS(teleportation_fidelity(-0.1), validation_error);
}

TEST_CASE("analytic channel metrics at landmark points") {
  SUBCASE("no flight time") {
    MetricsReport r = analytic_channel_metrics({1.0, 1.0, 0.0}, 1000, 3);
    CHECK(r.concurrence == 1.0);
    CHECK(r.fef == 1.0);
    CHECK(r.teleport_fidelity == 1.0);
    CHECK(r.classical_beaten);
  }
  SUBCASE("pure amplitude damping at the ln 3 bound") {
    MetricsReport r = analytic_channel_metrics({200.0, 0.0, std::log(3.0) / 200.0}, 1000, 3);
    CHECK(r.fef == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.teleport_fidelity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.classical_beaten);
  }
  SUBCASE("equal damping and dephasing at the ln 2 bound") {
    const double g = 1.0;
    MetricsReport r = analytic_channel_metrics({g, g, std::log(2.0) / g}, 1000, 3);
    CHECK(r.fef == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("metrics are invariant under local unitaries") {
  std::mt19937_64 rng(51);
  ComplexMatrix rho = analytic_final_state({1.0, 0.3, 0.6}).matrix;
  const double c0 = concurrence(rho);
  const double f0 = fully_entangled_fraction(rho);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    ComplexMatrix rotated = u * rho * u.adjoint();
    CHECK(std::abs(concurrence(rotated) - c0) <= 1e-8);
    CHECK(std::abs(fully_entangled_fraction(rotated) - f0) <= 1e-8);
  }
}

TEST_CASE("concurrence and FEF decrease with flight time") {
  double prev_c = 2.0, prev_f = 2.0;
  for (int i = 0; i <= 10; ++i) {
    ChannelSpec spec{1.0, 0.5, 0.2 * i};
    ComplexMatrix rho = analytic_final_state(spec).matrix;
    double c = concurrence(rho);
    double f = fully_entangled_fraction(rho);
    CHECK(c < prev_c);
    CHECK(f < prev_f);
    prev_c = c;
    prev_f = f;
  }
}

TEST_CASE("max_flight_time closed-form shortcuts") {
  SUBCASE("pure amplitude damping: ln 3 / gamma") {
    BoundResult b = max_flight_time(200.0, 0.0, 300.0);
    CHECK(std::abs(b.t_max - std::log(3.0) / 200.0) / b.t_max <= 1e-10);
    CHECK(b.t_max == doctest::Approx(5.493e-3).epsilon(1e-4));
    CHECK(b.distance_max == doctest::Approx(1.6479).epsilon(1e-3));
  }
  SUBCASE("equal rates: ln 2 / gamma") {
    BoundResult b = max_flight_time(1.0, 1.0);
    CHECK(std::abs(b.t_max - std::log(2.0)) <= 1e-10);
  }
  SUBCASE("noiseless channel never expires") {
    BoundResult b = max_flight_time(0.0, 0.0, 300.0);
    CHECK_FALSE(b.finite());
    CHECK(std::isinf(b.distance_max));
  }
  SUBCASE("FEF at the bound is exactly 1/2") {
    BoundResult b = max_flight_time(3.0, 0.7);
    const double f =
        (1.0 + std::exp(-3.0 * b.t_max) + 2.0 * std::exp(-3.7 * b.t_max)) / 4.0;
    CHECK(std::abs(f - 0.5) <= 1e-9);
  }
  CHECK_THROWS_AS(max_flight_time(-1.0, 0.0), validation_error);
}

TEST_CASE("state_metrics report invariants") {
  DensityMatrix rho = analytic_final_state({1.0, 0.0, std::log(3.0)});
  MetricsReport r = state_metrics(rho, 1500, 5);
  CHECK(std::abs(r.fef - r.fef_oracle) <= 1e-4);
  CHECK(r.teleport_fidelity == (2.0 * r.fef + 1.0) / 3.0);
  CHECK(r.classical_beaten == (r.fef >= 0.5));
  CHECK(r.fef == doctest::Approx(0.5).epsilon(1e-10));
}
