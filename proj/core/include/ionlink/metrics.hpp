#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "ionlink/dynamics.hpp"
#include "ionlink/linalg.hpp"

namespace ionlink {

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const ComplexMatrix& rho);

// Fully entangled fraction: largest eigenvalue of the real part of rho
// expressed in the magic basis, clamped to [0, 1].
double fully_entangled_fraction(const ComplexMatrix& rho);

// Independent FEF estimate: direct maximization of <Psi|rho|Psi> over
// maximally entangled |Psi> = (U (x) I)|Phi+>, via seeded random multi-start
// plus coordinate refinement. Deterministic for fixed (samples, seed).
double fef_bruteforce_oracle(const ComplexMatrix& rho, int samples, std::uint64_t seed);

// Optimal LQCC teleportation fidelity (2 F + 1) / 3.
double teleportation_fidelity(double fef);

struct MetricsReport {
  double concurrence = 0.0;
  double fef = 0.0;
  double fef_oracle = 0.0;
  double teleport_fidelity = 0.0;
  bool classical_beaten = false;
};

// Metrics of a two-qubit state; the oracle runs with the given budget.
MetricsReport state_metrics(const DensityMatrix& rho, int oracle_samples = 2000,
                            std::uint64_t seed = 1);

// Closed forms for the noisy channel: C = exp(-(g+gp)t) and
// F = (1 + exp(-g t) + 2 exp(-(g+gp)t)) / 4, with the oracle evaluated on
// the corresponding final state.
MetricsReport analytic_channel_metrics(const ChannelSpec& spec, int oracle_samples = 2000,
                                       std::uint64_t seed = 1);

struct BoundResult {
  double t_max = std::numeric_limits<double>::infinity();       // s
  double distance_max = std::numeric_limits<double>::infinity();  // m; infinity if no velocity

  bool finite() const { return std::isfinite(t_max); }
};

// Largest flight time with F_max >= 1/2, solved by bisection on the closed
// form; infinite when gamma = gamma_p = 0.
BoundResult max_flight_time(double gamma, double gamma_p,
                            std::optional<double> velocity = std::nullopt);

}  // namespace ionlink
