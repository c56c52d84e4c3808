#include "ionlink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ionlink/operators.hpp"

namespace ionlink {

namespace {

void check_two_qubit(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw validation_error("metric requires a 4x4 two-qubit density matrix");
  if (!is_hermitian(rho, tol::hermiticity))
    throw validation_error("metric input is not Hermitian within tolerance");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol::trace_unit)
    throw validation_error("metric input trace differs from 1 beyond tolerance");
}

double clamp_metric(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double concurrence(const ComplexMatrix& rho) {
  check_two_qubit(rho);
  ComplexMatrix yy = kron(sigma_y(), sigma_y());
  ComplexMatrix rho_tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(rho * rho_tilde);
  std::array<double, 4> mu{};
  for (int i = 0; i < 4; ++i)
    mu[static_cast<size_t>(i)] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return clamp_metric(mu[0] - mu[1] - mu[2] - mu[3]);
}

double fully_entangled_fraction(const ComplexMatrix& rho) {
  check_two_qubit(rho);
  // Magic basis columns: |00>+|11>, i(|00>-|11>), i(|01>+|10>), |01>-|10>,
  // all normalized.
  ComplexMatrix magic = ComplexMatrix::Zero(4, 4);
  const double s = 1.0 / std::numbers::sqrt2;
  const Complex is(0.0, 1.0 / std::numbers::sqrt2);
  magic(0, 0) = s;  magic(3, 0) = s;
  magic(0, 1) = is; magic(3, 1) = -is;
  magic(1, 2) = is; magic(2, 2) = is;
  magic(1, 3) = s;  magic(2, 3) = -s;

  ComplexMatrix in_magic = magic.adjoint() * rho * magic;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(in_magic.real());
  return clamp_metric(solver.eigenvalues().maxCoeff());
}

namespace {

// U(theta, a, b) = [[e^{ia} cos t, e^{ib} sin t], [-e^{-ib} sin t, e^{-ia} cos t]]
ComplexVector entangled_candidate(double theta, double a, double b) {
  const double c = std::cos(theta), s = std::sin(theta);
  ComplexMatrix u(2, 2);
  u(0, 0) = std::polar(c, a);
  u(0, 1) = std::polar(s, b);
  u(1, 0) = -std::polar(s, -b);
  u(1, 1) = std::polar(c, -a);
  // (U (x) I) (|00> + |11>)/sqrt(2): amplitudes at |q1 q2>
  ComplexVector psi = ComplexVector::Zero(4);
  const double norm = 1.0 / std::numbers::sqrt2;
  psi(0) = u(0, 0) * norm;  // |00> from |00>
  psi(2) = u(1, 0) * norm;  // |10> from |00>
  psi(1) = u(0, 1) * norm;  // |01> from |11>
  psi(3) = u(1, 1) * norm;  // |11> from |11>
  return psi;
}

}  // namespace

double fef_bruteforce_oracle(const ComplexMatrix& rho, int samples, std::uint64_t seed) {
  check_two_qubit(rho);
  if (samples < 1000) throw validation_error("fef_bruteforce_oracle: samples must be >= 1000");

  auto objective = [&](double theta, double a, double b) {
    ComplexVector psi = entangled_candidate(theta, a, b);
    return (psi.adjoint() * rho * psi)(0, 0).real();
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  double best = -1.0;
  std::array<double, 3> best_x{};
  for (int i = 0; i < samples; ++i) {
    std::array<double, 3> x{angle(rng), angle(rng), angle(rng)};
    double v = objective(x[0], x[1], x[2]);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }

  // Cyclic coordinate descent with shrinking step.
  double step = 0.3;
  while (step > 1e-9) {
    bool improved = false;
    for (int k = 0; k < 3; ++k) {
      for (double sgn : {1.0, -1.0}) {
        std::array<double, 3> x = best_x;
        x[static_cast<size_t>(k)] += sgn * step;
        double v = objective(x[0], x[1], x[2]);
        if (v > best) {
          best = v;
          best_x = x;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  return clamp_metric(best);
}

double teleportation_fidelity(double fef) {
  if (fef < 0.0 || fef > 1.0)
    throw validation_error("teleportation_fidelity: fef outside [0, 1]");
  return (2.0 * fef + 1.0) / 3.0;
}

MetricsReport state_metrics(const DensityMatrix& rho, int oracle_samples, std::uint64_t seed) {
  if (rho.layout.total_dim() != 4)
    throw validation_error("state_metrics: state is not two-qubit");
  MetricsReport r;
  r.concurrence = concurrence(rho.matrix);
  r.fef = fully_entangled_fraction(rho.matrix);
  r.fef_oracle = fef_bruteforce_oracle(rho.matrix, oracle_samples, seed);
  r.teleport_fidelity = teleportation_fidelity(r.fef);
  r.classical_beaten = r.fef >= 0.5;
  return r;
}

MetricsReport analytic_channel_metrics(const ChannelSpec& spec, int oracle_samples,
                                       std::uint64_t seed) {
  const double c = std::exp(-(spec.gamma + spec.gamma_p) * spec.t_flight);
  const double a = std::exp(-spec.gamma * spec.t_flight);
  MetricsReport r;
  r.concurrence = c;
  r.fef = (1.0 + a + 2.0 * c) / 4.0;
  r.fef_oracle = fef_bruteforce_oracle(analytic_final_state(spec).matrix, oracle_samples, seed);
  r.teleport_fidelity = teleportation_fidelity(r.fef);
  r.classical_beaten = r.fef >= 0.5;
  return r;
}

BoundResult max_flight_time(double gamma, double gamma_p, std::optional<double> velocity) {
  if (gamma < 0.0 || gamma_p < 0.0)
    throw validation_error("max_flight_time: rates must be nonnegative");

  BoundResult r;
  if (gamma == 0.0 && gamma_p == 0.0) {
    if (velocity) r.distance_max = std::numeric_limits<double>::infinity();
    return r;
  }

  auto fef_at = [&](double t) {
    return (1.0 + std::exp(-gamma * t) + 2.0 * std::exp(-(gamma + gamma_p) * t)) / 4.0;
  };

  // F(0) = 1; F(t) -> 1/4 as t -> inf, so a root of F - 1/2 always exists.
  double hi = 1.0 / (gamma + gamma_p);
  while (fef_at(hi) > 0.5) hi *= 2.0;
  double lo = 0.0;
  while (hi - lo > 1e-13 * hi) {  // relative tolerance well below 1e-10
    double mid = (lo + hi) / 2.0;
    if (fef_at(mid) > 0.5)
      lo = mid;
    else
      hi = mid;
  }
  r.t_max = (lo + hi) / 2.0;
  if (velocity) r.distance_max = *velocity * r.t_max;
  return r;
}

}  // namespace ionlink
