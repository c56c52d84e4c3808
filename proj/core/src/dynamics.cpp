#include "ionlink/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ionlink/operators.hpp"

namespace ionlink {

FlightMode flight_mode_from_string(const std::string& s) {
  if (s == "ideal") return FlightMode::ideal;
  if (s == "analytic-noisy") return FlightMode::analytic_noisy;
  if (s == "numeric-noisy") return FlightMode::numeric_noisy;
  throw validation_error("unknown flight mode '" + s + "'");
}

std::string to_string(FlightMode mode) {
  switch (mode) {
    case FlightMode::ideal: return "ideal";
    case FlightMode::analytic_noisy: return "analytic-noisy";
    case FlightMode::numeric_noisy: return "numeric-noisy";
  }
  return "?";
}

double ProtocolResult::checkpoint(const std::string& label) const {
  for (const auto& c : checkpoints)
    if (c.label == label) return c.fidelity;
  throw validation_error("unknown checkpoint '" + label + "'");
}

DensityMatrix evolve_unitary(const DensityMatrix& rho, const ComplexMatrix& h, double t) {
  if (h.rows() != rho.matrix.rows())
    throw validation_error("evolve_unitary: dimension mismatch");
  if (t == 0.0) return rho;
  ComplexMatrix u = expm_hermitian_generator(h, t);
  return DensityMatrix{rho.layout, u * rho.matrix * u.adjoint()};
}

StateVector evolve_unitary(const StateVector& psi, const ComplexMatrix& h, double t) {
  if (h.rows() != psi.amplitudes.size())
    throw validation_error("evolve_unitary: dimension mismatch");
  if (t == 0.0) return psi;
  return StateVector{psi.layout, expm_hermitian_generator(h, t) * psi.amplitudes};
}

ComplexMatrix lindblad_generator(double gamma, double gamma_p, const std::string& target,
                                 const SpaceLayout& layout) {
  if (layout.dim_of(target) != 2)
    throw validation_error("lindblad_generator: target '" + target + "' is not a qubit");
  const int d = layout.total_dim();
  ComplexMatrix sm = embed(sigma_minus(), target, layout);
  ComplexMatrix sp = embed(sigma_plus(), target, layout);
  ComplexMatrix sz = embed(sigma_z(), target, layout);
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix pop = sp * sm;

  // vec(A rho B) = (B^T (x) A) vec(rho), column-stacking convention.
  ComplexMatrix gen =
      (gamma / 2.0) * (2.0 * kron(sp.transpose(), sm) - kron(id, pop) - kron(pop.transpose(), id)) +
      (gamma_p / 2.0) * (kron(sz.transpose(), sz) - kron(id, id));
  return gen;
}

ComplexMatrix flight_generator(const ChannelSpec& spec, const std::string& target,
                               const SpaceLayout& layout) {
  if (spec.gamma < 0.0 || spec.gamma_p < 0.0)
    throw validation_error("flight_generator: rates must be nonnegative");
  return lindblad_generator(spec.gamma, spec.gamma_p + spec.gamma / 2.0, target, layout);
}

DensityMatrix integrate_master_equation(const DensityMatrix& rho0, const ComplexMatrix& generator,
                                        double t, double dt) {
  const int d = rho0.layout.total_dim();
  if (generator.rows() != d * d || generator.cols() != d * d)
    throw validation_error("integrate_master_equation: generator size mismatch");
  if (t == 0.0) return rho0;
  if (dt <= 0.0 || dt > t)
    throw validation_error("integrate_master_equation: require 0 < dt <= t");

  const int steps = std::max(1, static_cast<int>(std::llround(t / dt)));
  const double h = t / steps;

  ComplexVector v = Eigen::Map<const ComplexVector>(rho0.matrix.data(), d * d);
  ComplexVector k1(d * d), k2(d * d), k3(d * d), k4(d * d);
  for (int s = 0; s < steps; ++s) {
    k1 = generator * v;
    k2 = generator * (v + (h / 2.0) * k1);
    k3 = generator * (v + (h / 2.0) * k2);
    k4 = generator * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  ComplexMatrix m = Eigen::Map<ComplexMatrix>(v.data(), d, d);
  m = ((m + m.adjoint()) / 2.0).eval();

  const double drift = std::abs(m.trace().real() - rho0.trace_real());
  if (drift > 1e-9)
    throw numerical_error("integrate_master_equation: trace drift " + std::to_string(drift) +
                          "; try a smaller dt");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.eigenvalues().minCoeff() < -1e-6)
    throw numerical_error("integrate_master_equation: negativity beyond 1e-6; try a smaller dt");
  return DensityMatrix{rho0.layout, m};
}

DensityMatrix apply_flight_channel(const DensityMatrix& rho, const ChannelSpec& spec,
                                   const std::string& target) {
  const SpaceLayout& layout = rho.layout;
  if (layout.dim_of(target) != 2)
    throw validation_error("apply_flight_channel: target '" + target + "' is not a qubit");
  const int pos = layout.index_of(target);
  const int d = layout.total_dim();

  // Stride and block count for the target digit.
  int stride = 1;
  for (int i = layout.factor_count() - 1; i > pos; --i) stride *= layout.factor(i).dim;

  auto digit = [&](int idx) { return (idx / stride) % 2; };

  const double surv = std::exp(-spec.gamma * spec.t_flight);
  const double coh = std::exp(-(spec.gamma + spec.gamma_p) * spec.t_flight);

  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int di = digit(i), dj = digit(j);
      if (di == 0 && dj == 0) {
        out(i, j) += surv * rho.matrix(i, j);
        // decayed weight lands on the ground-ground block
        out(i + stride, j + stride) += (1.0 - surv) * rho.matrix(i, j);
      } else if (di != dj) {
        out(i, j) += coh * rho.matrix(i, j);
      } else {
        out(i, j) += rho.matrix(i, j);
      }
    }
  }
  return DensityMatrix{layout, out};
}

StateVector bell_state() {
  SpaceLayout layout{{kIon1, 2}, {kIon2, 2}};
  ComplexVector amps = ComplexVector::Zero(4);
  amps(1) = 1.0 / std::numbers::sqrt2;  // |e1 g2>
  amps(2) = 1.0 / std::numbers::sqrt2;  // |g1 e2>
  return StateVector{layout, amps};
}

StateVector state_after_cavity_a() {
  SpaceLayout layout = protocol_layout();
  ComplexVector amps = ComplexVector::Zero(8);
  amps(3) = 1.0 / std::numbers::sqrt2;                 // |ef g1 g2>
  amps(5) = Complex(0.0, -1.0 / std::numbers::sqrt2);  // |gf e1 g2>
  return StateVector{layout, amps};
}

StateVector protocol_initial_state() {
  return qubit_product_state({{kFlyingAtom, true}, {kIon1, false}, {kIon2, false}},
                             protocol_layout());
}

DensityMatrix analytic_channel_output(const ChannelSpec& spec) {
  return apply_flight_channel(projector(state_after_cavity_a()), spec, kFlyingAtom);
}

DensityMatrix analytic_final_state(const ChannelSpec& spec) {
  const double a = std::exp(-spec.gamma * spec.t_flight);
  const double c = std::exp(-(spec.gamma + spec.gamma_p) * spec.t_flight);
  SpaceLayout layout{{kIon1, 2}, {kIon2, 2}};
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  // basis: 0 |e1 e2>, 1 |e1 g2>, 2 |g1 e2>, 3 |g1 g2>
  m(1, 1) = 0.5;
  m(1, 2) = 0.5 * c;
  m(2, 1) = 0.5 * c;
  m(2, 2) = 0.5 * a;
  m(3, 3) = 0.5 * (1.0 - a);
  return DensityMatrix{layout, m};
}

ProtocolResult run_protocol(const EffectiveParams& eff, const ChannelSpec& spec, FlightMode mode,
                            int rk4_steps) {
  if (eff.lambda1 < 0.0 || eff.lambda2 < 0.0 || eff.t_a < 0.0 || eff.t_b < 0.0)
    throw validation_error("run_protocol: couplings and times must be nonnegative");
  SpaceLayout layout = protocol_layout();

  DensityMatrix rho = projector(protocol_initial_state());

  ComplexMatrix h_a = effective_hamiltonian(eff.lambda1, kFlyingAtom, kIon1, layout);
  DensityMatrix after_a = evolve_unitary(rho, h_a, eff.t_a);

  DensityMatrix after_flight = after_a;
  switch (mode) {
    case FlightMode::ideal:
      break;
    case FlightMode::analytic_noisy:
      after_flight = apply_flight_channel(after_a, spec, kFlyingAtom);
      break;
    case FlightMode::numeric_noisy: {
      if (spec.t_flight > 0.0) {
        ComplexMatrix gen = flight_generator(spec, kFlyingAtom, layout);
        after_flight =
            integrate_master_equation(after_a, gen, spec.t_flight, spec.t_flight / rk4_steps);
      }
      break;
    }
  }

  ComplexMatrix h_b = effective_hamiltonian(eff.lambda2, kFlyingAtom, kIon2, layout);
  DensityMatrix after_b = evolve_unitary(after_flight, h_b, eff.t_b);

  DensityMatrix fly_marginal = partial_trace(after_b, {kFlyingAtom});
  DensityMatrix final_state = partial_trace(after_b, {kIon1, kIon2});

  ProtocolResult result;
  result.state_after_a = after_a;
  result.state_after_flight = after_flight;
  result.final_two_ion_state = final_state;
  result.checkpoints.push_back({"after_cavity_a", fidelity_to_pure(after_a, state_after_cavity_a())});
  result.checkpoints.push_back({"flying_atom_ground", fly_marginal.matrix(1, 1).real()});
  result.checkpoints.push_back({"fidelity_to_bell", fidelity_to_pure(final_state, bell_state())});
  return result;
}

namespace {

// Pure-state propagation in the eigenbasis of a fixed Hamiltonian.
class SpectralEvolver {
 public:
  SpectralEvolver(const EigResult& eig, const ComplexVector& psi0)
      : eig_(eig), coeffs_(eig.eigenvectors.adjoint() * psi0) {}

  ComplexVector at(double t) const {
    ComplexVector phased(coeffs_.size());
    for (Eigen::Index k = 0; k < coeffs_.size(); ++k)
      phased(k) = std::exp(Complex(0.0, -eig_.eigenvalues(k) * t)) * coeffs_(k);
    return eig_.eigenvectors * phased;
  }

 private:
  const EigResult& eig_;
  ComplexVector coeffs_;
};

struct ModelIndexing {
  int dim_field, dim_vib;
  int ion_digit(int idx) const { return (idx / (dim_field * dim_vib)) % 2; }
  int field_digit(int idx) const { return (idx / dim_vib) % dim_field; }
  int vib_digit(int idx) const { return idx % dim_vib; }
};

struct Observables {
  double p_ion_excited = 0.0;
  double vib_leakage = 0.0;
  double field_energy = 0.0;
};

Observables observe(const ComplexVector& psi, const ModelIndexing& ix) {
  Observables o;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi(i));
    if (w == 0.0) continue;
    if (ix.ion_digit(static_cast<int>(i)) == 0) o.p_ion_excited += w;
    if (ix.vib_digit(static_cast<int>(i)) != 0) o.vib_leakage += w;
    o.field_energy += w * ix.field_digit(static_cast<int>(i));
  }
  return o;
}

// Weighted pure components of the initial state, one per field eigenvector.
struct Component {
  double weight;
  SpectralEvolver evolver;
};

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 80) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    }
  }
  return (a + b) / 2.0;
}

std::vector<double> excitation_series(const std::vector<Component>& comps,
                                      const ModelIndexing& ix,
                                      const std::vector<double>& t_grid) {
  std::vector<double> p(t_grid.size());
  for (size_t i = 0; i < t_grid.size(); ++i) {
    double v = 0.0;
    for (const auto& c : comps) v += c.weight * observe(c.evolver.at(t_grid[i]), ix).p_ion_excited;
    p[i] = v;
  }
  return p;
}

// Least-squares fit of p(t) ~ A sin^2(omega t) over the whole series. The
// fast dispersive ripples at the detuning frequency average out, so the fit
// tracks the slow exchange envelope; a peak-picking fit would lock onto the
// ripples instead. Returns a negative value when no exchange is visible.
double fit_exchange_frequency(const std::vector<double>& p, const std::vector<double>& t_grid,
                              double omega_guess) {
  if (omega_guess <= 0.0) return -1.0;
  if (*std::max_element(p.begin(), p.end()) < 1e-4) return -1.0;

  auto residual = [&](double w) {
    double ss = 0.0, ps = 0.0;
    for (size_t i = 0; i < t_grid.size(); ++i) {
      double s = std::sin(w * t_grid[i]);
      s *= s;
      ss += s * s;
      ps += p[i] * s;
    }
    const double a = ss > 0.0 ? std::max(0.0, ps / ss) : 0.0;
    double r = 0.0;
    for (size_t i = 0; i < t_grid.size(); ++i) {
      double s = std::sin(w * t_grid[i]);
      s *= s;
      const double d = p[i] - a * s;
      r += d * d;
    }
    return r;
  };

  const double lo = 0.02 * omega_guess, hi = 3.0 * omega_guess;
  const int scan = 600;
  int best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= scan; ++k) {
    const double r = residual(lo + (hi - lo) * k / scan);
    if (r < best_r) {
      best_r = r;
      best = k;
    }
  }
  const double a = lo + (hi - lo) * std::max(0, best - 1) / scan;
  const double b = lo + (hi - lo) * std::min(scan, best + 1) / scan;
  return golden_max([&](double w) { return -residual(w); }, a, b);
}

}  // namespace

std::vector<double> default_validation_grid(const FullModelParams& p, int points) {
  const double lam = p.effective_lambda();
  double horizon;
  if (lam > 0.0)
    horizon = 1.25 * std::numbers::pi / (2.0 * lam);
  else if (p.nu > 0.0)
    horizon = 20.0 * std::numbers::pi / p.nu;
  else
    horizon = 1.0;
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<size_t>(i)] = horizon * (i + 1) / points;
  return grid;
}

ValidationReport validate_effective_model(const FullModelParams& p, const FieldStateSpec& field,
                                          const std::vector<double>& t_grid, double omega_qubit) {
  if (t_grid.empty()) throw validation_error("validate_effective_model: empty time grid");

  ValidationReport report;
  report.lambda_predicted = p.effective_lambda();
  if (!p.dispersive_ok())
    report.warnings.push_back("dispersive regime violated: delta < 10 * max(g_ion, g_fly)");
  if (!p.sideband_ok())
    report.warnings.push_back("sideband safety violated: delta > nu / 10");

  SpaceLayout layout = full_model_layout(p);
  ComplexMatrix h = full_hamiltonian(p, omega_qubit, omega_qubit + p.delta);
  EigResult eig = hermitian_eig(h);

  const int dim_field = p.n_field_max + 1;
  const int dim_vib = p.n_vib_max + 1;
  ModelIndexing ix{dim_field, dim_vib};

  // |ef, g_ion> (x) field-component (x) |0>_vib, for a given field vector.
  auto initial_with_field = [&](const ComplexVector& field_vec) {
    ComplexVector psi = ComplexVector::Zero(layout.total_dim());
    // f digit 0 (excited), ion digit 1 (ground), vib digit 0
    const int base = (0 * 2 + 1) * dim_field * dim_vib;
    for (int n = 0; n < dim_field; ++n) psi(base + n * dim_vib) = field_vec(n);
    return psi;
  };

  // Decompose the field state into pure components.
  if (field.truncation != p.n_field_max)
    throw validation_error("validate_effective_model: field truncation must equal n_field_max");
  if (field.truncated_tail() > tol::truncation_tail)
    throw truncation_error(
        "validate_effective_model: field truncation tail exceeds 1e-6; raise n_field_max");
  ComplexMatrix rho_field = field_density(field);
  EigResult field_eig = hermitian_eig(rho_field);
  std::vector<Component> comps;
  for (Eigen::Index k = 0; k < field_eig.eigenvalues.size(); ++k) {
    const double w = field_eig.eigenvalues(k);
    if (w < 1e-12) continue;
    comps.push_back(Component{w, SpectralEvolver(eig, initial_with_field(field_eig.eigenvectors.col(k)))});
  }

  // Observables over the grid.
  std::vector<double> p_series(t_grid.size());
  double peak = 0.0, leak = 0.0;
  double e_sum = 0.0, e_sq_sum = 0.0;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    Observables o;
    for (const auto& c : comps) {
      Observables oc = observe(c.evolver.at(t_grid[i]), ix);
      o.p_ion_excited += c.weight * oc.p_ion_excited;
      o.vib_leakage += c.weight * oc.vib_leakage;
      o.field_energy += c.weight * oc.field_energy;
    }
    p_series[i] = o.p_ion_excited;
    peak = std::max(peak, o.p_ion_excited);
    leak = std::max(leak, o.vib_leakage);
    e_sum += o.field_energy;
    e_sq_sum += o.field_energy * o.field_energy;
  }
  const double n = static_cast<double>(t_grid.size());
  report.vibrational_leakage = leak;
  report.field_energy_variance = std::max(0.0, e_sq_sum / n - (e_sum / n) * (e_sum / n));
  report.peak_ion_excitation = peak;

  const double omega = fit_exchange_frequency(p_series, t_grid, report.lambda_predicted);
  if (omega <= 0.0) {
    report.exchange_found = false;
    report.warnings.push_back("no exchange: ion excitation never rises above the noise floor");
    return report;
  }
  report.exchange_found = true;
  report.exchange_frequency = omega;
  report.frequency_deviation =
      std::abs(report.exchange_frequency - report.lambda_predicted) / report.lambda_predicted;

  // Per-Fock-component exchange frequency spread.
  std::vector<double> fock_freqs;
  for (int nph = 0; nph < dim_field; ++nph) {
    if (rho_field(nph, nph).real() < 1e-4) continue;
    ComplexVector fv = ComplexVector::Zero(dim_field);
    fv(nph) = 1.0;
    std::vector<Component> single;
    single.push_back(Component{1.0, SpectralEvolver(eig, initial_with_field(fv))});
    const double w = fit_exchange_frequency(excitation_series(single, ix, t_grid), t_grid,
                                            report.lambda_predicted);
    if (w > 0.0) fock_freqs.push_back(w);
  }
  if (fock_freqs.size() >= 2 && report.lambda_predicted > 0.0) {
    auto [lo, hi] = std::minmax_element(fock_freqs.begin(), fock_freqs.end());
    report.fock_frequency_spread = (*hi - *lo) / report.lambda_predicted;
  }
  return report;
}

}  // namespace ionlink
