#include "ionlink/model.hpp"

#include <cmath>
#include <numbers>

#include "ionlink/operators.hpp"

namespace ionlink {

SpaceLayout protocol_layout() {
  return SpaceLayout{{kFlyingAtom, 2}, {kIon1, 2}, {kIon2, 2}};
}

bool EffectiveParams::canonical(double tolerance) const {
  return std::abs(lambda1 * t_a - std::numbers::pi / 4.0) <= tolerance &&
         std::abs(lambda2 * t_b - std::numbers::pi / 2.0) <= tolerance;
}

EffectiveParams EffectiveParams::canonical_for(double l1, double l2) {
  if (l1 <= 0.0 || l2 <= 0.0)
    throw validation_error("canonical_for: couplings must be positive");
  return EffectiveParams{l1, l2, std::numbers::pi / 4.0 / l1, std::numbers::pi / 2.0 / l2};
}

bool FullModelParams::dispersive_ok() const {
  return delta >= 10.0 * std::max(g_ion, g_fly);
}

bool FullModelParams::sideband_ok() const {
  return delta <= nu / 10.0;
}

double FullModelParams::effective_lambda() const {
  return g_ion * std::exp(-eta * eta / 2.0) * g_fly / delta;
}

SpaceLayout full_model_layout(const FullModelParams& p) {
  if (p.n_field_max < 1 || p.n_vib_max < 1)
    throw validation_error("full_model_layout: truncations must be >= 1");
  return SpaceLayout{
      {kFlyingAtom, 2}, {kIon, 2}, {kField, p.n_field_max + 1}, {kVibration, p.n_vib_max + 1}};
}

double FieldStateSpec::truncated_tail() const {
  switch (kind) {
    case Kind::fock:
      return static_cast<int>(parameter) <= truncation ? 0.0 : 1.0;
    case Kind::thermal: {
      const double nbar = parameter;
      if (nbar <= 0.0) return 0.0;
      // Geometric tail: (nbar/(1+nbar))^(N+1).
      return std::pow(nbar / (1.0 + nbar), truncation + 1);
    }
    case Kind::coherent: {
      const double mean = parameter * parameter;
      double term = std::exp(-mean);
      double cdf = term;
      for (int n = 1; n <= truncation; ++n) {
        term *= mean / n;
        cdf += term;
      }
      return std::max(0.0, 1.0 - cdf);
    }
  }
  return 1.0;
}

ComplexMatrix field_density(const FieldStateSpec& spec) {
  if (spec.truncation < 0) throw validation_error("field_density: negative truncation");
  const int d = spec.truncation + 1;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  switch (spec.kind) {
    case FieldStateSpec::Kind::fock: {
      const int n = static_cast<int>(spec.parameter);
      if (n < 0 || n > spec.truncation)
        throw validation_error("field_density: Fock number outside truncated space");
      rho(n, n) = 1.0;
      return rho;
    }
    case FieldStateSpec::Kind::thermal: {
      const double nbar = spec.parameter;
      if (nbar < 0.0) throw validation_error("field_density: negative thermal occupation");
      double total = 0.0;
      for (int n = 0; n < d; ++n) {
        double p = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
        rho(n, n) = p;
        total += p;
      }
      rho /= total;
      return rho;
    }
    case FieldStateSpec::Kind::coherent: {
      const double alpha = spec.parameter;
      ComplexVector amps(d);
      amps(0) = std::exp(-alpha * alpha / 2.0);
      for (int n = 1; n < d; ++n) amps(n) = amps(n - 1) * alpha / std::sqrt(static_cast<double>(n));
      amps /= amps.norm();
      return amps * amps.adjoint();
    }
  }
  throw validation_error("field_density: unknown field kind");
}

ComplexMatrix effective_hamiltonian(double lambda, const std::string& a, const std::string& b,
                                    const SpaceLayout& layout) {
  if (a == b) throw validation_error("effective_hamiltonian: labels must differ");
  if (layout.dim_of(a) != 2 || layout.dim_of(b) != 2)
    throw validation_error("effective_hamiltonian: both factors must be qubits");
  ComplexMatrix sp_a = embed(sigma_plus(), a, layout);
  ComplexMatrix sm_a = embed(sigma_minus(), a, layout);
  ComplexMatrix sp_b = embed(sigma_plus(), b, layout);
  ComplexMatrix sm_b = embed(sigma_minus(), b, layout);
  return lambda * (sp_a * sm_b + sm_a * sp_b);
}

ComplexMatrix full_hamiltonian(const FullModelParams& p, double omega_qubit, double omega_cavity) {
  SpaceLayout layout = full_model_layout(p);

  ComplexMatrix n_field = embed(number_operator(p.n_field_max), kField, layout);
  ComplexMatrix n_vib = embed(number_operator(p.n_vib_max), kVibration, layout);
  ComplexMatrix sz_f = embed(sigma_z(), kFlyingAtom, layout);
  ComplexMatrix sz_i = embed(sigma_z(), kIon, layout);

  ComplexMatrix h0 = p.nu * n_vib + omega_cavity * n_field +
                     0.5 * omega_qubit * (sz_f + sz_i);

  ComplexMatrix b = embed(annihilation(p.n_field_max), kField, layout);
  ComplexMatrix sp_f = embed(sigma_plus(), kFlyingAtom, layout);
  ComplexMatrix sp_i = embed(sigma_plus(), kIon, layout);

  // cos[eta(a^dag + a)] acts on the vibrational factor only.
  ComplexMatrix cos_factor =
      embed(operator_cosine(p.eta * position_quadrature(p.n_vib_max)), kVibration, layout);

  ComplexMatrix jc_fly = sp_f * b;
  ComplexMatrix jc_ion = cos_factor * sp_i * b;

  ComplexMatrix h_int = p.g_fly * (jc_fly + jc_fly.adjoint().eval()) +
                        p.g_ion * (jc_ion + jc_ion.adjoint().eval());
  return h0 + h_int;
}

StateVector qubit_product_state(const std::map<std::string, bool>& excited,
                                const SpaceLayout& layout) {
  ComplexVector psi = ComplexVector::Ones(1);
  for (int i = 0; i < layout.factor_count(); ++i) {
    const auto& f = layout.factor(i);
    if (f.dim != 2) throw validation_error("qubit_product_state: factor '" + f.label + "' is not a qubit");
    auto it = excited.find(f.label);
    if (it == excited.end())
      throw validation_error("qubit_product_state: no assignment for '" + f.label + "'");
    ComplexVector q = ComplexVector::Zero(2);
    q(it->second ? 0 : 1) = 1.0;
    ComplexVector next(psi.size() * 2);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      next(2 * k) = psi(k) * q(0);
      next(2 * k + 1) = psi(k) * q(1);
    }
    psi = next;
  }
  return StateVector{layout, psi};
}

DensityMatrix build_initial_state(const std::map<std::string, bool>& excited,
                                  const FieldStateSpec& field, const FullModelParams& p) {
  if (field.truncation != p.n_field_max)
    throw validation_error("build_initial_state: field truncation must equal n_field_max");
  if (field.truncated_tail() > tol::truncation_tail)
    throw truncation_error("build_initial_state: field truncation tail exceeds 1e-6; raise n_field_max");

  SpaceLayout layout = full_model_layout(p);
  auto qubit_proj = [&](const std::string& label) {
    auto it = excited.find(label);
    if (it == excited.end())
      throw validation_error("build_initial_state: no electronic assignment for '" + label + "'");
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(it->second ? 0 : 1, it->second ? 0 : 1) = 1.0;
    return m;
  };

  ComplexMatrix vib0 = ComplexMatrix::Zero(p.n_vib_max + 1, p.n_vib_max + 1);
  vib0(0, 0) = 1.0;

  ComplexMatrix rho = kron(kron(qubit_proj(kFlyingAtom), qubit_proj(kIon)),
                           kron(field_density(field), vib0));
  return DensityMatrix{layout, rho};
}

}  // namespace ionlink
