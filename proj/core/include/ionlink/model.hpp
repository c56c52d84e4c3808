#pragma once

#include <map>
#include <string>

#include "ionlink/linalg.hpp"

namespace ionlink {

// hbar = 1 throughout: frequencies and rates in 1/s, times in s.

inline const char* kFlyingAtom = "f";
inline const char* kIon1 = "ion1";
inline const char* kIon2 = "ion2";
inline const char* kIon = "ion";
inline const char* kField = "field";
inline const char* kVibration = "vib";

// (f, ion1, ion2), each a qubit.
SpaceLayout protocol_layout();

// Effective exchange couplings and transit times for the two cavities.
struct EffectiveParams {
  double lambda1 = 0.0;  // 1/s
  double lambda2 = 0.0;  // 1/s
  double t_a = 0.0;      // s
  double t_b = 0.0;      // s

  // lambda1*t_a == pi/4 and lambda2*t_b == pi/2 within `tolerance`.
  bool canonical(double tolerance = 1e-9) const;
  static EffectiveParams canonical_for(double lambda1, double lambda2);
};

// Parameters of the full ion-atom-cavity model on truncated Fock spaces.
struct FullModelParams {
  double g_ion = 0.0;   // ion-field coupling, 1/s
  double g_fly = 0.0;   // atom-field coupling, 1/s
  double delta = 0.0;   // detuning omega_cavity - omega_qubit, 1/s
  double nu = 0.0;      // trap frequency, 1/s
  double eta = 0.0;     // Lamb-Dicke parameter
  int n_field_max = 10;
  int n_vib_max = 2;

  bool dispersive_ok() const;  // delta >= 10 * max(g_ion, g_fly)
  bool sideband_ok() const;    // delta <= nu / 10

  // Exchange coupling predicted for the full model, with the motional
  // ground-state average of the cosine factor folded into g_ion.
  double effective_lambda() const;
};

// (f, ion, field, vib) with the configured truncations.
SpaceLayout full_model_layout(const FullModelParams& p);

struct FieldStateSpec {
  enum class Kind { fock, thermal, coherent };
  Kind kind = Kind::fock;
  double parameter = 0.0;  // photon number n / mean occupation / |alpha|
  int truncation = 10;     // n_field_max

  // Probability weight lost to truncation before renormalization.
  double truncated_tail() const;
};

// Field density matrix on the truncated space, renormalized to unit trace.
ComplexMatrix field_density(const FieldStateSpec& spec);

// lambda * (sigma+_a sigma-_b + sigma-_a sigma+_b) embedded in `layout`.
// Both labels must name qubit factors.
ComplexMatrix effective_hamiltonian(double lambda, const std::string& a, const std::string& b,
                                    const SpaceLayout& layout);

// H0 + Hint of the single-cavity model on (f, ion, field, vib):
// harmonic field and vibration terms, sigma_z qubit terms, Jaynes-Cummings
// coupling for the flying atom and cos[eta(a^dag + a)]-modulated coupling
// for the ion.
ComplexMatrix full_hamiltonian(const FullModelParams& p, double omega_qubit, double omega_cavity);

// |electronic><electronic| (x) rho_field (x) |0><0|_vib on the full-model
// layout. Throws truncation_error when the field spec discards more than
// tol::truncation_tail weight.
DensityMatrix build_initial_state(const std::map<std::string, bool>& excited,
                                  const FieldStateSpec& field, const FullModelParams& p);

// Pure product state of qubits on an all-qubit layout; excited[label] = true
// puts that factor in |e>.
StateVector qubit_product_state(const std::map<std::string, bool>& excited,
                                const SpaceLayout& layout);

}  // namespace ionlink
