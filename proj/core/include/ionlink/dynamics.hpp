#pragma once

#include <string>
#include <vector>

#include "ionlink/linalg.hpp"
#include "ionlink/model.hpp"

namespace ionlink {

// Amplitude and phase damping rates of the flying atom between the cavities.
struct ChannelSpec {
  double gamma = 0.0;    // decay rate, 1/s
  double gamma_p = 0.0;  // dephasing rate, 1/s
  double t_flight = 0.0; // s
};

enum class FlightMode { ideal, analytic_noisy, numeric_noisy };

FlightMode flight_mode_from_string(const std::string& s);
std::string to_string(FlightMode mode);

struct Checkpoint {
  std::string label;
  double fidelity = 0.0;
};

struct ProtocolResult {
  DensityMatrix state_after_a;       // (f, ion1, ion2)
  DensityMatrix state_after_flight;  // (f, ion1, ion2)
  DensityMatrix final_two_ion_state; // (ion1, ion2)
  std::vector<Checkpoint> checkpoints;

  double checkpoint(const std::string& label) const;
};

// Exact unitary step rho -> e^{-iHt} rho e^{iHt}.
DensityMatrix evolve_unitary(const DensityMatrix& rho, const ComplexMatrix& h, double t);
StateVector evolve_unitary(const StateVector& psi, const ComplexMatrix& h, double t);

// Lindblad generator of spontaneous emission (rate gamma) plus sigma_z
// dephasing (coefficient gamma_p / 2) on the target qubit, as a matrix on
// column-stacked density matrices. Coherences of the target decay at
// gamma/2 + gamma_p.
ComplexMatrix lindblad_generator(double gamma, double gamma_p, const std::string& target,
                                 const SpaceLayout& layout);

// Generator of the noisy-flight channel. The dephasing coefficient is
// gamma_p + gamma/2 so that target coherences decay at gamma + gamma_p,
// matching the closed-form channel and the concurrence exp(-(g+gp)t).
ComplexMatrix flight_generator(const ChannelSpec& spec, const std::string& target,
                               const SpaceLayout& layout);

// Fixed-step RK4 integration of d rho / dt = L[rho]. Re-Hermitized once at
// the end; throws numerical_error on trace drift or negativity beyond 1e-6.
DensityMatrix integrate_master_equation(const DensityMatrix& rho0, const ComplexMatrix& generator,
                                        double t, double dt);

// Closed-form action of the flight channel on the target qubit factor:
// excited populations damp by exp(-gamma t), ground gains the difference,
// coherences damp by exp(-(gamma + gamma_p) t).
DensityMatrix apply_flight_channel(const DensityMatrix& rho, const ChannelSpec& spec,
                                   const std::string& target);

// Reference states of the protocol.
StateVector bell_state();             // (|e1 g2> + |g1 e2>)/sqrt(2) on (ion1, ion2)
StateVector state_after_cavity_a();   // (|ef g1> - i |gf e1>)/sqrt(2) (x) |g2>
StateVector protocol_initial_state(); // |ef, g1, g2>

// Three-body state after the noisy flight, on (f, ion1, ion2).
DensityMatrix analytic_channel_output(const ChannelSpec& spec);

// Closed-form final two-ion mixed state of the noisy protocol.
DensityMatrix analytic_final_state(const ChannelSpec& spec);

// Full pipeline: cavity A -> flight channel -> cavity B -> trace out the
// flying atom.
ProtocolResult run_protocol(const EffectiveParams& eff, const ChannelSpec& spec, FlightMode mode,
                            int rk4_steps = 2000);

struct ValidationReport {
  double lambda_predicted = 0.0;
  double exchange_frequency = 0.0;     // fitted from the first excitation maximum
  double frequency_deviation = 0.0;    // relative to lambda_predicted
  double fock_frequency_spread = 0.0;  // relative spread across Fock components
  double vibrational_leakage = 0.0;    // max population outside the vib ground state
  double field_energy_variance = 0.0;  // variance of <b^dag b> over the grid
  double peak_ion_excitation = 0.0;
  bool exchange_found = false;
  std::vector<std::string> warnings;
};

// Simulates the full cavity model from |ef, g_ion> (x) field (x) |0>_vib and
// compares the observed exchange against the dispersive prediction.
ValidationReport validate_effective_model(const FullModelParams& p, const FieldStateSpec& field,
                                          const std::vector<double>& t_grid,
                                          double omega_qubit = 0.0);

// Convenience grid covering slightly more than a quarter exchange period.
std::vector<double> default_validation_grid(const FullModelParams& p, int points = 600);

}  // namespace ionlink
