#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ionlink/dynamics.hpp"
#include "ionlink/model.hpp"

namespace ionlink {

struct SweepAxis {
  std::string parameter;  // gamma, gamma_p, t_flight, lambda1, lambda2, t_a, t_b
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  bool log_scale = false;

  std::vector<double> values() const;
};

struct OracleConfig {
  bool enabled = false;
  int samples = 2000;
  std::uint64_t seed = 1;
};

struct OutputConfig {
  std::string format = "json";  // json | csv
  std::string path;             // empty = stdout
};

struct FullModelSection {
  FullModelParams params;
  double omega_qubit = 0.0;
  std::vector<FieldStateSpec> field_states;
  int grid_points = 600;
};

struct ScenarioConfig {
  EffectiveParams protocol;
  ChannelSpec channel;
  FlightMode mode = FlightMode::analytic_noisy;
  bool allow_noncanonical_times = false;
  std::optional<FullModelSection> full_model;
  std::vector<SweepAxis> sweep;
  OracleConfig oracle;
  OutputConfig output;
};

// Parses and validates a scenario file (JSON). Throws config_error naming
// the offending key.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& json_text);

// Sets the named protocol/channel parameter; throws config_error for names
// that are not sweepable.
void apply_parameter(ScenarioConfig& config, const std::string& name, double value);

}  // namespace ionlink
