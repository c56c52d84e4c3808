// ionlink command line front end: protocol simulation, parameter sweeps,
// full-model validation and flight-time bound tables.

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ionlink/dynamics.hpp"
#include "ionlink/metrics.hpp"
#include "ionlink/scenario.hpp"

namespace {

using namespace ionlink;

// --- deterministic number formatting -------------------------------------

std::string fmt_double(double x, int digits) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string json_number(double x) {
  // JSON has no inf literal; emit a string sentinel instead.
  if (std::isinf(x) || std::isnan(x)) return "\"" + fmt_double(x, 17) + "\"";
  return fmt_double(x, 17);
}

std::string csv_number(double x) { return fmt_double(x, 12); }

// Minimal JSON emitter with stable key order and 17-significant-digit
// numbers, so identical runs produce byte-identical files.
class JsonWriter {
 public:
  JsonWriter& begin_object() { open("{"); return *this; }
  JsonWriter& end_object() { close("}"); return *this; }
  JsonWriter& begin_array() { open("["); return *this; }
  JsonWriter& end_array() { close("]"); return *this; }

  JsonWriter& key(const std::string& k) {
    sep();
    out_ << '"' << k << "\":";
    pending_value_ = true;
    return *this;
  }
  JsonWriter& value(double v) { raw(json_number(v)); return *this; }
  JsonWriter& value(bool v) { raw(v ? "true" : "false"); return *this; }
  JsonWriter& value(const std::string& v) { raw("\"" + v + "\""); return *this; }
  JsonWriter& value_raw(const std::string& v) { raw(v); return *this; }

  std::string str() const { return out_.str(); }

 private:
  void sep() {
    if (need_comma_) out_ << ',';
    need_comma_ = false;
  }
  void open(const char* c) {
    if (!pending_value_) sep();
    pending_value_ = false;
    out_ << c;
    need_comma_ = false;
  }
  void close(const char* c) {
    out_ << c;
    need_comma_ = true;
    pending_value_ = false;
  }
  void raw(const std::string& s) {
    if (!pending_value_) sep();
    pending_value_ = false;
    out_ << s;
    need_comma_ = true;
  }
  std::ostringstream out_;
  bool need_comma_ = false;
  bool pending_value_ = false;
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

// --- shared evaluation path ----------------------------------------------

struct PointMetrics {
  double concurrence = 0.0;
  double fef = 0.0;
  std::optional<double> fef_oracle;
  double teleport_fidelity = 0.0;
  bool classical_beaten = false;
  double fidelity_to_bell = 0.0;
};

struct PointResult {
  ProtocolResult protocol;
  PointMetrics metrics;
};

PointResult evaluate_point(const ScenarioConfig& config) {
  PointResult r;
  r.protocol = run_protocol(config.protocol, config.channel, config.mode);
  const DensityMatrix& final_state = r.protocol.final_two_ion_state;
  r.metrics.concurrence = concurrence(final_state.matrix);
  r.metrics.fef = fully_entangled_fraction(final_state.matrix);
  if (config.oracle.enabled)
    r.metrics.fef_oracle =
        fef_bruteforce_oracle(final_state.matrix, config.oracle.samples, config.oracle.seed);
  r.metrics.teleport_fidelity = teleportation_fidelity(r.metrics.fef);
  r.metrics.classical_beaten = r.metrics.fef >= 0.5;
  r.metrics.fidelity_to_bell = r.protocol.checkpoint("fidelity_to_bell");
  return r;
}

void append_metric_header(std::ostringstream& out, bool with_oracle) {
  out << "concurrence,fef";
  if (with_oracle) out << ",fef_oracle";
  out << ",teleport_fidelity,fidelity_to_bell";
}

void append_metric_row(std::ostringstream& out, const PointMetrics& m) {
  out << csv_number(m.concurrence) << ',' << csv_number(m.fef);
  if (m.fef_oracle) out << ',' << csv_number(*m.fef_oracle);
  out << ',' << csv_number(m.teleport_fidelity) << ',' << csv_number(m.fidelity_to_bell);
}

void append_metrics_json(JsonWriter& w, const PointMetrics& m) {
  w.key("metrics").begin_object();
  w.key("concurrence").value(m.concurrence);
  w.key("fef").value(m.fef);
  if (m.fef_oracle) w.key("fef_oracle").value(*m.fef_oracle);
  w.key("teleport_fidelity").value(m.teleport_fidelity);
  w.key("classical_beaten").value(m.classical_beaten);
  w.end_object();
}

// --- simulate -------------------------------------------------------------

std::string render_simulate_json(const ScenarioConfig& config, const PointResult& r) {
  JsonWriter w;
  w.begin_object();
  w.key("mode").value(to_string(config.mode));
  w.key("protocol").begin_object();
  w.key("lambda1").value(config.protocol.lambda1);
  w.key("lambda2").value(config.protocol.lambda2);
  w.key("t_a").value(config.protocol.t_a);
  w.key("t_b").value(config.protocol.t_b);
  w.end_object();
  w.key("channel").begin_object();
  w.key("gamma").value(config.channel.gamma);
  w.key("gamma_p").value(config.channel.gamma_p);
  w.key("t_flight").value(config.channel.t_flight);
  w.end_object();
  w.key("checkpoints").begin_object();
  for (const auto& c : r.protocol.checkpoints) w.key(c.label).value(c.fidelity);
  w.end_object();

  const ComplexMatrix& m = r.protocol.final_two_ion_state.matrix;
  w.key("final_state").begin_object();
  w.key("labels").begin_array();
  for (const auto& f : r.protocol.final_two_ion_state.layout.factors()) w.value(f.label);
  w.end_array();
  for (const char* part : {"real", "imag"}) {
    w.key(part).begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      w.begin_array();
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        w.value(part[0] == 'r' ? m(i, j).real() : m(i, j).imag());
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();

  append_metrics_json(w, r.metrics);
  w.end_object();
  return w.str() + "\n";
}

std::string render_simulate_csv(const PointResult& r) {
  std::ostringstream out;
  append_metric_header(out, r.metrics.fef_oracle.has_value());
  out << '\n';
  append_metric_row(out, r.metrics);
  out << '\n';
  return out.str();
}

int cmd_simulate(const ScenarioConfig& config) {
  PointResult r = evaluate_point(config);
  if (config.output.format == "csv")
    write_output(render_simulate_csv(r), config.output.path);
  else
    write_output(render_simulate_json(config, r), config.output.path);
  return 0;
}

// --- sweep ----------------------------------------------------------------

int cmd_sweep(const ScenarioConfig& config) {
  if (config.sweep.empty())
    throw config_error("sweep.axes", "sweep requires at least one axis");

  std::vector<std::vector<double>> axis_values;
  for (const auto& axis : config.sweep) axis_values.push_back(axis.values());

  std::ostringstream csv;
  JsonWriter json;
  const bool as_json = config.output.format == "json";
  if (as_json) {
    json.begin_array();
  } else {
    for (const auto& axis : config.sweep) csv << axis.parameter << ',';
    append_metric_header(csv, config.oracle.enabled);
    csv << '\n';
  }

  // Lexicographic grid order: first axis outermost.
  std::vector<size_t> idx(config.sweep.size(), 0);
  while (true) {
    ScenarioConfig point = config;
    for (size_t a = 0; a < config.sweep.size(); ++a)
      apply_parameter(point, config.sweep[a].parameter, axis_values[a][idx[a]]);
    PointResult r = evaluate_point(point);

    if (as_json) {
      json.begin_object();
      for (size_t a = 0; a < config.sweep.size(); ++a)
        json.key(config.sweep[a].parameter).value(axis_values[a][idx[a]]);
      json.key("concurrence").value(r.metrics.concurrence);
      json.key("fef").value(r.metrics.fef);
      if (r.metrics.fef_oracle) json.key("fef_oracle").value(*r.metrics.fef_oracle);
      json.key("teleport_fidelity").value(r.metrics.teleport_fidelity);
      json.key("fidelity_to_bell").value(r.metrics.fidelity_to_bell);
      json.end_object();
    } else {
      for (size_t a = 0; a < config.sweep.size(); ++a)
        csv << csv_number(axis_values[a][idx[a]]) << ',';
      append_metric_row(csv, r.metrics);
      csv << '\n';
    }

    size_t a = config.sweep.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axis_values[a].size()) break;
      idx[a] = 0;
      if (a == 0) {
        write_output(as_json ? json.end_array().str() + "\n" : csv.str(), config.output.path);
        return 0;
      }
    }
  }
}

// --- validate ---------------------------------------------------------------

const double kFreqDeviationMax = 0.05;
const double kFieldSpreadMax = 0.05;
const double kLeakageMax = 1e-3;
const double kPeakMin = 0.95;

std::string field_kind_name(FieldStateSpec::Kind kind) {
  switch (kind) {
    case FieldStateSpec::Kind::fock: return "fock";
    case FieldStateSpec::Kind::thermal: return "thermal";
    case FieldStateSpec::Kind::coherent: return "coherent";
  }
  return "?";
}

int cmd_validate(const ScenarioConfig& config) {
  if (!config.full_model)
    throw config_error("full_model", "validate requires a full_model section");
  const FullModelSection& fm = *config.full_model;

  std::vector<ValidationReport> reports;
  for (const auto& field : fm.field_states) {
    FullModelParams params = fm.params;
    params.n_field_max = field.truncation;  // per-state truncation override
    std::vector<double> grid = default_validation_grid(params, fm.grid_points);
    reports.push_back(validate_effective_model(params, field, grid, fm.omega_qubit));
  }

  double freq_min = 0.0, freq_max = 0.0;
  bool any_exchange = false;
  for (const auto& r : reports) {
    if (!r.exchange_found) continue;
    if (!any_exchange) {
      freq_min = freq_max = r.exchange_frequency;
      any_exchange = true;
    } else {
      freq_min = std::min(freq_min, r.exchange_frequency);
      freq_max = std::max(freq_max, r.exchange_frequency);
    }
  }
  const double lambda = fm.params.effective_lambda();
  const double cross_spread = (any_exchange && lambda > 0.0) ? (freq_max - freq_min) / lambda : 0.0;

  bool dev_ok = true, leak_ok = true, peak_ok = true, spread_ok = true;
  for (const auto& r : reports) {
    dev_ok = dev_ok && r.exchange_found && r.frequency_deviation <= kFreqDeviationMax;
    leak_ok = leak_ok && r.vibrational_leakage <= kLeakageMax;
    peak_ok = peak_ok && r.peak_ion_excitation >= kPeakMin;
    spread_ok = spread_ok && r.fock_frequency_spread <= kFieldSpreadMax;
  }
  spread_ok = spread_ok && cross_spread <= kFieldSpreadMax;

  JsonWriter w;
  w.begin_object();
  w.key("lambda_predicted").value(lambda);
  w.key("thresholds").begin_object();
  w.key("frequency_deviation").value(kFreqDeviationMax);
  w.key("field_spread").value(kFieldSpreadMax);
  w.key("vibrational_leakage").value(kLeakageMax);
  w.key("peak_ion_excitation").value(kPeakMin);
  w.end_object();
  w.key("field_states").begin_array();
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& field = fm.field_states[i];
    const auto& r = reports[i];
    w.begin_object();
    w.key("kind").value(field_kind_name(field.kind));
    w.key("parameter").value(field.parameter);
    w.key("truncation").value(static_cast<double>(field.truncation));
    w.key("exchange_found").value(r.exchange_found);
    w.key("exchange_frequency").value(r.exchange_frequency);
    w.key("frequency_deviation").value(r.frequency_deviation);
    w.key("fock_frequency_spread").value(r.fock_frequency_spread);
    w.key("vibrational_leakage").value(r.vibrational_leakage);
    w.key("field_energy_variance").value(r.field_energy_variance);
    w.key("peak_ion_excitation").value(r.peak_ion_excitation);
    w.key("warnings").begin_array();
    for (const auto& msg : r.warnings) w.value(msg);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("cross_state_frequency_spread").value(cross_spread);
  w.key("flags").begin_object();
  w.key("frequency_deviation_ok").value(dev_ok);
  w.key("field_spread_ok").value(spread_ok);
  w.key("leakage_ok").value(leak_ok);
  w.key("peak_ok").value(peak_ok);
  w.key("no_exchange").value(!any_exchange);
  w.end_object();
  w.end_object();
  write_output(w.str() + "\n", config.output.path);
  return 0;
}

// --- bounds -----------------------------------------------------------------

int cmd_bounds(const std::vector<double>& gammas, const std::vector<double>& gamma_ps,
               std::optional<double> velocity, const std::string& format,
               const std::string& path) {
  if (format == "csv") {
    std::ostringstream out;
    out << "gamma,gamma_p,t_max";
    if (velocity) out << ",distance_max";
    out << '\n';
    for (double g : gammas) {
      for (double gp : gamma_ps) {
        BoundResult b = max_flight_time(g, gp, velocity);
        out << csv_number(g) << ',' << csv_number(gp) << ',' << csv_number(b.t_max);
        if (velocity) out << ',' << csv_number(b.distance_max);
        out << '\n';
      }
    }
    write_output(out.str(), path);
    return 0;
  }

  JsonWriter w;
  const bool table = gammas.size() > 1 || gamma_ps.size() > 1;
  if (table) w.begin_array();
  for (double g : gammas) {
    for (double gp : gamma_ps) {
      BoundResult b = max_flight_time(g, gp, velocity);
      w.begin_object();
      w.key("gamma").value(g);
      w.key("gamma_p").value(gp);
      w.key("t_max").value(b.t_max);
      if (velocity) {
        w.key("velocity").value(*velocity);
        w.key("distance_max").value(b.distance_max);
      }
      w.end_object();
    }
  }
  if (table) w.end_array();
  write_output(w.str() + "\n", path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-state distribution via a flying atom: simulation and analysis"};
  app.require_subcommand(1);

  std::string config_path, output_path, format;
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override the oracle RNG seed");

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", config_path, "scenario file (JSON)")->required();
    sub->add_option("--output", output_path, "output file (default: stdout)");
    sub->add_option("--format", format, "output format: json | csv");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run the protocol once");
  add_common(simulate, true);
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
  add_common(sweep, true);
  CLI::App* validate = app.add_subcommand("validate", "check the effective model against the full one");
  add_common(validate, true);

  CLI::App* bounds = app.add_subcommand("bounds", "maximal flight time and distance");
  std::vector<double> gammas, gamma_ps;
  std::optional<double> velocity;
  bounds->add_option("--gamma", gammas, "decay rate(s), 1/s")->required()->delimiter(',');
  bounds->add_option("--gamma-p", gamma_ps, "dephasing rate(s), 1/s")->delimiter(',');
  bounds->add_option("--velocity", velocity, "flying atom velocity, m/s");
  add_common(bounds, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (bounds->parsed()) {
      if (gamma_ps.empty()) gamma_ps.push_back(0.0);
      return cmd_bounds(gammas, gamma_ps, velocity, format.empty() ? "json" : format, output_path);
    }

    ionlink::ScenarioConfig config = ionlink::load_scenario(config_path);
    if (!output_path.empty()) config.output.path = output_path;
    if (!format.empty()) {
      if (format != "json" && format != "csv")
        throw ionlink::config_error("--format", "expected json or csv");
      config.output.format = format;
    }
    if (seed) {
      config.oracle.seed = *seed;
      config.oracle.enabled = true;
    }

    if (simulate->parsed()) return cmd_simulate(config);
    if (sweep->parsed()) return cmd_sweep(config);
    if (validate->parsed()) return cmd_validate(config);
    return 2;
  } catch (const ionlink::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ionlink::validation_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const ionlink::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
