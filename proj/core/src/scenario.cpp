#include "ionlink/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ionlink {

using nlohmann::json;

std::vector<double> SweepAxis::values() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(points));
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    if (log_scale)
      out.push_back(start * std::pow(stop / start, f));
    else
      out.push_back(start + f * (stop - start));
  }
  return out;
}

namespace {

double require_number(const json& obj, const std::string& section, const std::string& key) {
  const std::string full = section.empty() ? key : section + "." + key;
  if (!obj.contains(key)) throw config_error(full, "missing required value");
  if (!obj.at(key).is_number()) throw config_error(full, "expected a number");
  return obj.at(key).get<double>();
}

double number_or(const json& obj, const std::string& section, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw config_error(section.empty() ? key : section + "." + key, "expected a number");
  return obj.at(key).get<double>();
}

FieldStateSpec parse_field_state(const json& obj, const std::string& section, int truncation) {
  FieldStateSpec spec;
  spec.truncation = truncation;
  if (!obj.contains("kind") || !obj.at("kind").is_string())
    throw config_error(section + ".kind", "expected one of fock|thermal|coherent");
  const std::string kind = obj.at("kind").get<std::string>();
  if (kind == "fock")
    spec.kind = FieldStateSpec::Kind::fock;
  else if (kind == "thermal")
    spec.kind = FieldStateSpec::Kind::thermal;
  else if (kind == "coherent")
    spec.kind = FieldStateSpec::Kind::coherent;
  else
    throw config_error(section + ".kind", "unknown field kind '" + kind + "'");
  spec.parameter = require_number(obj, section, "parameter");
  if (obj.contains("truncation"))
    spec.truncation = static_cast<int>(require_number(obj, section, "truncation"));
  return spec;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error("<document>", std::string("JSON parse failure: ") + e.what());
  }

  ScenarioConfig config;

  if (!root.contains("protocol") || !root.at("protocol").is_object())
    throw config_error("protocol", "missing required section");
  const json& proto = root.at("protocol");
  config.protocol.lambda1 = require_number(proto, "protocol", "lambda1");
  config.protocol.lambda2 = require_number(proto, "protocol", "lambda2");
  if (proto.contains("t_a") || proto.contains("t_b")) {
    config.protocol.t_a = require_number(proto, "protocol", "t_a");
    config.protocol.t_b = require_number(proto, "protocol", "t_b");
  } else {
    // Canonical transit times for the given couplings.
    if (config.protocol.lambda1 <= 0.0)
      throw config_error("protocol.lambda1", "must be positive when t_a is omitted");
    if (config.protocol.lambda2 <= 0.0)
      throw config_error("protocol.lambda2", "must be positive when t_b is omitted");
    EffectiveParams canon =
        EffectiveParams::canonical_for(config.protocol.lambda1, config.protocol.lambda2);
    config.protocol.t_a = canon.t_a;
    config.protocol.t_b = canon.t_b;
  }

  if (!root.contains("channel") || !root.at("channel").is_object())
    throw config_error("channel", "missing required section");
  const json& chan = root.at("channel");
  config.channel.gamma = require_number(chan, "channel", "gamma");
  config.channel.gamma_p = require_number(chan, "channel", "gamma_p");
  config.channel.t_flight = require_number(chan, "channel", "t_flight");
  if (config.channel.gamma < 0 || config.channel.gamma_p < 0 || config.channel.t_flight < 0)
    throw config_error("channel", "rates and flight time must be nonnegative");

  if (root.contains("mode")) {
    if (!root.at("mode").is_string()) throw config_error("mode", "expected a string");
    try {
      config.mode = flight_mode_from_string(root.at("mode").get<std::string>());
    } catch (const validation_error& e) {
      throw config_error("mode", e.what());
    }
  }

  if (root.contains("allow_noncanonical_times")) {
    if (!root.at("allow_noncanonical_times").is_boolean())
      throw config_error("allow_noncanonical_times", "expected a boolean");
    config.allow_noncanonical_times = root.at("allow_noncanonical_times").get<bool>();
  }
  if (!config.allow_noncanonical_times && !config.protocol.canonical(1e-9))
    throw config_error("protocol",
                       "interaction times are not canonical (lambda1*t_a = pi/4, lambda2*t_b = "
                       "pi/2); set allow_noncanonical_times to override");

  if (root.contains("full_model")) {
    const json& fm = root.at("full_model");
    if (!fm.is_object()) throw config_error("full_model", "expected an object");
    FullModelSection section;
    section.params.g_ion = require_number(fm, "full_model", "g_ion");
    section.params.g_fly = require_number(fm, "full_model", "g_fly");
    section.params.delta = require_number(fm, "full_model", "delta");
    section.params.nu = require_number(fm, "full_model", "nu");
    section.params.eta = require_number(fm, "full_model", "eta");
    section.params.n_field_max =
        static_cast<int>(number_or(fm, "full_model", "n_field_max", 10));
    section.params.n_vib_max = static_cast<int>(number_or(fm, "full_model", "n_vib_max", 2));
    section.omega_qubit = number_or(fm, "full_model", "omega_qubit", 0.0);
    section.grid_points = static_cast<int>(number_or(fm, "full_model", "grid_points", 600));
    if (fm.contains("field_states")) {
      if (!fm.at("field_states").is_array())
        throw config_error("full_model.field_states", "expected an array");
      int i = 0;
      for (const auto& fs : fm.at("field_states")) {
        section.field_states.push_back(parse_field_state(
            fs, "full_model.field_states[" + std::to_string(i) + "]", section.params.n_field_max));
        ++i;
      }
    }
    if (section.field_states.empty())
      section.field_states.push_back(
          FieldStateSpec{FieldStateSpec::Kind::fock, 0.0, section.params.n_field_max});
    config.full_model = std::move(section);
  }

  if (root.contains("sweep")) {
    const json& sweep = root.at("sweep");
    if (!sweep.is_object() || !sweep.contains("axes") || !sweep.at("axes").is_array())
      throw config_error("sweep.axes", "expected an array of axis objects");
    static const std::vector<std::string> sweepable = {"gamma",   "gamma_p", "t_flight", "lambda1",
                                                       "lambda2", "t_a",     "t_b"};
    int i = 0;
    for (const auto& ax : sweep.at("axes")) {
      const std::string section = "sweep.axes[" + std::to_string(i) + "]";
      SweepAxis axis;
      if (!ax.contains("parameter") || !ax.at("parameter").is_string())
        throw config_error(section + ".parameter", "expected a parameter name");
      axis.parameter = ax.at("parameter").get<std::string>();
      if (std::find(sweepable.begin(), sweepable.end(), axis.parameter) == sweepable.end())
        throw config_error(section + ".parameter",
                           "'" + axis.parameter + "' is not a sweepable parameter");
      axis.start = require_number(ax, section, "start");
      axis.stop = number_or(ax, section, "stop", axis.start);
      axis.points = static_cast<int>(number_or(ax, section, "points", 1));
      if (axis.points < 1) throw config_error(section + ".points", "must be >= 1");
      if (ax.contains("scale")) {
        const std::string scale = ax.at("scale").get<std::string>();
        if (scale == "log")
          axis.log_scale = true;
        else if (scale != "linear")
          throw config_error(section + ".scale", "expected linear or log");
      }
      if (axis.log_scale && (axis.start <= 0.0 || axis.stop <= 0.0))
        throw config_error(section, "log scale requires positive endpoints");
      config.sweep.push_back(axis);
      ++i;
    }
  }

  if (root.contains("oracle")) {
    const json& oracle = root.at("oracle");
    if (!oracle.is_object()) throw config_error("oracle", "expected an object");
    config.oracle.enabled = true;
    config.oracle.samples = static_cast<int>(number_or(oracle, "oracle", "samples", 2000));
    config.oracle.seed =
        static_cast<std::uint64_t>(number_or(oracle, "oracle", "seed", 1.0));
    if (config.oracle.samples < 1000)
      throw config_error("oracle.samples", "must be >= 1000");
  }

  if (root.contains("output")) {
    const json& output = root.at("output");
    if (!output.is_object()) throw config_error("output", "expected an object");
    if (output.contains("format")) {
      const std::string fmt = output.at("format").get<std::string>();
      if (fmt != "json" && fmt != "csv")
        throw config_error("output.format", "expected json or csv");
      config.output.format = fmt;
    }
    if (output.contains("path")) config.output.path = output.at("path").get<std::string>();
  }

  return config;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("<file>", "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

void apply_parameter(ScenarioConfig& config, const std::string& name, double value) {
  if (name == "gamma")
    config.channel.gamma = value;
  else if (name == "gamma_p")
    config.channel.gamma_p = value;
  else if (name == "t_flight")
    config.channel.t_flight = value;
  else if (name == "lambda1")
    config.protocol.lambda1 = value;
  else if (name == "lambda2")
    config.protocol.lambda2 = value;
  else if (name == "t_a")
    config.protocol.t_a = value;
  else if (name == "t_b")
    config.protocol.t_b = value;
  else
    throw config_error(name, "not a sweepable parameter");
}

}  // namespace ionlink
