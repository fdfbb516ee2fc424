// Copyright 2026 The qnet-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qnv/cli.h"

namespace qnv::cli {

namespace {

enum class Kind { kInt, kNumber, kString, kBool, kNumberList, kIntList, kStringList, kObject };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::kInt: return "an integer";
    case Kind::kNumber: return "a number";
    case Kind::kString: return "a string";
    case Kind::kBool: return "a boolean";
    case Kind::kNumberList: return "a list of numbers";
    case Kind::kIntList: return "a list of integers";
    case Kind::kStringList: return "a list of strings";
    case Kind::kObject: return "an object";
  }
  return "?";
}

bool has_kind(const Json& v, Kind k) {
  auto all = [&](auto pred) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), pred);
  };
  switch (k) {
    case Kind::kInt: return v.is_number_integer();
    case Kind::kNumber: return v.is_number();
    case Kind::kString: return v.is_string();
    case Kind::kBool: return v.is_boolean();
    case Kind::kNumberList: return all([](const Json& x) { return x.is_number(); });
    case Kind::kIntList: return all([](const Json& x) { return x.is_number_integer(); });
    case Kind::kStringList: return all([](const Json& x) { return x.is_string(); });
    case Kind::kObject: return v.is_object();
  }
  return false;
}

using Schema = std::map<std::string, Kind>;

const Schema& top_level_schema() {
  static const Schema s = {
      {"experiment", Kind::kString}, {"scheme", Kind::kString},   {"method", Kind::kString},
      {"test", Kind::kString},       {"n", Kind::kInt},           {"shots", Kind::kInt},
      {"plan", Kind::kObject},       {"noise", Kind::kObject},    {"damping", Kind::kString},
      {"return_qubits", Kind::kBool}, {"seed", Kind::kInt},       {"output", Kind::kString},
      {"format", Kind::kString},     {"params", Kind::kObject},
  };
  return s;
}

const Schema& plan_schema() {
  static const Schema s = {{"m_b", Kind::kInt}, {"m_s", Kind::kInt}, {"L", Kind::kInt},
                           {"K", Kind::kInt},   {"exhaustive", Kind::kBool}};
  return s;
}

const Schema& noise_schema() {
  static const Schema s = {{"f_transfer", Kind::kNumber}, {"gamma", Kind::kNumber},
                           {"t_block", Kind::kNumber},    {"f_gate", Kind::kNumber},
                           {"f_readout", Kind::kNumber}};
  return s;
}

const Schema& unitary_schema() {
  static const Schema s = {{"kind", Kind::kString},
                           {"phi", Kind::kNumber},
                           {"depth", Kind::kInt},
                           {"max_angle", Kind::kNumber}};
  return s;
}

const std::map<std::string, Schema>& param_schemas() {
  static const std::map<std::string, Schema> s = {
      {"state-compare",
       {{"state_a", Kind::kString}, {"state_b", Kind::kString}, {"pairs", Kind::kInt},
        {"n_values", Kind::kIntList}, {"visibility", Kind::kNumber}, {"alpha", Kind::kNumber},
        {"interval", Kind::kString}}},
      {"comp-compare", {{"left", Kind::kObject}, {"right", Kind::kObject}}},
      {"hom",
       {{"sigma", Kind::kNumber}, {"rate", Kind::kNumber}, {"points", Kind::kInt},
        {"max_delay_widths", Kind::kNumber}}},
      {"model-sweep",
       {{"n_max", Kind::kInt}, {"optimistic", Kind::kObject}, {"pessimistic", Kind::kObject}}},
      {"stats",
       {{"p_succ", Kind::kNumber}, {"alpha", Kind::kNumber}, {"m_values", Kind::kIntList},
        {"threshold", Kind::kNumber}, {"coverage_experiments", Kind::kInt}}},
      {"fig2d",
       {{"phi_points", Kind::kInt}, {"methods", Kind::kStringList}}},
      {"fig3",
       {{"m_b_values", Kind::kIntList}, {"trials", Kind::kInt}, {"depth", Kind::kInt},
        {"max_angle", Kind::kNumber}, {"strategies", Kind::kStringList},
        {"bootstrap_resamples", Kind::kInt}}},
      {"fig4c",
       {{"n_max", Kind::kInt}, {"mc_n_max", Kind::kInt}, {"mc_shots", Kind::kInt}}},
      {"fig5",
       {{"theta_points", Kind::kInt}, {"phi_points", Kind::kInt}, {"tests", Kind::kStringList}}},
      {"fig6-supp",
       {{"m_b_values", Kind::kIntList}, {"m_s_values", Kind::kIntList}, {"trials", Kind::kInt},
        {"depth", Kind::kInt}, {"max_angle", Kind::kNumber}, {"strategies", Kind::kStringList},
        {"bootstrap_resamples", Kind::kInt}}},
      {"fig7",
       {{"p_succ", Kind::kNumber}, {"alphas", Kind::kNumberList}, {"m_values", Kind::kIntList},
        {"threshold", Kind::kNumber}, {"coverage_experiments", Kind::kInt}}},
  };
  return s;
}

const std::set<std::string> kSchemes = {"s1", "s2", "s3", "s4", "swap", "bell"};
const std::set<std::string> kMethods = {"m1", "m2-design", "m2-trace", "m2-entangled", "m2-fsq",
                                        "m3"};
const std::set<std::string> kStates = {"zero", "one", "plus", "minus", "ghz", "random"};
const std::set<std::string> kLeftKinds = {"identity", "hadamard", "pauli_x", "pauli_z",
                                          "phase_hadamard", "random", "clifford"};
const std::set<std::string> kRightKinds = {"identity", "hadamard", "pauli_x", "pauli_z",
                                           "phase_hadamard", "random", "clifford", "same",
                                           "rotated", "conjugate", "transpose"};
const std::set<std::string> kStrategies = {"design", "trace", "fsq", "entangled"};

class Checker {
 public:
  std::vector<Diagnostic> diags;

  void add(const std::string& path, const std::string& message) {
    diags.push_back({path, message});
  }

  // Unknown keys and wrong types.
  void schema(const Json& obj, const Schema& schema, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
      const std::string path = prefix.empty() ? key : prefix + "." + key;
      auto it = schema.find(key);
      if (it == schema.end()) {
        add(path, "unknown field");
      } else if (!has_kind(value, it->second)) {
        add(path, std::string("must be ") + kind_name(it->second));
      }
    }
  }

  template <typename T>
  bool get(const Json& obj, const std::string& key, Kind kind, T& out) {
    if (!obj.contains(key) || !has_kind(obj[key], kind)) return false;
    out = obj[key].get<T>();
    return true;
  }

  void int_range(const Json& obj, const std::string& key, const std::string& path,
                 std::int64_t lo, std::int64_t hi) {
    std::int64_t v;
    if (get(obj, key, Kind::kInt, v) && (v < lo || v > hi)) {
      add(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                    std::to_string(v));
    }
  }

  void number_range(const Json& obj, const std::string& key, const std::string& path, double lo,
                    double hi, bool open_lo = false) {
    double v;
    if (!get(obj, key, Kind::kNumber, v)) return;
    const bool bad = !std::isfinite(v) || v > hi || (open_lo ? v <= lo : v < lo);
    if (bad) {
      std::ostringstream os;
      os << "must lie in " << (open_lo ? "(" : "[") << lo << ", " << hi << "], got " << v;
      add(path, os.str());
    }
  }

  void choice(const Json& obj, const std::string& key, const std::string& path,
              const std::set<std::string>& allowed) {
    std::string v;
    if (get(obj, key, Kind::kString, v) && !allowed.count(v)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
      add(path, "unknown value '" + v + "' (expected " + list + ")");
    }
  }

  void int_list_range(const Json& obj, const std::string& key, const std::string& path,
                      std::int64_t lo, std::int64_t hi) {
    if (!obj.contains(key) || !has_kind(obj[key], Kind::kIntList)) return;
    for (std::size_t i = 0; i < obj[key].size(); ++i) {
      const auto v = obj[key][i].get<std::int64_t>();
      if (v < lo || v > hi) {
        add(path + "[" + std::to_string(i) + "]", "must lie in [" + std::to_string(lo) + ", " +
                                                      std::to_string(hi) + "]");
      }
    }
  }

  void string_list_choice(const Json& obj, const std::string& key, const std::string& path,
                          const std::set<std::string>& allowed) {
    if (!obj.contains(key) || !has_kind(obj[key], Kind::kStringList)) return;
    for (std::size_t i = 0; i < obj[key].size(); ++i) {
      const auto v = obj[key][i].get<std::string>();
      if (!allowed.count(v)) add(path + "[" + std::to_string(i) + "]", "unknown value '" + v + "'");
    }
  }

  void noise(const Json& obj, const std::string& prefix) {
    schema(obj, noise_schema(), prefix);
    for (const char* f : {"f_transfer", "f_gate", "f_readout"}) {
      number_range(obj, f, prefix + "." + f, 0.0, 1.0, true);
    }
    number_range(obj, "gamma", prefix + ".gamma", 0.0, 1e12);
    number_range(obj, "t_block", prefix + ".t_block", 0.0, 1e12);
  }

  void unitary(const Json& obj, const std::string& prefix, const std::set<std::string>& kinds) {
    schema(obj, unitary_schema(), prefix);
    if (!obj.contains("kind")) add(prefix + ".kind", "required");
    choice(obj, "kind", prefix + ".kind", kinds);
    int_range(obj, "depth", prefix + ".depth", 0, 1000);
    number_range(obj, "max_angle", prefix + ".max_angle", 0.0, 1e6);
  }
};

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"state-compare", "comp-compare", "hom",
                                                 "model-sweep",   "stats",        "fig2d",
                                                 "fig3",          "fig4c",        "fig5",
                                                 "fig6-supp",     "fig7"};
  return names;
}

bool is_experiment(const std::string& name) {
  const auto& names = experiment_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_sampled(const Json& config) {
  if (!config.is_object() || !config.contains("experiment") || !config["experiment"].is_string()) {
    return true;
  }
  const std::string e = config["experiment"];
  const Json params = config.value("params", Json::object());
  auto int_param = [&](const char* key, std::int64_t fallback) {
    return params.is_object() && params.contains(key) && params[key].is_number_integer()
               ? params[key].get<std::int64_t>()
               : fallback;
  };
  if (e == "hom" || e == "model-sweep") return false;
  if (e == "stats" || e == "fig7") return int_param("coverage_experiments", 0) > 0;
  if (e == "fig4c") return int_param("mc_shots", 10000) > 0;
  return true;
}

std::optional<Json> parse_config_text(const std::string& text, std::vector<Diagnostic>& diags) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // locate the byte offset reported by the parser
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    diags.push_back({"line " + std::to_string(line) + ", column " + std::to_string(col),
                     "JSON syntax error: " + std::string(e.what())});
    return std::nullopt;
  }
}

std::vector<Diagnostic> validate(const Json& config) {
  Checker c;
  if (!config.is_object()) {
    c.add("", "config must be a JSON object");
    return c.diags;
  }
  c.schema(config, top_level_schema(), "");

  std::string experiment;
  if (!config.contains("experiment")) {
    c.add("experiment", "required");
  } else if (c.get(config, "experiment", Kind::kString, experiment) && !is_experiment(experiment)) {
    c.add("experiment", "unknown experiment '" + experiment + "'");
    experiment.clear();
  }

  c.int_range(config, "n", "n", 1, 12);
  c.int_range(config, "shots", "shots", 1, 100000000);
  c.int_range(config, "seed", "seed", 0, INT64_MAX);
  c.choice(config, "scheme", "scheme", kSchemes);
  c.choice(config, "method", "method", kMethods);
  c.choice(config, "test", "test", {"swap", "bell"});
  c.choice(config, "damping", "damping", {"per_crossing", "all_stationary"});
  c.choice(config, "format", "format", {"csv", "json"});
  std::string output;
  if (!c.get(config, "output", Kind::kString, output) || output.empty()) {
    c.add("output", "required (set it in the config or pass --out)");
  }
  if (config.contains("plan") && config["plan"].is_object()) {
    const Json& plan = config["plan"];
    c.schema(plan, plan_schema(), "plan");
    for (const char* f : {"m_b", "m_s", "L", "K"}) {
      c.int_range(plan, f, std::string("plan.") + f, 1, 100000000);
    }
  }
  if (config.contains("noise") && config["noise"].is_object()) c.noise(config["noise"], "noise");
  if (is_sampled(config) && !config.contains("seed")) {
    c.add("seed", "required for a sampled experiment (set it in the config or pass --seed)");
  }
  if (experiment.empty()) return c.diags;

  const Json params = config.value("params", Json::object());
  if (params.is_object()) {
    c.schema(params, param_schemas().at(experiment), "params");
  }
  const int n = config.value("n", 1);

  if (experiment == "state-compare") {
    c.choice(params, "state_a", "params.state_a", kStates);
    c.choice(params, "state_b", "params.state_b", kStates);
    c.int_range(params, "pairs", "params.pairs", 1, 100000);
    c.int_list_range(params, "n_values", "params.n_values", 1, 12);
    c.number_range(params, "visibility", "params.visibility", 0.0, 1.0);
    c.number_range(params, "alpha", "params.alpha", 0.0, 1.0, true);
    c.choice(params, "interval", "params.interval", {"hoeffding", "clopper_pearson", "cp", "wald"});
  } else if (experiment == "comp-compare") {
    const std::string method = config.value("method", "m1");
    if (params.contains("left") && params["left"].is_object()) {
      c.unitary(params["left"], "params.left", kLeftKinds);
    }
    if (params.contains("right") && params["right"].is_object()) {
      c.unitary(params["right"], "params.right", kRightKinds);
    }
    if (method == "m3" && n != 1) c.add("n", "method m3 compares single-qubit unitaries (n = 1)");
    if ((method == "m1" || method == "m2-entangled") && 4 * n + 1 > 26) {
      c.add("n", "Choi-state methods need 4n + 1 <= 26 qubits");
    }
  } else if (experiment == "hom") {
    c.number_range(params, "sigma", "params.sigma", 0.0, 1e6, true);
    c.number_range(params, "rate", "params.rate", 0.0, 1e6, true);
    c.int_range(params, "points", "params.points", 2, 100000);
    c.number_range(params, "max_delay_widths", "params.max_delay_widths", 0.0, 100.0, true);
  } else if (experiment == "model-sweep") {
    c.int_range(params, "n_max", "params.n_max", 1, 10000);
    for (const char* side : {"optimistic", "pessimistic"}) {
      if (!params.contains(side) || !params[side].is_object()) continue;
      const std::string prefix = std::string("params.") + side;
      c.schema(params[side], {{"s1", Kind::kObject}, {"s2", Kind::kObject}}, prefix);
      for (const char* s : {"s1", "s2"}) {
        if (params[side].contains(s) && params[side][s].is_object()) {
          c.noise(params[side][s], prefix + "." + s);
        }
      }
    }
  } else if (experiment == "stats" || experiment == "fig7") {
    c.number_range(params, "p_succ", "params.p_succ", 0.0, 1.0);
    c.number_range(params, "alpha", "params.alpha", 0.0, 1.0, true);
    c.int_list_range(params, "m_values", "params.m_values", 1, 10000000);
    c.number_range(params, "threshold", "params.threshold", 0.0, 1.0);
    c.int_range(params, "coverage_experiments", "params.coverage_experiments", 0, 10000000);
    if (params.contains("alphas") && has_kind(params["alphas"], Kind::kNumberList)) {
      for (std::size_t i = 0; i < params["alphas"].size(); ++i) {
        const double a = params["alphas"][i];
        if (!(a > 0.0 && a < 1.0)) {
          c.add("params.alphas[" + std::to_string(i) + "]", "must lie in (0, 1)");
        }
      }
    }
  } else if (experiment == "fig2d") {
    c.int_range(params, "phi_points", "params.phi_points", 2, 10000);
    c.string_list_choice(params, "methods", "params.methods", {"m1", "m2-design", "m2-fsq", "m3"});
  } else if (experiment == "fig3" || experiment == "fig6-supp") {
    c.int_list_range(params, "m_b_values", "params.m_b_values", 1, 100000);
    c.int_list_range(params, "m_s_values", "params.m_s_values", 1, 10000000);
    c.int_range(params, "trials", "params.trials", 2, 100000);
    c.int_range(params, "depth", "params.depth", 0, 1000);
    c.number_range(params, "max_angle", "params.max_angle", 0.0, 1e6);
    c.string_list_choice(params, "strategies", "params.strategies", kStrategies);
    c.int_range(params, "bootstrap_resamples", "params.bootstrap_resamples", 100, 10000000);
    if (n > 10) c.add("n", "dense oracle limited to n <= 10 here");
  } else if (experiment == "fig4c") {
    c.int_range(params, "n_max", "params.n_max", 1, 10000);
    c.int_range(params, "mc_n_max", "params.mc_n_max", 0, 12);
    c.int_range(params, "mc_shots", "params.mc_shots", 0, 100000000);
  } else if (experiment == "fig5") {
    c.int_range(params, "theta_points", "params.theta_points", 2, 100000);
    c.int_range(params, "phi_points", "params.phi_points", 2, 100000);
    c.string_list_choice(params, "tests", "params.tests", {"swap", "bell"});
  }
  return c.diags;
}

ExperimentConfig parse_config(const Json& config) {
  const auto diags = validate(config);
  if (!diags.empty()) {
    throw std::invalid_argument(diags.front().path + ": " + diags.front().message);
  }
  ExperimentConfig out;
  out.experiment = config["experiment"];
  out.scheme = config.value("scheme", out.scheme);
  out.method = config.value("method", out.method);
  out.test = config.value("test", out.test);
  out.n = config.value("n", out.n);
  out.shots = config.value("shots", out.shots);
  if (config.contains("plan")) {
    const Json& p = config["plan"];
    out.plan.m_b = p.value("m_b", out.plan.m_b);
    out.plan.m_s = p.value("m_s", out.plan.m_s);
    out.plan.L = p.value("L", out.plan.L);
    out.plan.K = p.value("K", out.plan.K);
    out.plan.exhaustive = p.value("exhaustive", out.plan.exhaustive);
  }
  if (config.contains("noise")) {
    const Json& b = config["noise"];
    out.noise.f_transfer = b.value("f_transfer", out.noise.f_transfer);
    out.noise.gamma = b.value("gamma", out.noise.gamma);
    out.noise.t_block = b.value("t_block", out.noise.t_block);
    out.noise.f_gate = b.value("f_gate", out.noise.f_gate);
    out.noise.f_readout = b.value("f_readout", out.noise.f_readout);
  }
  out.damping = parse_damping_mode(config.value("damping", std::string("per_crossing")));
  out.return_qubits = config.value("return_qubits", out.return_qubits);
  if (config.contains("seed")) out.seed = config["seed"].get<std::uint64_t>();
  out.output = config["output"];
  out.format = config.value("format", out.format);
  out.params = config.value("params", Json::object());
  return out;
}

Json expand_config(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["scheme"] = c.scheme;
  j["method"] = c.method;
  j["test"] = c.test;
  j["n"] = c.n;
  j["shots"] = c.shots;
  j["plan"] = {{"m_b", c.plan.m_b}, {"m_s", c.plan.m_s}, {"L", c.plan.L}, {"K", c.plan.K},
               {"exhaustive", c.plan.exhaustive}};
  j["noise"] = {{"f_transfer", c.noise.f_transfer}, {"gamma", c.noise.gamma},
                {"t_block", c.noise.t_block},       {"f_gate", c.noise.f_gate},
                {"f_readout", c.noise.f_readout}};
  j["damping"] = damping_mode_name(c.damping);
  j["return_qubits"] = c.return_qubits;
  if (c.seed) j["seed"] = *c.seed;
  j["output"] = c.output;
  j["format"] = c.format;
  j["params"] = c.params;
  return j;
}

}  // namespace qnv::cli
