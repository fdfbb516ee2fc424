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

#ifndef QNV_CLI_H_
#define QNV_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qnv/compcmp.h"
#include "qnv/netproto.h"
#include "qnv/noise.h"

namespace qnv::cli {

using Json = nlohmann::ordered_json;

/// Experiments the runner knows.
const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);
/// Experiments whose output depends on random draws (seed mandatory).
bool is_sampled(const Json& config);

struct Diagnostic {
  std::string path;  // JSON field path, e.g. "noise.f_gate", or "line 3" for syntax errors
  std::string message;
};

/// Parses text into JSON. On a syntax error returns nullopt and appends a
/// diagnostic carrying the line and column.
std::optional<Json> parse_config_text(const std::string& text, std::vector<Diagnostic>& diags);

/// Empty iff `config` can be run.
std::vector<Diagnostic> validate(const Json& config);

/// Typed view of a validated config. Defaults fill missing fields.
struct ExperimentConfig {
  std::string experiment;
  std::string scheme = "s2";
  std::string method = "m1";
  std::string test = "swap";
  int n = 1;
  std::uint64_t shots = 10000;
  SamplingPlan plan;
  NoiseBudget noise;
  DampingMode damping = DampingMode::kPerCrossing;
  bool return_qubits = true;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string format = "csv";
  Json params = Json::object();
};

/// Throws std::invalid_argument with the first diagnostic if invalid.
ExperimentConfig parse_config(const Json& config);
/// Config with every default written out (what the manifest echoes).
Json expand_config(const ExperimentConfig& config);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_number(double x);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

struct ExperimentResult {
  Table table;
  /// Extra text files keyed by suffix appended to the output path.
  std::map<std::string, std::string> attachments;
};

/// Runs the experiment. `trace` adds a ".trace.jsonl" attachment for
/// protocol runs.
ExperimentResult execute(const ExperimentConfig& config, bool trace);

/// Executes `config` and writes the data file, its attachments and a
/// ".manifest.json" next to it. Returns 0 on success and 1 on a runtime
/// failure (reported to `err`; no data file is left behind).
int write_run(const ExperimentConfig& config, bool trace, std::ostream& err);

/// Named presets (full configs without seed/output overrides applied).
const std::map<std::string, std::string>& recipes();
/// Throws std::invalid_argument for an unknown name.
Json recipe(const std::string& name);

std::string version();

}  // namespace qnv::cli

#endif  // QNV_CLI_H_
