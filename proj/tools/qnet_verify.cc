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

// qnet-verify: config-driven runner for the distributed comparison experiments.
//
//   qnet-verify <experiment> --config cfg.json [--seed N] [--out path] [--trace]
//   qnet-verify run --config cfg.json ...      (experiment taken from the config)
//   qnet-verify validate --config cfg.json
//   qnet-verify recipe <name>                  (print a preset)
//
// --recipe <name> may replace --config everywhere. Exit codes: 0 ok,
// 1 runtime failure, 2 config error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qnv/cli.h"

namespace {

using qnv::cli::Json;

constexpr int kRuntimeError = 1;
constexpr int kConfigError = 2;

struct Options {
  std::string config_path;
  std::string recipe;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool trace = false;
};

void report(const std::vector<qnv::cli::Diagnostic>& diags, const std::string& source) {
  for (const auto& d : diags) {
    std::cerr << source << ": " << (d.path.empty() ? "<root>" : d.path) << ": " << d.message
              << '\n';
  }
}

// Loads and overrides the config. Returns nullopt after printing diagnostics.
std::optional<Json> load(const Options& opt, const std::string& subcommand, std::string& source) {
  std::vector<qnv::cli::Diagnostic> diags;
  std::optional<Json> config;
  if (!opt.recipe.empty()) {
    source = "recipe " + opt.recipe;
    try {
      config = qnv::cli::recipe(opt.recipe);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return std::nullopt;
    }
  } else {
    source = opt.config_path;
    std::ifstream in(opt.config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << opt.config_path << "'\n";
      return std::nullopt;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    config = qnv::cli::parse_config_text(buf.str(), diags);
    if (!config) {
      report(diags, source);
      return std::nullopt;
    }
  }
  if (config->is_object()) {
    if (opt.seed) (*config)["seed"] = *opt.seed;
    if (!opt.out.empty()) (*config)["output"] = opt.out;
    if (subcommand != "run" && subcommand != "validate") {
      if (!config->contains("experiment")) (*config)["experiment"] = subcommand;
      if ((*config)["experiment"] != subcommand) {
        std::cerr << source << ": experiment: config names '"
                  << (*config)["experiment"].dump() << "' but subcommand is '" << subcommand
                  << "'\n";
        return std::nullopt;
      }
    }
  }
  diags = qnv::cli::validate(*config);
  if (!diags.empty()) {
    report(diags, source);
    return std::nullopt;
  }
  return config;
}

void add_common(CLI::App* app, Options& opt, bool running) {
  auto* cfg = app->add_option("--config", opt.config_path, "JSON config file");
  auto* rec = app->add_option("--recipe", opt.recipe, "named preset instead of --config");
  cfg->excludes(rec);
  rec->excludes(cfg);
  app->add_option("--seed", opt.seed, "override the config seed");
  app->add_option("--out", opt.out, "override the output path");
  if (running) app->add_flag("--trace", opt.trace, "write a per-shot event log");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed quantum state and unitary comparison experiments", "qnet-verify"};
  app.set_version_flag("--version", qnv::cli::version());
  app.require_subcommand(1);

  Options opt;
  std::vector<std::string> subcommands = qnv::cli::experiment_names();
  subcommands.push_back("run");
  for (const auto& name : subcommands) {
    add_common(app.add_subcommand(name, name == "run" ? "run the experiment named in the config"
                                                      : "run the " + name + " experiment"),
               opt, true);
  }
  add_common(app.add_subcommand("validate", "check a config and print diagnostics"), opt, false);
  std::string recipe_name;
  auto* recipe_cmd = app.add_subcommand("recipe", "print a named preset (no name: list them)");
  recipe_cmd->add_option("name", recipe_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "recipe") {
    if (recipe_name.empty()) {
      for (const auto& [name, text] : qnv::cli::recipes()) std::cout << name << '\n';
      return 0;
    }
    try {
      std::cout << qnv::cli::recipe(recipe_name).dump(2) << '\n';
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kConfigError;
    }
    return 0;
  }
  if (opt.config_path.empty() && opt.recipe.empty()) {
    std::cerr << "error: one of --config or --recipe is required\n";
    return kConfigError;
  }

  std::string source;
  const auto config = load(opt, sub, source);
  if (!config) return kConfigError;
  if (sub == "validate") {
    std::cout << source << ": ok\n";
    return 0;
  }

  qnv::cli::ExperimentConfig parsed;
  try {
    parsed = qnv::cli::parse_config(*config);
  } catch (const std::exception& e) {
    std::cerr << source << ": " << e.what() << '\n';
    return kConfigError;
  }
  const int rc = qnv::cli::write_run(parsed, opt.trace, std::cerr);
  if (rc == 0) std::cout << parsed.output << '\n';
  return rc == 0 ? 0 : kRuntimeError;
}
