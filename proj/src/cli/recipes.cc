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

#include <stdexcept>

#include "qnv/cli.h"

namespace qnv::cli {

const std::map<std::string, std::string>& recipes() {
  // generated from recipes/*.json at configure time
  static const std::map<std::string, std::string> table = {
#include "recipes_data.inc"
  };
  return table;
}

Json recipe(const std::string& name) {
  const auto& all = recipes();
  const auto it = all.find(name);
  if (it == all.end()) {
    std::string known;
    for (const auto& [k, v] : all) known += (known.empty() ? "" : ", ") + k;
    throw std::invalid_argument("unknown recipe '" + name + "' (known: " + known + ")");
  }
  return Json::parse(it->second);
}

}  // namespace qnv::cli
