// Copyright 2026 The pprlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PPRLAB_CLI_CONFIG_HPP_
#define PPRLAB_CLI_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pprlab/graph.hpp"

namespace pprlab::cli {

enum class Method { Ppr, Appr, MeanField, DegreeRank };

std::string_view to_string(Method method);
/// Accepts "ppr", "appr", "meanfield", "degree_rank".
Method parse_method(std::string_view text);

/// One explicit experiment. Presets build these internally; a JSON config
/// file describes one directly.
struct ExperimentSpec {
  std::string name = "custom";
  PlantedGraphConfig config = PlantedGraphConfig::log_squared(10000, 2000, 20, 1);
  double alpha = 0.8;
  /// Push tolerance for Method::Appr. When unset, the ACL value
  /// 2^-b / (48 B) is taken from each sampled graph's edge count.
  std::optional<double> eps;
  int b = 13;
  Method method = Method::Ppr;
  std::size_t replicates = 10;
  bool degree_scaling = true;
  bool lazy = false;

  void validate() const;
};

/// Keys: n, m, k, p, q, alpha, eps, b, seed, replicates, method,
/// degree_scaling, lazy. Missing p/q follow p = 5 ln^2 n / n, q = 2p.
/// Unknown keys are rejected.
ExperimentSpec parse_spec(const nlohmann::json& doc);
ExperimentSpec load_spec(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentSpec& spec);

}  // namespace pprlab::cli

#endif  // PPRLAB_CLI_CONFIG_HPP_
