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


#include "pprlab/cli/config.hpp"

#include <array>
#include <fstream>

#include "pprlab/error.hpp"

namespace pprlab::cli {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Ppr: return "ppr";
    case Method::Appr: return "appr";
    case Method::MeanField: return "meanfield";
    case Method::DegreeRank: return "degree_rank";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::Ppr, Method::Appr, Method::MeanField, Method::DegreeRank}) {
    if (to_string(m) == text) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

void ExperimentSpec::validate() const {
  config.validate();
  require(alpha >= 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must lie in [0, 1)");
  require(replicates >= 1, ErrorCode::InvalidArgument, "replicates must be >= 1");
  require(!eps || *eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  require(b >= 1, ErrorCode::InvalidArgument, "b must be >= 1");
  if (method == Method::Appr) {
    require(alpha > 0.0, ErrorCode::InvalidArgument, "appr needs alpha in (0, 1)");
  }
}

namespace {

constexpr std::array kKeys = {"n",          "m",      "k",    "p",   "q",     "alpha",
                              "eps",        "b",      "seed", "replicates", "method",
                              "degree_scaling", "lazy"};

template <typename T>
T get_or(const nlohmann::json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentSpec parse_spec(const nlohmann::json& doc) {
  require(doc.is_object(), ErrorCode::InvalidArgument, "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    require(known, ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
  }

  ExperimentSpec spec;
  const auto n = get_or<std::size_t>(doc, "n", spec.config.n);
  const auto m = get_or<std::size_t>(doc, "m", n / 5);
  const auto k = get_or<std::size_t>(doc, "k", std::min<std::size_t>(20, m));
  const auto seed = get_or<std::uint64_t>(doc, "seed", spec.config.seed);
  require(n >= 2, ErrorCode::InvalidArgument, "n must be >= 2");
  spec.config = PlantedGraphConfig::log_squared(n, m, k, seed);
  if (doc.contains("p")) spec.config.p = get_or<double>(doc, "p", 0.0);
  if (doc.contains("q")) spec.config.q = get_or<double>(doc, "q", 0.0);
  spec.alpha = get_or<double>(doc, "alpha", spec.alpha);
  if (doc.contains("eps")) spec.eps = get_or<double>(doc, "eps", 0.0);
  spec.b = get_or<int>(doc, "b", spec.b);
  spec.replicates = get_or<std::size_t>(doc, "replicates", spec.replicates);
  spec.method = parse_method(get_or<std::string>(doc, "method", "ppr"));
  spec.degree_scaling = get_or<bool>(doc, "degree_scaling", spec.degree_scaling);
  spec.lazy = get_or<bool>(doc, "lazy", spec.lazy);
  spec.validate();
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config " + path.string() + ": " + e.what());
  }
  return parse_spec(doc);
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  nlohmann::json out = {{"n", spec.config.n},
                        {"m", spec.config.m},
                        {"k", spec.config.k},
                        {"p", spec.config.p},
                        {"q", spec.config.q},
                        {"seed", spec.config.seed},
                        {"alpha", spec.alpha},
                        {"b", spec.b},
                        {"replicates", spec.replicates},
                        {"method", std::string(to_string(spec.method))},
                        {"degree_scaling", spec.degree_scaling},
                        {"lazy", spec.lazy}};
  if (spec.eps) out["eps"] = *spec.eps;
  return out;
}

}  // namespace pprlab::cli
