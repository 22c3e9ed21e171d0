// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsarbench/error.hpp"
#include "qsarbench/experiment.hpp"

namespace qsarbench {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::ConfigError, message);
}

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    config_error("key '" + key + "' has the wrong type");
  }
}

std::filesystem::path resolve(const std::string& text, const std::filesystem::path& base) {
  std::filesystem::path p(text);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("config must be a JSON object");
  reject_unknown(root,
                 {"dataset", "dataset_path", "schema", "embedding", "embedding_path", "n_list",
                  "reps", "resplits", "epochs", "optimizer", "fractions", "cluster_k",
                  "cluster_cutoff", "cluster_min_size", "radius", "nbits", "undersample",
                  "gradient", "master_seed", "workers", "output_dir"},
                 "config");

  ExperimentConfig c;
  if (root.contains("dataset")) {
    const auto name = get_as<std::string>(root["dataset"], "dataset");
    const auto kind = parse_dataset_kind(name);
    if (!kind) config_error("unknown dataset '" + name + "'");
    c.dataset = *kind;
  }
  if (root.contains("dataset_path")) {
    c.dataset_path = resolve(get_as<std::string>(root["dataset_path"], "dataset_path"), base_dir);
  }
  if (root.contains("schema")) {
    const json& s = root["schema"];
    if (!s.is_object()) config_error("schema must be an object");
    reject_unknown(s, {"smiles", "label", "id"}, "schema");
    Schema schema = preset_schema(c.dataset);
    if (s.contains("smiles")) schema.smiles_column = get_as<std::string>(s["smiles"], "schema.smiles");
    if (s.contains("label")) schema.label_column = get_as<std::string>(s["label"], "schema.label");
    if (s.contains("id")) schema.id_column = get_as<std::string>(s["id"], "schema.id");
    if (schema.smiles_column.empty() || schema.label_column.empty()) {
      config_error("schema needs smiles and label columns");
    }
    c.schema = schema;
  }
  if (root.contains("embedding")) {
    const auto name = get_as<std::string>(root["embedding"], "embedding");
    if (name == "MGFP" || name == "mgfp") {
      c.embedding = Embedding::Mgfp;
    } else if (name == "IMGMOL" || name == "imgmol") {
      c.embedding = Embedding::ImgMol;
    } else {
      config_error("embedding must be MGFP or IMGMOL");
    }
  }
  if (root.contains("embedding_path")) {
    c.embedding_path = resolve(get_as<std::string>(root["embedding_path"], "embedding_path"), base_dir);
  }
  if (root.contains("n_list")) c.n_list = get_as<std::vector<int>>(root["n_list"], "n_list");
  if (root.contains("reps")) c.reps = get_as<int>(root["reps"], "reps");
  if (root.contains("resplits")) c.resplits = get_as<int>(root["resplits"], "resplits");
  if (root.contains("epochs")) c.optimizer.epochs = get_as<int>(root["epochs"], "epochs");
  if (root.contains("optimizer")) {
    const json& o = root["optimizer"];
    if (!o.is_object()) config_error("optimizer must be an object");
    reject_unknown(o, {"learning_rate", "beta1", "beta2", "epsilon", "batch_size"}, "optimizer");
    if (o.contains("learning_rate")) c.optimizer.learning_rate = get_as<double>(o["learning_rate"], "learning_rate");
    if (o.contains("beta1")) c.optimizer.beta1 = get_as<double>(o["beta1"], "beta1");
    if (o.contains("beta2")) c.optimizer.beta2 = get_as<double>(o["beta2"], "beta2");
    if (o.contains("epsilon")) c.optimizer.epsilon = get_as<double>(o["epsilon"], "epsilon");
    if (o.contains("batch_size")) {
      const int b = get_as<int>(o["batch_size"], "batch_size");
      if (b < 1) config_error("batch_size must be >= 1");
      c.optimizer.batch_size = static_cast<std::size_t>(b);
    }
  }
  if (root.contains("fractions")) c.fractions = get_as<std::vector<double>>(root["fractions"], "fractions");
  if (root.contains("cluster_k")) {
    const json& k = root["cluster_k"];
    c.cluster_k = k.is_array() ? get_as<std::vector<int>>(k, "cluster_k")
                               : std::vector<int>{get_as<int>(k, "cluster_k")};
  }
  if (root.contains("cluster_cutoff")) c.cluster_cutoff = get_as<double>(root["cluster_cutoff"], "cluster_cutoff");
  if (root.contains("cluster_min_size")) {
    const int m = get_as<int>(root["cluster_min_size"], "cluster_min_size");
    if (m < 1) config_error("cluster_min_size must be >= 1");
    c.cluster_min_size = static_cast<std::size_t>(m);
  }
  if (root.contains("radius")) c.radius = get_as<int>(root["radius"], "radius");
  if (root.contains("nbits")) {
    const int b = get_as<int>(root["nbits"], "nbits");
    if (b < 2) config_error("nbits must be >= 2");
    c.nbits = static_cast<std::size_t>(b);
  }
  if (root.contains("undersample") && !root["undersample"].is_null()) {
    c.undersample = get_as<bool>(root["undersample"], "undersample");
  }
  if (root.contains("gradient")) {
    const auto g = get_as<std::string>(root["gradient"], "gradient");
    if (g == "adjoint") {
      c.gradient = GradientMethod::Adjoint;
    } else if (g == "parameter-shift") {
      c.gradient = GradientMethod::ParameterShift;
    } else {
      config_error("gradient must be 'adjoint' or 'parameter-shift'");
    }
  }
  if (root.contains("master_seed")) c.master_seed = get_as<std::uint64_t>(root["master_seed"], "master_seed");
  if (root.contains("workers")) c.workers = get_as<int>(root["workers"], "workers");
  if (root.contains("output_dir")) c.output_dir = resolve(get_as<std::string>(root["output_dir"], "output_dir"), base_dir);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::string config_to_json(const ExperimentConfig& c) {
  // workers and output_dir only affect execution, not results, so they are
  // left out of the echo to keep report bytes independent of them.
  json j;
  j["dataset"] = std::string(to_string(c.dataset));
  j["dataset_path"] = c.dataset_path.generic_string();
  const Schema schema = c.schema.value_or(preset_schema(c.dataset));
  j["schema"] = {{"smiles", schema.smiles_column}, {"label", schema.label_column}, {"id", schema.id_column}};
  j["embedding"] = std::string(to_string(c.embedding));
  j["embedding_path"] = c.embedding_path.generic_string();
  j["n_list"] = c.n_list;
  j["reps"] = c.reps;
  j["resplits"] = c.resplits;
  j["epochs"] = c.optimizer.epochs;
  j["optimizer"] = {{"learning_rate", c.optimizer.learning_rate},
                    {"beta1", c.optimizer.beta1},
                    {"beta2", c.optimizer.beta2},
                    {"epsilon", c.optimizer.epsilon},
                    {"batch_size", c.optimizer.batch_size}};
  j["fractions"] = c.fractions;
  j["cluster_k"] = c.cluster_k;
  j["cluster_cutoff"] = c.cluster_cutoff;
  j["cluster_min_size"] = c.cluster_min_size;
  j["radius"] = c.radius;
  j["nbits"] = c.nbits;
  j["undersample"] = c.undersampling();
  j["gradient"] = std::string(to_string(c.gradient));
  j["master_seed"] = c.master_seed;
  return j.dump(2);
}

}  // namespace qsarbench
