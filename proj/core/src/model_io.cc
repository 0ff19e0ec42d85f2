// Copyright 2026 The Trojan Drive Authors
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

#include "trojan_drive/model_io.h"

#include <cmath>
#include <string>

#include "json.hpp"
#include "trojan_drive/error.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive {
namespace {

using nlohmann::json;

json VectorToJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

double FiniteNumber(const json& value, const std::string& what) {
  if (!value.is_number()) throw ValidationError(what + " is not a number");
  const double d = value.get<double>();
  if (!std::isfinite(d)) throw ValidationError(what + " is not finite");
  return d;
}

Eigen::VectorXd VectorFromJson(const json& value, Eigen::Index expected,
                               const std::string& what) {
  if (!value.is_array() || static_cast<Eigen::Index>(value.size()) != expected) {
    throw ValidationError(what + " must be an array of " +
                          std::to_string(expected) + " numbers");
  }
  Eigen::VectorXd out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    out(i) = FiniteNumber(value[static_cast<std::size_t>(i)], what);
  }
  return out;
}

int PositiveInt(const json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<long long>() <= 0) {
    throw ValidationError(what + " must be a positive integer");
  }
  return value.get<int>();
}

}  // namespace

std::string ModelToJson(const MlpModel& model) {
  ValidateRole(model);
  json layers = json::array();
  for (const DenseLayer& layer : model.layers) {
    json weights = json::array();
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        weights.push_back(layer.weights(r, c));
      }
    }
    layers.push_back({{"in_dim", layer.in_dim()},
                      {"out_dim", layer.out_dim()},
                      {"activation", std::string(ActivationName(layer.activation))},
                      {"weights", std::move(weights)},
                      {"biases", VectorToJson(layer.biases)}});
  }
  const TrainingMetadata& meta = model.metadata;
  json doc = {
      {"schema_version", kModelSchemaVersion},
      {"role", std::string(RoleName(model.role))},
      {"layers", std::move(layers)},
      {"normalizer",
       {{"mean", VectorToJson(model.normalizer.mean)},
        {"std", VectorToJson(model.normalizer.stddev)}}},
      {"metadata",
       {{"seed", meta.seed},
        {"epochs", meta.epochs},
        {"batch_size", meta.batch_size},
        {"learning_rate", meta.learning_rate},
        {"val_fraction", meta.val_fraction},
        {"select_best_val", meta.select_best_val},
        {"best_epoch", meta.best_epoch},
        {"optimizer",
         {{"name", "adamw"},
          {"beta1", meta.beta1},
          {"beta2", meta.beta2},
          {"epsilon", meta.epsilon},
          {"weight_decay", meta.weight_decay}}}}}};
  return doc.dump(1) + "\n";
}

MlpModel ModelFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file is not valid JSON: ") +
                          e.what());
  }
  try {
    if (!doc.is_object()) throw ValidationError("model file is not an object");
    if (!doc.contains("schema_version") ||
        doc.at("schema_version") != kModelSchemaVersion) {
      throw ValidationError("unsupported model schema_version (expected " +
                            std::to_string(kModelSchemaVersion) + ")");
    }
    MlpModel model;
    model.role = ParseRole(doc.at("role").get<std::string>());
    const json& layers = doc.at("layers");
    if (!layers.is_array() || layers.empty()) {
      throw ValidationError("layers must be a non-empty array");
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const json& lj = layers[i];
      const std::string where = "layers[" + std::to_string(i) + "]";
      const int in_dim = PositiveInt(lj.at("in_dim"), where + ".in_dim");
      const int out_dim = PositiveInt(lj.at("out_dim"), where + ".out_dim");
      DenseLayer layer;
      layer.activation = ParseActivation(lj.at("activation").get<std::string>());
      const json& weights = lj.at("weights");
      if (!weights.is_array() ||
          weights.size() != static_cast<std::size_t>(in_dim) * out_dim) {
        throw ValidationError(where + ".weights has the wrong length");
      }
      layer.weights.resize(out_dim, in_dim);
      std::size_t k = 0;
      for (int r = 0; r < out_dim; ++r) {
        for (int c = 0; c < in_dim; ++c) {
          layer.weights(r, c) = FiniteNumber(weights[k++], where + ".weights");
        }
      }
      layer.biases = VectorFromJson(lj.at("biases"), out_dim, where + ".biases");
      model.layers.push_back(std::move(layer));
    }
    const json& norm = doc.at("normalizer");
    const Eigen::Index width = model.layers.front().in_dim();
    model.normalizer.mean = VectorFromJson(norm.at("mean"), width, "normalizer.mean");
    model.normalizer.stddev = VectorFromJson(norm.at("std"), width, "normalizer.std");

    const json& meta = doc.at("metadata");
    TrainingMetadata& m = model.metadata;
    m.seed = meta.at("seed").get<std::uint64_t>();
    m.epochs = meta.at("epochs").get<int>();
    m.batch_size = meta.at("batch_size").get<int>();
    m.learning_rate = FiniteNumber(meta.at("learning_rate"), "learning_rate");
    m.val_fraction = FiniteNumber(meta.value("val_fraction", 0.0), "val_fraction");
    m.select_best_val = meta.value("select_best_val", false);
    m.best_epoch = meta.value("best_epoch", -1);
    const json& opt = meta.at("optimizer");
    m.beta1 = FiniteNumber(opt.at("beta1"), "beta1");
    m.beta2 = FiniteNumber(opt.at("beta2"), "beta2");
    m.epsilon = FiniteNumber(opt.at("epsilon"), "epsilon");
    m.weight_decay = FiniteNumber(opt.at("weight_decay"), "weight_decay");

    ValidateRole(model);
    return model;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const MlpModel& model, const std::filesystem::path& path) {
  WriteTextFile(path, ModelToJson(model));
}

MlpModel LoadModel(const std::filesystem::path& path) {
  try {
    return ModelFromJson(ReadTextFile(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace trojan_drive
