#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "nnfix/network.hpp"

// Model file format v1 (JSON):
// {
//   "format": "nnfix-model",
//   "version": 1,
//   "layers": [
//     {
//       "rows": <int>, "cols": <int>,
//       "weights": [<row-major doubles>],
//       "bias": [<doubles>],
//       "activations": [{"kind": "<name>"} | {"kind": "capped_relu", "beta": <double>}]
//     }, ...
//   ]
// }
// Doubles are emitted with round-trip precision, so load(save(net)) is
// bit-exact.

namespace nnfix {

inline nlohmann::json to_json(const Network& net) {
  nlohmann::json doc;
  doc["format"] = "nnfix-model";
  doc["version"] = 1;
  doc["layers"] = nlohmann::json::array();
  for (const Layer& layer : net.layers()) {
    nlohmann::json jl;
    jl["rows"] = layer.weights.rows();
    jl["cols"] = layer.weights.cols();
    auto w = nlohmann::json::array();
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        w.push_back(layer.weights(r, c));
      }
    }
    jl["weights"] = std::move(w);
    auto b = nlohmann::json::array();
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) b.push_back(layer.bias(r));
    jl["bias"] = std::move(b);
    auto a = nlohmann::json::array();
    for (const Activation& act : layer.acts) {
      nlohmann::json ja;
      ja["kind"] = act.name();
      if (act.kind == Act::CappedRelu) ja["beta"] = act.beta;
      a.push_back(std::move(ja));
    }
    jl["activations"] = std::move(a);
    doc["layers"].push_back(std::move(jl));
  }
  return doc;
}

inline Network network_from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "nnfix-model") {
    throw std::invalid_argument("not a nnfix-model document");
  }
  if (doc.value("version", 0) != 1) {
    throw std::invalid_argument("unsupported model version");
  }
  std::vector<Layer> layers;
  for (const auto& jl : doc.at("layers")) {
    const Eigen::Index rows = jl.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = jl.at("cols").get<Eigen::Index>();
    const auto& w = jl.at("weights");
    if (static_cast<Eigen::Index>(w.size()) != rows * cols) {
      throw std::invalid_argument("weight array size does not match rows*cols");
    }
    Eigen::MatrixXd weights(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        weights(r, c) = w[static_cast<std::size_t>(r * cols + c)].get<double>();
      }
    }
    const auto& b = jl.at("bias");
    if (static_cast<Eigen::Index>(b.size()) != rows) {
      throw std::invalid_argument("bias array size does not match rows");
    }
    Eigen::VectorXd bias(rows);
    for (Eigen::Index r = 0; r < rows; ++r) bias(r) = b[static_cast<std::size_t>(r)].get<double>();
    const auto& a = jl.at("activations");
    if (static_cast<Eigen::Index>(a.size()) != rows) {
      throw std::invalid_argument("activation array size does not match rows");
    }
    std::vector<Activation> acts;
    acts.reserve(a.size());
    for (const auto& ja : a) {
      acts.push_back(Activation::from_name(ja.at("kind").get<std::string>(),
                                           ja.value("beta", 0.0)));
    }
    layers.emplace_back(std::move(weights), std::move(bias), std::move(acts));
  }
  return Network(std::move(layers));
}

inline void save_model(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_json(net).dump(2) << "\n";
}

inline Network load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  return network_from_json(doc);
}

}  // namespace nnfix
