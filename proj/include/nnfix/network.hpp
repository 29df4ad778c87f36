#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnfix/activation.hpp"

namespace nnfix {

inline constexpr double kEpsPos = 1e-12;  // operational threshold for ">> 0"

// One affine+activation layer with nonnegative parameters. Construction
// rejects negative weights or biases; clipping is the trainer's job.
struct Layer {
  Eigen::MatrixXd weights;        // out_dim x in_dim
  Eigen::VectorXd bias;           // out_dim
  std::vector<Activation> acts;   // one per output neuron

  Layer(Eigen::MatrixXd w, Eigen::VectorXd b, std::vector<Activation> a)
      : weights(std::move(w)), bias(std::move(b)), acts(std::move(a)) {
    if (bias.size() != weights.rows() ||
        static_cast<Eigen::Index>(acts.size()) != weights.rows()) {
      throw std::invalid_argument("layer dimensions inconsistent");
    }
    if ((weights.array() < 0.0).any()) {
      throw std::invalid_argument("layer violates nonnegativity invariant: negative weight");
    }
    if ((bias.array() < 0.0).any()) {
      throw std::invalid_argument("layer violates nonnegativity invariant: negative bias");
    }
  }

  // convenience: one activation kind broadcast over all neurons
  static Layer uniform(Eigen::MatrixXd w, Eigen::VectorXd b, const Activation& a) {
    std::vector<Activation> acts(static_cast<std::size_t>(b.size()), a);
    return Layer(std::move(w), std::move(b), std::move(acts));
  }

  Eigen::Index in_dim() const { return weights.cols(); }
  Eigen::Index out_dim() const { return weights.rows(); }

  Eigen::VectorXd preactivation(const Eigen::VectorXd& x) const {
    if (x.size() != in_dim()) throw std::invalid_argument("layer input dimension mismatch");
    return weights * x + bias;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = preactivation(x);
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      y(j) = acts[static_cast<std::size_t>(j)].eval(y(j));
    }
    return y;
  }

  bool all_in(AsymptoteClass c) const {
    for (const auto& a : acts) {
      if (a.asymptote_class() != c) return false;
    }
    return true;
  }

  bool all_strictly_monotone() const {
    for (const auto& a : acts) {
      if (!a.strictly_monotone_on_nonneg()) return false;
    }
    return true;
  }
};

// ResNet-style split W_i = epsilon_i I + V_i with epsilon_i the minimal
// diagonal entry, so V_i is nonnegative with at least one zero diagonal entry.
struct ResNetStructure {
  struct Split {
    double epsilon;
    Eigen::MatrixXd v;
  };
  std::vector<Split> layers;
  std::optional<std::size_t> positive_layer_index;  // first i with V_i >> 0
};

class Network {
 public:
  explicit Network(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("network needs at least one layer");
    for (std::size_t i = 1; i < layers_.size(); ++i) {
      if (layers_[i].in_dim() != layers_[i - 1].out_dim()) {
        throw std::invalid_argument("adjacent layer dimensions do not chain");
      }
    }
  }

  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }
  Eigen::Index input_dim() const { return layers_.front().in_dim(); }
  Eigen::Index output_dim() const { return layers_.back().out_dim(); }
  bool is_self_map() const { return input_dim() == output_dim(); }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const {
    if (x.size() != input_dim()) throw std::invalid_argument("input dimension mismatch");
    if ((x.array() < 0.0).any()) {
      throw std::invalid_argument("input has negative entries; domain is the nonnegative cone");
    }
    Eigen::VectorXd y = x;
    for (const auto& layer : layers_) y = layer.apply(y);
    return y;
  }

  // Chain-rule product D_n W_n ... D_1 W_1 with D_i the diagonal of activation
  // derivatives at the layer-i preactivations (right-hand derivative at kinks).
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    if (x.size() != input_dim()) throw std::invalid_argument("input dimension mismatch");
    if (!(x.array() > 0.0).all()) {
      throw std::invalid_argument("jacobian requires a strictly positive point");
    }
    Eigen::VectorXd a = x;
    Eigen::MatrixXd j;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const Layer& layer = layers_[i];
      Eigen::VectorXd z = layer.preactivation(a);
      Eigen::VectorXd d(z.size());
      for (Eigen::Index r = 0; r < z.size(); ++r) {
        d(r) = layer.acts[static_cast<std::size_t>(r)].derivative(z(r));
      }
      Eigen::MatrixXd dw = d.asDiagonal() * layer.weights;
      j = (i == 0) ? dw : Eigen::MatrixXd(dw * j);
      a.resize(z.size());
      for (Eigen::Index r = 0; r < z.size(); ++r) {
        a(r) = layer.acts[static_cast<std::size_t>(r)].eval(z(r));
      }
    }
    return j;
  }

  // product of weight matrices W_n ... W_1
  Eigen::MatrixXd weight_product() const {
    Eigen::MatrixXd m = layers_.front().weights;
    for (std::size_t i = 1; i < layers_.size(); ++i) {
      m = layers_[i].weights * m;
    }
    return m;
  }

  // Splits every (square) layer as epsilon I + V; absent when some diagonal
  // entry is <= 0, since epsilon must be positive.
  std::optional<ResNetStructure> detect_resnet(double eps_pos = kEpsPos) const {
    ResNetStructure out;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const Eigen::MatrixXd& w = layers_[i].weights;
      if (w.rows() != w.cols()) throw std::invalid_argument("detect_resnet requires square layers");
      double eps = w.diagonal().minCoeff();
      if (!(eps > 0.0)) return std::nullopt;
      Eigen::MatrixXd v = w - eps * Eigen::MatrixXd::Identity(w.rows(), w.cols());
      if (!out.positive_layer_index && (v.array() > eps_pos).all()) {
        out.positive_layer_index = i;
      }
      out.layers.push_back({eps, std::move(v)});
    }
    return out;
  }

 private:
  std::vector<Layer> layers_;
};

}  // namespace nnfix
