#pragma once

// Shared generators for the unit and acceptance suites: random nonnegative
// networks and random combinator trees over a base-map vocabulary.

#include <Eigen/Dense>
#include <vector>

#include "nnfix/cone_map.hpp"
#include "nnfix/network.hpp"
#include "nnfix/rng.hpp"

namespace testutil {

using nnfix::Act;
using nnfix::Activation;
using nnfix::ConeMap;
using nnfix::Layer;
using nnfix::MapProperty;
using nnfix::Network;
using nnfix::Rng;

inline const std::vector<Act>& catalog() {
  static const std::vector<Act> kinds = {
      Act::Sigmoid,     Act::CappedRelu, Act::SaturatedLinear, Act::InvSqrtUnit,
      Act::ArctanScaled, Act::Tanh,      Act::Asinh,           Act::Elliott,
      Act::Logarithmic, Act::Relu,       Act::InvSqrtLinearUnit};
  return kinds;
}

inline Activation random_activation(Rng& rng) {
  Act k = catalog()[static_cast<std::size_t>(rng.uniform_int(0, 10))];
  return k == Act::CappedRelu ? Activation(k, rng.uniform(0.5, 3.0)) : Activation(k);
}

inline Eigen::MatrixXd random_nonneg_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                                            double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.uniform(0.0, scale);
  }
  return m;
}

inline Eigen::VectorXd random_nonneg_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(0.0, scale);
  return v;
}

struct NetOptions {
  int min_depth = 1;
  int max_depth = 3;
  int min_width = 2;
  int max_width = 5;
  double weight_scale = 1.0;
  double bias_scale = 0.5;
  bool self_map = false;
  // when >= 0 the layer at this index (mod depth) uses a single random L1 kind
  int force_l1_layer = -1;
};

inline Network random_network(Rng& rng, const NetOptions& opt = {}) {
  const int depth = rng.uniform_int(opt.min_depth, opt.max_depth);
  std::vector<int> widths;
  widths.push_back(rng.uniform_int(opt.min_width, opt.max_width));
  for (int i = 1; i <= depth; ++i) widths.push_back(rng.uniform_int(opt.min_width, opt.max_width));
  if (opt.self_map) widths.back() = widths.front();

  static const std::vector<Act> l1 = {Act::Sigmoid, Act::SaturatedLinear, Act::InvSqrtUnit,
                                      Act::ArctanScaled, Act::Tanh, Act::Elliott};
  int l1_layer = opt.force_l1_layer >= 0 ? opt.force_l1_layer % depth : -1;

  std::vector<Layer> layers;
  for (int i = 0; i < depth; ++i) {
    Eigen::Index rows = widths[static_cast<std::size_t>(i) + 1];
    Eigen::Index cols = widths[static_cast<std::size_t>(i)];
    std::vector<Activation> acts;
    if (i == l1_layer) {
      Activation a(l1[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(l1.size()) - 1))]);
      acts.assign(static_cast<std::size_t>(rows), a);
    } else {
      for (Eigen::Index r = 0; r < rows; ++r) acts.push_back(random_activation(rng));
    }
    layers.emplace_back(random_nonneg_matrix(rng, rows, cols, opt.weight_scale),
                        random_nonneg_vector(rng, rows, opt.bias_scale), std::move(acts));
  }
  return Network(std::move(layers));
}

// ---- combinator tree vocabulary ------------------------------------------

inline ConeMap base_linear(Rng& rng, Eigen::Index dim) {
  // row sums <= 1 so deep trees keep intermediate values small; saturating
  // activations applied to huge arguments have derivatives that underflow,
  // which would break the strict-inequality oracles on genuinely strict maps
  Eigen::MatrixXd w = random_nonneg_matrix(rng, dim, dim, 1.0 / static_cast<double>(dim));
  ConeMap m;
  m.in_dim = m.out_dim = dim;
  m.eval = [w](const Eigen::VectorXd& x) { return (w * x).eval(); };
  m.declared = {MapProperty::Monotonic, MapProperty::WeaklyScalable};
  return m;
}

inline ConeMap base_add_bias(Rng& rng, Eigen::Index dim) {
  Eigen::VectorXd b(dim);
  for (Eigen::Index i = 0; i < dim; ++i) b(i) = rng.uniform(0.1, 1.0);
  ConeMap m;
  m.in_dim = m.out_dim = dim;
  m.eval = [b](const Eigen::VectorXd& x) { return (x + b).eval(); };
  // affine shift with positive bias: strictly monotone and scalable
  m.declared = {MapProperty::Monotonic, MapProperty::StrictlyMonotonic,
                MapProperty::WeaklyScalable, MapProperty::Scalable};
  return m;
}

inline ConeMap base_coordinate(Act kind, Eigen::Index dim) {
  Activation a(kind);
  ConeMap m;
  m.in_dim = m.out_dim = dim;
  m.eval = [a](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = a.eval(x(i));
    return y;
  };
  m.declared = {MapProperty::Monotonic, MapProperty::WeaklyScalable};
  if (a.strictly_monotone_on_nonneg()) m.declared.insert(MapProperty::StrictlyMonotonic);
  if (a.scalable_alone()) m.declared.insert(MapProperty::Scalable);
  return m;
}

inline ConeMap random_base_map(Rng& rng, Eigen::Index dim) {
  switch (rng.uniform_int(0, 4)) {
    case 0: return base_linear(rng, dim);
    case 1: return base_add_bias(rng, dim);
    case 2: return base_coordinate(Act::Sigmoid, dim);
    case 3: return base_coordinate(Act::Tanh, dim);
    default: return base_coordinate(Act::Relu, dim);
  }
}

inline ConeMap random_tree(Rng& rng, Eigen::Index dim, int depth) {
  if (depth <= 0) return random_base_map(rng, dim);
  switch (rng.uniform_int(0, 3)) {
    case 0: {
      double alpha = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.3, 0.6);
      double beta = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.3, 0.6);
      return nnfix::combine_sum(random_tree(rng, dim, depth - 1),
                                random_tree(rng, dim, depth - 1), alpha, beta);
    }
    case 1:
      return nnfix::combine_max(random_tree(rng, dim, depth - 1),
                                random_tree(rng, dim, depth - 1));
    case 2:
      return nnfix::combine_min(random_tree(rng, dim, depth - 1),
                                random_tree(rng, dim, depth - 1));
    default:
      return nnfix::combine_compose(random_tree(rng, dim, depth - 1),
                                    random_tree(rng, dim, depth - 1));
  }
}

}  // namespace testutil
