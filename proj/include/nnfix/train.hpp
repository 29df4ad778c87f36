#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnfix/activation.hpp"
#include "nnfix/analysis.hpp"
#include "nnfix/mixture.hpp"
#include "nnfix/model_io.hpp"
#include "nnfix/network.hpp"
#include "nnfix/rng.hpp"

namespace nnfix {

struct TrainConfig {
  int input_dim = 36;
  std::array<int, 3> hidden = {40, 8, 40};
  int samples = 5000;
  int epochs = 200;
  int batch = 32;
  double lr = 0.005;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 1;

  void validate() const {
    if (input_dim < 2) throw std::invalid_argument("input_dim must be >= 2");
    for (int h : hidden) {
      if (h < 1) throw std::invalid_argument("hidden dims must be positive");
    }
    if (hidden[1] >= input_dim) {
      throw std::invalid_argument("bottleneck must be smaller than input_dim");
    }
    if (samples < 1 || epochs < 0 || batch < 1) {
      throw std::invalid_argument("samples/epochs/batch out of range");
    }
  }

  std::vector<int> dims() const {
    return {input_dim, hidden[0], hidden[1], hidden[2], input_dim};
  }
};

// Mutable parameter stack used during optimization. The immutable Network is
// built from it once training is done (construction re-checks nonnegativity).
struct TrainableNet {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
  std::vector<Activation> acts;  // one per layer, broadcast over its neurons

  static TrainableNet autoencoder(const TrainConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    TrainableNet net;
    const auto dims = cfg.dims();
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
      Eigen::MatrixXd wi(dims[i + 1], dims[i]);
      for (Eigen::Index r = 0; r < wi.rows(); ++r) {
        for (Eigen::Index c = 0; c < wi.cols(); ++c) wi(r, c) = rng.uniform();
      }
      net.w.push_back(std::move(wi));
      net.b.push_back(Eigen::VectorXd::Zero(dims[i + 1]));
      net.acts.push_back(i + 2 == dims.size() ? Activation(Act::Relu)
                                              : Activation(Act::Tanh));
    }
    return net;
  }

  std::size_t depth() const { return w.size(); }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const {
    Eigen::VectorXd a = x;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Eigen::VectorXd z = w[i] * a + b[i];
      a.resize(z.size());
      for (Eigen::Index r = 0; r < z.size(); ++r) a(r) = acts[i].eval(z(r));
    }
    return a;
  }

  // Mean squared reconstruction error over the batch: (1/B) sum ||T(x) - x||^2.
  double batch_loss(const std::vector<Eigen::VectorXd>& batch) const {
    double loss = 0.0;
    for (const auto& x : batch) loss += (forward(x) - x).squaredNorm();
    return loss / static_cast<double>(batch.size());
  }

  // Reverse-mode gradients of batch_loss with respect to every weight and bias.
  std::pair<std::vector<Eigen::MatrixXd>, std::vector<Eigen::VectorXd>> gradients(
      const std::vector<Eigen::VectorXd>& batch) const {
    const std::size_t n = depth();
    std::vector<Eigen::MatrixXd> gw(n);
    std::vector<Eigen::VectorXd> gb(n);
    for (std::size_t i = 0; i < n; ++i) {
      gw[i] = Eigen::MatrixXd::Zero(w[i].rows(), w[i].cols());
      gb[i] = Eigen::VectorXd::Zero(b[i].size());
    }
    const double scale = 2.0 / static_cast<double>(batch.size());
    std::vector<Eigen::VectorXd> activ(n + 1), pre(n);
    for (const auto& x : batch) {
      activ[0] = x;
      for (std::size_t i = 0; i < n; ++i) {
        pre[i] = w[i] * activ[i] + b[i];
        activ[i + 1].resize(pre[i].size());
        for (Eigen::Index r = 0; r < pre[i].size(); ++r) {
          activ[i + 1](r) = acts[i].eval(pre[i](r));
        }
      }
      Eigen::VectorXd delta = scale * (activ[n] - x);
      for (std::size_t i = n; i-- > 0;) {
        for (Eigen::Index r = 0; r < delta.size(); ++r) {
          delta(r) *= acts[i].derivative(pre[i](r));
        }
        gw[i] += delta * activ[i].transpose();
        gb[i] += delta;
        if (i > 0) delta = (w[i].transpose() * delta).eval();
      }
    }
    return {std::move(gw), std::move(gb)};
  }

  Network to_network() const {
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < w.size(); ++i) {
      layers.push_back(Layer::uniform(w[i], b[i], acts[i]));
    }
    return Network(std::move(layers));
  }
};

inline Network init_network(const TrainConfig& cfg) {
  return TrainableNet::autoencoder(cfg).to_network();
}

struct TrainResult {
  Network net;
  std::vector<double> loss_history;  // per-epoch mean batch loss
};

// Mini-batch Adam with bias correction; negative parameters are clipped to
// zero after every update. Moment buffers survive clipping.
inline TrainResult train(const TrainConfig& cfg, const std::vector<Eigen::VectorXd>& data) {
  cfg.validate();
  if (data.empty()) throw std::invalid_argument("train: empty dataset");
  for (const auto& x : data) {
    if (x.size() != cfg.input_dim) throw std::invalid_argument("train: sample dimension mismatch");
  }
  TrainableNet net = TrainableNet::autoencoder(cfg);
  const std::size_t n = net.depth();
  std::vector<Eigen::MatrixXd> mw(n), vw(n);
  std::vector<Eigen::VectorXd> mb(n), vb(n);
  for (std::size_t i = 0; i < n; ++i) {
    mw[i] = Eigen::MatrixXd::Zero(net.w[i].rows(), net.w[i].cols());
    vw[i] = mw[i];
    mb[i] = Eigen::VectorXd::Zero(net.b[i].size());
    vb[i] = mb[i];
  }

  Rng shuffle_rng = Rng(cfg.seed).derive(0x5u);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(cfg.epochs));
  long t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1],
                order[static_cast<std::size_t>(shuffle_rng.uniform_int(0, static_cast<int>(i) - 1))]);
    }
    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t off = 0; off < order.size(); off += static_cast<std::size_t>(cfg.batch)) {
      std::vector<Eigen::VectorXd> batch;
      for (std::size_t i = off; i < std::min(order.size(), off + static_cast<std::size_t>(cfg.batch)); ++i) {
        batch.push_back(data[order[i]]);
      }
      double loss = net.batch_loss(batch);
      if (!std::isfinite(loss)) throw std::runtime_error("train: non-finite loss");
      epoch_loss += loss;
      ++batches;
      auto [gw, gb] = net.gradients(batch);
      ++t;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
      for (std::size_t i = 0; i < n; ++i) {
        mw[i] = cfg.beta1 * mw[i] + (1.0 - cfg.beta1) * gw[i];
        vw[i] = cfg.beta2 * vw[i].array().matrix() +
                (1.0 - cfg.beta2) * gw[i].array().square().matrix();
        net.w[i] -= (cfg.lr * (mw[i] / c1).array() /
                     ((vw[i] / c2).array().sqrt() + cfg.adam_eps))
                        .matrix();
        net.w[i] = net.w[i].cwiseMax(0.0);
        mb[i] = cfg.beta1 * mb[i] + (1.0 - cfg.beta1) * gb[i];
        vb[i] = cfg.beta2 * vb[i].array().matrix() +
                (1.0 - cfg.beta2) * gb[i].array().square().matrix();
        net.b[i] -= (cfg.lr * (mb[i] / c1).array() /
                     ((vb[i] / c2).array().sqrt() + cfg.adam_eps))
                        .matrix();
        net.b[i] = net.b[i].cwiseMax(0.0);
      }
    }
    history.push_back(epoch_loss / std::max(batches, 1));
  }
  return {net.to_network(), std::move(history)};
}

// ---- dataset generation and container file -----------------------------

inline std::vector<Eigen::VectorXd> generate_dataset(int samples, int dim, std::uint64_t seed) {
  Rng base(seed);
  std::vector<Eigen::VectorXd> data;
  data.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    Rng sub = base.derive(static_cast<std::uint64_t>(s));
    MixtureSpec spec = random_mixture(sub);
    data.push_back(sample_spectrum(spec, dim));
  }
  return data;
}

// Dataset file format v1: {"format": "nnfix-dataset", "version": 1,
//   "seed": <u64>, "dim": <int>, "samples": [[...], ...]}
inline void save_dataset(const std::vector<Eigen::VectorXd>& data, int dim,
                         std::uint64_t seed, const std::string& path) {
  nlohmann::json doc;
  doc["format"] = "nnfix-dataset";
  doc["version"] = 1;
  doc["seed"] = seed;
  doc["dim"] = dim;
  auto samples = nlohmann::json::array();
  for (const auto& x : data) {
    auto row = nlohmann::json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(x(i));
    samples.push_back(std::move(row));
  }
  doc["samples"] = std::move(samples);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump() << "\n";
}

inline std::vector<Eigen::VectorXd> load_dataset(const std::string& path, int* dim_out = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  if (doc.value("format", "") != "nnfix-dataset" || doc.value("version", 0) != 1) {
    throw std::invalid_argument("not a v1 nnfix-dataset document");
  }
  const int dim = doc.at("dim").get<int>();
  if (dim_out) *dim_out = dim;
  std::vector<Eigen::VectorXd> data;
  for (const auto& row : doc.at("samples")) {
    if (static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument("dataset row dimension mismatch");
    }
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x(i) = row[static_cast<std::size_t>(i)].get<double>();
    data.push_back(std::move(x));
  }
  return data;
}

}  // namespace nnfix
