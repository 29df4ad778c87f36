#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "nnfix/analysis.hpp"
#include "nnfix/mixture.hpp"
#include "nnfix/train.hpp"
#include "test_util.hpp"

using nnfix::Act;
using nnfix::MixtureSpec;
using nnfix::Network;
using nnfix::TrainConfig;
using nnfix::TrainableNet;

namespace {

// small configuration for fast unit tests
TrainConfig tiny_config() {
  TrainConfig cfg;
  cfg.input_dim = 6;
  cfg.hidden = {8, 3, 8};
  cfg.samples = 64;
  cfg.epochs = 10;
  cfg.batch = 16;
  return cfg;
}

}  // namespace

TEST_CASE("mixture density basics") {
  MixtureSpec spec;
  spec.count = 1;
  spec.weights = {1.0};
  spec.means = {0.0};
  spec.stddevs = {std::numbers::pi / 60.0};
  spec.validate();
  // symmetric single Gaussian: density is even and peaks at the mean
  CHECK(spec.eval(0.3) == doctest::Approx(spec.eval(-0.3)).epsilon(1e-14));
  CHECK(spec.eval(0.0) > spec.eval(0.1));
  Eigen::VectorXd grid = nnfix::sample_spectrum(spec, 36);
  CHECK((grid.array() >= 0.0).all());
  // even dim midpoint grid mirrors around 0 for a centered component
  for (int j = 0; j < 18; ++j) {
    CHECK(grid(j) == doctest::Approx(grid(35 - j)).epsilon(1e-12));
  }

  MixtureSpec bad = spec;
  bad.weights = {0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.stddevs = {0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(nnfix::sample_spectrum(spec, 1), std::invalid_argument);
}

TEST_CASE("random mixtures are valid, deterministic and in range") {
  nnfix::Rng rng(61);
  double count_sum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    MixtureSpec spec = nnfix::random_mixture(rng);
    spec.validate();
    count_sum += spec.count;
    for (double m : spec.means) {
      CHECK(m >= -std::numbers::pi / 2.0);
      CHECK(m <= std::numbers::pi / 2.0);
    }
    for (double s : spec.stddevs) {
      CHECK(s >= std::numbers::pi / 90.0 - 1e-15);
      CHECK(s <= std::numbers::pi / 45.0 + 1e-15);
    }
  }
  // count is uniform on {1..5}: mean 3 +- sampling noise
  CHECK(count_sum / draws == doctest::Approx(3.0).epsilon(0.05));

  MixtureSpec a = nnfix::random_mixture(static_cast<std::uint64_t>(99));
  MixtureSpec b = nnfix::random_mixture(static_cast<std::uint64_t>(99));
  CHECK(a.count == b.count);
  for (int k = 0; k < a.count; ++k) {
    CHECK(a.weights[static_cast<std::size_t>(k)] == b.weights[static_cast<std::size_t>(k)]);
    CHECK(a.means[static_cast<std::size_t>(k)] == b.means[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("initial autoencoder network") {
  TrainConfig cfg = tiny_config();
  Network net = nnfix::init_network(cfg);
  CHECK(net.depth() == 4);
  CHECK(net.input_dim() == cfg.input_dim);
  CHECK(net.output_dim() == cfg.input_dim);
  for (std::size_t i = 0; i < net.depth(); ++i) {
    const auto& l = net.layers()[i];
    CHECK((l.weights.array() >= 0.0).all());
    CHECK((l.weights.array() <= 1.0).all());
    CHECK(l.bias.lpNorm<Eigen::Infinity>() == 0.0);
    for (const auto& a : l.acts) {
      CHECK(a.kind == (i + 1 == net.depth() ? Act::Relu : Act::Tanh));
    }
  }
  // determinism: same seed, same weights
  Network again = nnfix::init_network(cfg);
  for (std::size_t i = 0; i < net.depth(); ++i) {
    CHECK((net.layers()[i].weights.array() == again.layers()[i].weights.array()).all());
  }
  // saturating layers mean zero asymptote and base property level
  CHECK(nnfix::classify(net).level == nnfix::PropertyLevel::A3A4);
  CHECK(nnfix::asymptotic_map(net).variant == nnfix::AsymptoticMap::Variant::Zero);
  CHECK(nnfix::certify(net).spectral_radius == 0.0);
}

TEST_CASE("backprop gradients match finite differences") {
  TrainConfig cfg;
  cfg.input_dim = 3;
  cfg.hidden = {4, 2, 4};
  cfg.samples = 4;
  TrainableNet net = TrainableNet::autoencoder(cfg);
  std::vector<Eigen::VectorXd> batch;
  nnfix::Rng rng(67);
  for (int s = 0; s < 4; ++s) batch.push_back(testutil::random_nonneg_vector(rng, 3, 1.0));
  auto [gw, gb] = net.gradients(batch);
  const double h = 1e-6;
  for (std::size_t i = 0; i < net.depth(); ++i) {
    for (Eigen::Index r = 0; r < net.w[i].rows(); ++r) {
      for (Eigen::Index c = 0; c < net.w[i].cols(); ++c) {
        double keep = net.w[i](r, c);
        net.w[i](r, c) = keep + h;
        double up = net.batch_loss(batch);
        net.w[i](r, c) = keep - h;
        double down = net.batch_loss(batch);
        net.w[i](r, c) = keep;
        CHECK(gw[i](r, c) == doctest::Approx((up - down) / (2.0 * h)).epsilon(1e-4));
      }
    }
    for (Eigen::Index r = 0; r < net.b[i].size(); ++r) {
      double keep = net.b[i](r);
      net.b[i](r) = keep + h;
      double up = net.batch_loss(batch);
      net.b[i](r) = keep - h;
      double down = net.batch_loss(batch);
      net.b[i](r) = keep;
      CHECK(gb[i](r) == doctest::Approx((up - down) / (2.0 * h)).epsilon(1e-4));
    }
  }
}

TEST_CASE("training respects nonnegativity and reduces the loss") {
  TrainConfig cfg = tiny_config();
  auto data = nnfix::generate_dataset(cfg.samples, cfg.input_dim, cfg.seed);
  nnfix::TrainResult result = nnfix::train(cfg, data);
  REQUIRE(result.loss_history.size() == static_cast<std::size_t>(cfg.epochs));
  for (const auto& l : result.net.layers()) {
    CHECK((l.weights.array() >= 0.0).all());
    CHECK((l.bias.array() >= 0.0).all());
  }
  // untrained baseline
  Network init = nnfix::init_network(cfg);
  double before = 0.0, after = 0.0;
  for (const auto& x : data) {
    before += (init.forward(x) - x).squaredNorm();
    after += (result.net.forward(x) - x).squaredNorm();
  }
  CHECK(after < before);
  CHECK(result.loss_history.back() < result.loss_history.front());

  // lr = 0 leaves the parameters at initialization
  TrainConfig frozen = cfg;
  frozen.lr = 0.0;
  frozen.epochs = 2;
  nnfix::TrainResult still = nnfix::train(frozen, data);
  for (std::size_t i = 0; i < init.depth(); ++i) {
    CHECK((still.net.layers()[i].weights.array() == init.layers()[i].weights.array()).all());
  }
}

TEST_CASE("training is deterministic in the seed") {
  TrainConfig cfg = tiny_config();
  cfg.epochs = 3;
  auto data = nnfix::generate_dataset(cfg.samples, cfg.input_dim, cfg.seed);
  auto r1 = nnfix::train(cfg, data);
  auto r2 = nnfix::train(cfg, data);
  REQUIRE(r1.loss_history.size() == r2.loss_history.size());
  for (std::size_t i = 0; i < r1.loss_history.size(); ++i) {
    CHECK(r1.loss_history[i] == r2.loss_history[i]);
  }
  for (std::size_t i = 0; i < r1.net.depth(); ++i) {
    CHECK((r1.net.layers()[i].weights.array() == r2.net.layers()[i].weights.array()).all());
  }
}

TEST_CASE("train input validation") {
  TrainConfig cfg = tiny_config();
  CHECK_THROWS_AS(nnfix::train(cfg, {}), std::invalid_argument);
  std::vector<Eigen::VectorXd> wrong = {Eigen::VectorXd::Zero(2)};
  CHECK_THROWS_AS(nnfix::train(cfg, wrong), std::invalid_argument);
  TrainConfig bad = cfg;
  bad.hidden[1] = cfg.input_dim;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("dataset file round trip") {
  auto data = nnfix::generate_dataset(5, 8, 12345);
  REQUIRE(data.size() == 5);
  for (const auto& x : data) CHECK((x.array() >= 0.0).all());
  // per-sample derived seeds: regeneration is reproducible
  auto again = nnfix::generate_dataset(5, 8, 12345);
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK((data[i].array() == again[i].array()).all());
  }
  const std::string path = "roundtrip_dataset.json";
  nnfix::save_dataset(data, 8, 12345, path);
  int dim = 0;
  auto back = nnfix::load_dataset(path, &dim);
  CHECK(dim == 8);
  REQUIRE(back.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK((data[i].array() == back[i].array()).all());
  }
  std::remove(path.c_str());
}
