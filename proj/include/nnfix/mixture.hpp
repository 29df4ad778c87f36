#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nnfix/rng.hpp"

namespace nnfix {

// Gaussian-mixture angular spectra on (-pi/2, pi/2).
struct MixtureSpec {
  int count = 1;                  // 1..5 Gaussians
  std::vector<double> weights;    // nonnegative, sum to 1
  std::vector<double> means;      // in [-pi/2, pi/2]
  std::vector<double> stddevs;    // in [pi/90, pi/45]

  void validate() const {
    if (count < 1 || count > 5) throw std::invalid_argument("mixture count must be in 1..5");
    const auto n = static_cast<std::size_t>(count);
    if (weights.size() != n || means.size() != n || stddevs.size() != n) {
      throw std::invalid_argument("mixture component arrays must have length count");
    }
    double sum = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("mixture weight negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
    for (double s : stddevs) {
      if (!(s > 0.0)) throw std::invalid_argument("mixture stddev must be positive");
    }
  }

  double eval(double theta) const {
    double f = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      double d = theta - means[k];
      double s = stddevs[k];
      f += weights[k] / (std::sqrt(2.0 * std::numbers::pi) * s) *
           std::exp(-d * d / (2.0 * s * s));
    }
    return f;
  }
};

// dim samples of the mixture on the midpoint grid of (-pi/2, pi/2).
inline Eigen::VectorXd sample_spectrum(const MixtureSpec& spec, int dim) {
  if (dim < 2) throw std::invalid_argument("sample_spectrum: dim must be >= 2");
  spec.validate();
  Eigen::VectorXd out(dim);
  const double pi = std::numbers::pi;
  for (int j = 0; j < dim; ++j) {
    double theta = -pi / 2.0 + (j + 0.5) * pi / dim;
    out(j) = spec.eval(theta);
  }
  return out;
}

// Component count uniform on {1..5}, means uniform on [-pi/2, pi/2], stddevs
// uniform on [pi/90, pi/45], weights uniform then normalized.
inline MixtureSpec random_mixture(Rng& rng) {
  const double pi = std::numbers::pi;
  MixtureSpec spec;
  spec.count = rng.uniform_int(1, 5);
  double sum = 0.0;
  for (int k = 0; k < spec.count; ++k) {
    double w = rng.uniform();
    spec.weights.push_back(w);
    sum += w;
    spec.means.push_back(rng.uniform(-pi / 2.0, pi / 2.0));
    spec.stddevs.push_back(rng.uniform(pi / 90.0, pi / 45.0));
  }
  if (sum <= 0.0) sum = 1.0;
  for (double& w : spec.weights) w /= sum;
  return spec;
}

inline MixtureSpec random_mixture(std::uint64_t seed) {
  Rng rng(seed);
  return random_mixture(rng);
}

}  // namespace nnfix
