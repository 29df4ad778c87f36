#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nnfix {

// Scalar activation catalog. The L1 entries have derivative tending to 0 at
// +infinity, the L2 entries have derivative tending to 1.
enum class Act {
  Sigmoid,
  CappedRelu,  // min{max{xi,0}, beta}, beta > 0
  SaturatedLinear,
  InvSqrtUnit,  // xi / sqrt(1 + xi^2)
  ArctanScaled, // (2/pi) atan(xi)
  Tanh,
  Asinh,
  Elliott,      // xi / (1 + |xi|)
  Logarithmic,  // sign(xi) ln(1 + |xi|)
  Relu,
  InvSqrtLinearUnit,  // xi if xi >= 0, else xi / sqrt(1 + xi^2)
};

enum class AsymptoteClass { L1, L2 };

struct Activation {
  Act kind = Act::Relu;
  double beta = 0.0;  // cap of CappedRelu, unused otherwise

  Activation() = default;

  explicit Activation(Act k, double cap = 0.0) : kind(k), beta(cap) {
    if (kind == Act::CappedRelu && !(beta > 0.0)) {
      throw std::invalid_argument("capped_relu requires beta > 0");
    }
  }

  AsymptoteClass asymptote_class() const {
    return (kind == Act::Relu || kind == Act::InvSqrtLinearUnit)
               ? AsymptoteClass::L2
               : AsymptoteClass::L1;
  }

  bool strictly_monotone_on_nonneg() const {
    return kind != Act::CappedRelu && kind != Act::SaturatedLinear;
  }

  // every catalog entry is concave on the nonnegative half-line
  bool concave_on_nonneg() const { return true; }

  // only the sigmoid is scalable as a standalone coordinate map
  bool scalable_alone() const { return kind == Act::Sigmoid; }

  double eval(double xi) const {
    switch (kind) {
      case Act::Sigmoid:
        return 1.0 / (1.0 + std::exp(-xi));
      case Act::CappedRelu:
        return std::min(std::max(xi, 0.0), beta);
      case Act::SaturatedLinear:
        return xi > 1.0 ? 1.0 : (xi < -1.0 ? -1.0 : xi);
      case Act::InvSqrtUnit:
        return xi / std::sqrt(1.0 + xi * xi);
      case Act::ArctanScaled:
        return (2.0 / std::numbers::pi) * std::atan(xi);
      case Act::Tanh:
        return std::tanh(xi);
      case Act::Asinh:
        return std::asinh(xi);
      case Act::Elliott:
        return xi / (1.0 + std::abs(xi));
      case Act::Logarithmic:
        return xi >= 0.0 ? std::log1p(xi) : -std::log1p(-xi);
      case Act::Relu:
        return xi > 0.0 ? xi : 0.0;
      case Act::InvSqrtLinearUnit:
        return xi >= 0.0 ? xi : xi / std::sqrt(1.0 + xi * xi);
    }
    throw std::logic_error("unknown activation kind");
  }

  // Right-hand derivative at the kink points of the piecewise entries.
  double derivative(double xi) const {
    switch (kind) {
      case Act::Sigmoid: {
        double s = eval(xi);
        return s * (1.0 - s);
      }
      case Act::CappedRelu:
        return (xi >= 0.0 && xi < beta) ? 1.0 : 0.0;
      case Act::SaturatedLinear:
        return (xi >= -1.0 && xi < 1.0) ? 1.0 : 0.0;
      case Act::InvSqrtUnit:
        return std::pow(1.0 + xi * xi, -1.5);
      case Act::ArctanScaled:
        return (2.0 / std::numbers::pi) / (1.0 + xi * xi);
      case Act::Tanh: {
        double t = std::tanh(xi);
        return 1.0 - t * t;
      }
      case Act::Asinh:
        return 1.0 / std::sqrt(1.0 + xi * xi);
      case Act::Elliott: {
        double d = 1.0 + std::abs(xi);
        return 1.0 / (d * d);
      }
      case Act::Logarithmic:
        return 1.0 / (1.0 + std::abs(xi));
      case Act::Relu:
        return xi >= 0.0 ? 1.0 : 0.0;
      case Act::InvSqrtLinearUnit:
        return xi >= 0.0 ? 1.0 : std::pow(1.0 + xi * xi, -1.5);
    }
    throw std::logic_error("unknown activation kind");
  }

  std::string name() const {
    switch (kind) {
      case Act::Sigmoid: return "sigmoid";
      case Act::CappedRelu: return "capped_relu";
      case Act::SaturatedLinear: return "saturated_linear";
      case Act::InvSqrtUnit: return "inv_sqrt_unit";
      case Act::ArctanScaled: return "arctan_scaled";
      case Act::Tanh: return "tanh";
      case Act::Asinh: return "asinh";
      case Act::Elliott: return "elliott";
      case Act::Logarithmic: return "logarithmic";
      case Act::Relu: return "relu";
      case Act::InvSqrtLinearUnit: return "inv_sqrt_linear_unit";
    }
    throw std::logic_error("unknown activation kind");
  }

  static Activation from_name(const std::string& name, double beta = 0.0) {
    if (name == "sigmoid") return Activation(Act::Sigmoid);
    if (name == "capped_relu") return Activation(Act::CappedRelu, beta);
    if (name == "saturated_linear") return Activation(Act::SaturatedLinear);
    if (name == "inv_sqrt_unit") return Activation(Act::InvSqrtUnit);
    if (name == "arctan_scaled") return Activation(Act::ArctanScaled);
    if (name == "tanh") return Activation(Act::Tanh);
    if (name == "asinh") return Activation(Act::Asinh);
    if (name == "elliott") return Activation(Act::Elliott);
    if (name == "logarithmic") return Activation(Act::Logarithmic);
    if (name == "relu") return Activation(Act::Relu);
    if (name == "inv_sqrt_linear_unit") return Activation(Act::InvSqrtLinearUnit);
    throw std::invalid_argument("unknown activation name: " + name);
  }

  friend bool operator==(const Activation& a, const Activation& b) {
    return a.kind == b.kind && (a.kind != Act::CappedRelu || a.beta == b.beta);
  }
};

}  // namespace nnfix
