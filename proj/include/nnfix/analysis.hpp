#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnfix/cone_map.hpp"
#include "nnfix/network.hpp"
#include "nnfix/rng.hpp"

namespace nnfix {

// ---- property classification -------------------------------------------

enum class PropertyLevel { A3A4, A3A5, Unknown };

struct DerivationStep {
  std::string rule;  // clause of the layer/network construction rules
  int layer;         // 0-based layer index, -1 for network-level steps
};

struct PropertyClass {
  PropertyLevel level = PropertyLevel::Unknown;
  std::vector<DerivationStep> derivation;
};

inline const char* property_level_name(PropertyLevel l) {
  switch (l) {
    case PropertyLevel::A3A4: return "A3_A4";
    case PropertyLevel::A3A5: return "A3_A5";
    case PropertyLevel::Unknown: return "unknown";
  }
  return "unknown";
}

// Nonnegative parameters give monotonicity + weak scalability outright.
// The upgrade to scalability needs a scalability source (positive bias
// vector or an all-sigmoid layer) followed only by strictly monotone layers,
// or the coordinate-wise propagation rule: a scalable coordinate feeding a
// strictly monotone neuron through a positive weight stays scalable.
inline PropertyClass classify(const Network& net, double eps_pos = kEpsPos) {
  PropertyClass pc;
  pc.level = PropertyLevel::A3A4;
  pc.derivation.push_back({"L2.1", -1});
  pc.derivation.push_back({"C1.1", -1});

  const auto& layers = net.layers();
  const int n = static_cast<int>(layers.size());

  auto strictly_monotone_from = [&](int i0) {
    for (int i = i0; i < n; ++i) {
      if (!layers[static_cast<std::size_t>(i)].all_strictly_monotone()) return false;
    }
    return true;
  };

  for (int i0 = 0; i0 < n; ++i0) {
    const Layer& layer = layers[static_cast<std::size_t>(i0)];
    if ((layer.bias.array() > eps_pos).all() && strictly_monotone_from(i0)) {
      pc.level = PropertyLevel::A3A5;
      pc.derivation.push_back({"L2.2", i0});
      pc.derivation.push_back({"L2.5", i0});
      pc.derivation.push_back({"C1.2", -1});
      return pc;
    }
    bool all_sigmoid = true;
    for (const auto& a : layer.acts) all_sigmoid = all_sigmoid && a.scalable_alone();
    if (all_sigmoid && strictly_monotone_from(i0 + 1)) {
      pc.level = PropertyLevel::A3A5;
      pc.derivation.push_back({"F1.4", i0});
      pc.derivation.push_back({"L2.4", i0});
      pc.derivation.push_back({"C1.2", -1});
      return pc;
    }
  }

  // coordinate-level scalability propagation
  std::vector<bool> scalable(static_cast<std::size_t>(net.input_dim()), false);
  for (int i = 0; i < n; ++i) {
    const Layer& layer = layers[static_cast<std::size_t>(i)];
    std::vector<bool> next(static_cast<std::size_t>(layer.out_dim()), false);
    bool progressed = false;
    for (Eigen::Index j = 0; j < layer.out_dim(); ++j) {
      const Activation& a = layer.acts[static_cast<std::size_t>(j)];
      bool s = a.scalable_alone();
      if (!s && a.strictly_monotone_on_nonneg()) {
        if (layer.bias(j) > eps_pos) {
          s = true;
        } else {
          for (Eigen::Index l = 0; l < layer.in_dim(); ++l) {
            if (scalable[static_cast<std::size_t>(l)] && layer.weights(j, l) > eps_pos) {
              s = true;
              break;
            }
          }
        }
      }
      next[static_cast<std::size_t>(j)] = s;
      progressed = progressed || s;
    }
    if (progressed) pc.derivation.push_back({"C2", i});
    scalable = std::move(next);
  }
  bool all_scalable = true;
  for (bool s : scalable) all_scalable = all_scalable && s;
  if (all_scalable && !scalable.empty()) {
    pc.level = PropertyLevel::A3A5;
    pc.derivation.push_back({"C1.2", -1});
  }
  return pc;
}

// ---- asymptotic map ------------------------------------------------------

struct AsymptoticMap {
  enum class Variant { Zero, Linear, NumericOnly };
  Variant variant = Variant::Zero;
  Eigen::MatrixXd matrix;  // k x k; zero for Variant::Zero, estimate for NumericOnly
};

inline const char* asymptotic_variant_name(AsymptoticMap::Variant v) {
  switch (v) {
    case AsymptoticMap::Variant::Zero: return "Zero";
    case AsymptoticMap::Variant::Linear: return "Linear";
    case AsymptoticMap::Variant::NumericOnly: return "NumericOnly";
  }
  return "Zero";
}

// Zero when some layer uses only saturating (L1) activations; the product of
// the weight matrices when every layer is purely L2. Layers that mix L1 and
// L2 neurons fall outside both cases, so the map is estimated numerically at
// a large scale factor.
inline AsymptoticMap asymptotic_map(const Network& net, double p_limit = 1e8) {
  if (!net.is_self_map()) throw std::invalid_argument("asymptotic_map requires a self-map");
  const Eigen::Index k = net.input_dim();
  bool any_all_l1 = false, all_l2 = true;
  for (const Layer& layer : net.layers()) {
    any_all_l1 = any_all_l1 || layer.all_in(AsymptoteClass::L1);
    all_l2 = all_l2 && layer.all_in(AsymptoteClass::L2);
  }
  AsymptoticMap out;
  if (any_all_l1) {
    out.variant = AsymptoticMap::Variant::Zero;
    out.matrix = Eigen::MatrixXd::Zero(k, k);
  } else if (all_l2) {
    out.variant = AsymptoticMap::Variant::Linear;
    out.matrix = net.weight_product();
  } else {
    out.variant = AsymptoticMap::Variant::NumericOnly;
    out.matrix.resize(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
      e(j) = p_limit;
      out.matrix.col(j) = net.forward(e) / p_limit;
    }
  }
  return out;
}

// ---- spectral radius -------------------------------------------------------

// Power iteration on M + delta*I; the shift escapes nilpotent annihilation of
// the starting vector and is subtracted from the reported value.
inline double spectral_radius(const Eigen::MatrixXd& m, double rel_tol = 1e-12,
                              int max_iter = 100000, double delta = 1e-12) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
  if ((m.array() < 0.0).any()) throw std::invalid_argument("spectral_radius: negative entry");
  const Eigen::Index k = m.rows();
  Eigen::MatrixXd a = m + delta * Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(k);
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = a * x;
    double next = x.dot(y) / x.dot(x);
    if (it > 0 && std::abs(next - lambda) < rel_tol * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
    double norm = y.lpNorm<Eigen::Infinity>();
    x = y / norm;
  }
  return std::max(lambda - delta, 0.0);
}

// ---- operator norm bounds ---------------------------------------------------

enum class OperatorNorm { Spectral, One, Inf };

inline const char* operator_norm_name(OperatorNorm n) {
  switch (n) {
    case OperatorNorm::Spectral: return "spectral";
    case OperatorNorm::One: return "one";
    case OperatorNorm::Inf: return "inf";
  }
  return "spectral";
}

inline double operator_norm(const Eigen::MatrixXd& m, OperatorNorm n) {
  switch (n) {
    case OperatorNorm::Spectral: {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
      return svd.singularValues()(0);
    }
    case OperatorNorm::One:
      return m.cwiseAbs().colwise().sum().maxCoeff();
    case OperatorNorm::Inf:
      return m.cwiseAbs().rowwise().sum().maxCoeff();
  }
  throw std::logic_error("unknown operator norm");
}

// (prod_i ||W_i||, ||prod_i W_i||); the chain rho <= composite <= product
// holds for any operator norm when the asymptotic map is linear.
inline std::pair<double, double> norm_bounds(const Network& net, OperatorNorm n) {
  if (!net.is_self_map()) throw std::invalid_argument("norm_bounds requires a self-map");
  double product = 1.0;
  for (const Layer& layer : net.layers()) product *= operator_norm(layer.weights, n);
  double composite = operator_norm(net.weight_product(), n);
  return {product, composite};
}

// ---- primitivity -----------------------------------------------------------

// Smallest m <= m_max with T^m(0) entrywise positive; certifies strong
// primitivity of T.
inline std::optional<int> primitivity_certificate(const Network& net, int m_max,
                                                  double eps_pos = kEpsPos) {
  if (!net.is_self_map()) throw std::invalid_argument("primitivity requires a self-map");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(net.input_dim());
  for (int m = 1; m <= m_max; ++m) {
    x = net.forward(x);
    if ((x.array() > eps_pos).all()) return m;
  }
  return std::nullopt;
}

// Boolean reachability powers up to the Wielandt bound (k-1)^2 + 1.
inline bool matrix_primitivity(const Eigen::MatrixXd& m, double eps_pos = kEpsPos) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_primitivity: not square");
  const Eigen::Index k = m.rows();
  using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
  BoolMat b = (m.array() > eps_pos).matrix();
  BoolMat p = b;
  const long bound = (k - 1) * (k - 1) + 1;
  for (long step = 1; step <= bound; ++step) {
    if (p.all()) return true;
    BoolMat next = BoolMat::Constant(k, k, false);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        for (Eigen::Index l = 0; l < k; ++l) {
          if (p(i, l) && b(l, j)) {
            next(i, j) = true;
            break;
          }
        }
      }
    }
    p = std::move(next);
  }
  return p.all();
}

// Sufficient condition for lower- and upper-primitivity at u.
inline bool jacobian_primitivity_at(const Network& net, const Eigen::VectorXd& u,
                                    double eps_pos = kEpsPos) {
  return matrix_primitivity(net.jacobian(u), eps_pos);
}

// ---- fixed-point iteration ---------------------------------------------------

struct IterationResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // ||f(x) - x||_inf at the returned point
  int iterations = 0;
  bool converged = false;
};

inline IterationResult iterate_fixed_point(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
    double tol, int max_iter) {
  IterationResult res;
  res.x = std::move(x0);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd next = f(res.x);
    double step = (next - res.x).lpNorm<Eigen::Infinity>();
    res.x = std::move(next);
    res.iterations = it + 1;
    if (step < tol) {
      res.converged = true;
      break;
    }
  }
  res.residual = (f(res.x) - res.x).lpNorm<Eigen::Infinity>();
  return res;
}

inline IterationResult iterate_fixed_point(const Network& net, const Eigen::VectorXd& x0,
                                           double tol, int max_iter) {
  if (!net.is_self_map()) throw std::invalid_argument("fixed-point iteration requires a self-map");
  if (x0.size() != net.input_dim()) throw std::invalid_argument("start dimension mismatch");
  if ((x0.array() < 0.0).any()) throw std::invalid_argument("start has negative entries");
  return iterate_fixed_point([&net](const Eigen::VectorXd& x) { return net.forward(x); }, x0,
                             tol, max_iter);
}

// ---- fixed-point interval along the ray through an anchor -------------------

struct IntervalEstimate {
  Eigen::VectorXd anchor;
  double s0 = 1.0;
  double t0 = 1.0;
  bool s0_zero_limit = false;   // every scale down to the grid edge stayed fixed
  bool t0_unbounded = false;    // every scale up to the grid edge stayed fixed
  std::vector<std::pair<double, bool>> samples;  // (lambda, is_fixed)
};

// Scans is_fixed(lambda) = ||f(lambda u) - lambda u||_inf < tol on a geometric
// grid over [1/lambda_max, lambda_max] and bisects the boundary transitions.
inline IntervalEstimate interval_scan(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& u,
    double lambda_max = 1e6, int grid = 200, double tol = 1e-9) {
  if (!(u.array() > 0.0).all()) throw std::invalid_argument("interval_scan: anchor not positive");
  auto is_fixed = [&](double lambda) {
    Eigen::VectorXd p = lambda * u;
    return (f(p) - p).lpNorm<Eigen::Infinity>() < tol;
  };
  if (!is_fixed(1.0)) throw std::invalid_argument("interval_scan: anchor is not a fixed point");

  IntervalEstimate est;
  est.anchor = u;

  std::vector<double> lambdas;
  lambdas.reserve(static_cast<std::size_t>(grid) + 1);
  const double lo = 1.0 / lambda_max;
  for (int i = 0; i < grid; ++i) {
    double t = static_cast<double>(i) / (grid - 1);
    lambdas.push_back(lo * std::pow(lambda_max / lo, t));
  }
  lambdas.push_back(1.0);
  std::sort(lambdas.begin(), lambdas.end());

  for (double l : lambdas) est.samples.emplace_back(l, is_fixed(l));

  auto it_one = std::lower_bound(lambdas.begin(), lambdas.end(), 1.0);
  const std::size_t idx_one = static_cast<std::size_t>(it_one - lambdas.begin());

  // bisect the transition between a fixed and a non-fixed scale, in log space
  auto bisect = [&](double fixed_l, double unfixed_l) {
    while (std::abs(std::log(unfixed_l / fixed_l)) > 1e-8) {
      double mid = std::sqrt(fixed_l * unfixed_l);
      if (is_fixed(mid)) {
        fixed_l = mid;
      } else {
        unfixed_l = mid;
      }
    }
    return fixed_l;
  };

  // downward from lambda = 1
  std::size_t i = idx_one;
  while (i > 0 && est.samples[i - 1].second) --i;
  if (i == 0) {
    est.s0_zero_limit = true;
    est.s0 = 0.0;
  } else {
    est.s0 = bisect(est.samples[i].first, est.samples[i - 1].first);
  }

  // upward from lambda = 1
  std::size_t j = idx_one;
  while (j + 1 < est.samples.size() && est.samples[j + 1].second) ++j;
  if (j + 1 == est.samples.size()) {
    est.t0_unbounded = true;
    est.t0 = std::numeric_limits<double>::infinity();
  } else {
    est.t0 = bisect(est.samples[j].first, est.samples[j + 1].first);
  }
  return est;
}

inline IntervalEstimate interval_scan(const Network& net, const Eigen::VectorXd& u,
                                      double lambda_max = 1e6, int grid = 200,
                                      double tol = 1e-9) {
  if (!net.is_self_map()) throw std::invalid_argument("interval_scan requires a self-map");
  return interval_scan([&net](const Eigen::VectorXd& x) { return net.forward(x); }, u,
                       lambda_max, grid, tol);
}

// ---- full certificate --------------------------------------------------------

enum class Verdict {
  UniquePositiveFixedPoint,
  NonemptyFixedPointSet,
  EmptyInInterior,
  EmptyFixedPointSet,
  Inconclusive,
};

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::UniquePositiveFixedPoint: return "UniquePositiveFixedPoint";
    case Verdict::NonemptyFixedPointSet: return "NonemptyFixedPointSet";
    case Verdict::EmptyInInterior: return "EmptyInInterior";
    case Verdict::EmptyFixedPointSet: return "EmptyFixedPointSet";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct CertifyBudget {
  int m_max = 100;
  double tol = 1e-9;
  int max_iter = 10000;
  int starts = 10;
  std::uint64_t seed = 1;
  OperatorNorm norm = OperatorNorm::Spectral;
  double eps_pos = kEpsPos;
};

struct Certificate {
  PropertyClass property_class;
  AsymptoticMap::Variant asymptotic = AsymptoticMap::Variant::Zero;
  double spectral_radius = 0.0;
  OperatorNorm norm = OperatorNorm::Spectral;
  double norm_bound_product = 0.0;
  double norm_bound_composite = 0.0;
  std::optional<int> primitivity_exponent;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Eigen::VectorXd> fixed_point;
  std::optional<double> residual_sup_norm;
  std::optional<double> worst_pairwise_distance;  // across random-start iterates
};

inline constexpr double kRhoBoundaryBand = 1e-9;     // rho within this of 1 -> Inconclusive
inline constexpr double kNumericOnlyMargin = 1e-3;   // required slack below 1 for estimates

inline Certificate certify(const Network& net, const CertifyBudget& budget = {}) {
  if (!net.is_self_map()) throw std::invalid_argument("certify requires a self-map");
  Certificate cert;
  cert.property_class = classify(net, budget.eps_pos);
  AsymptoticMap am = asymptotic_map(net);
  cert.asymptotic = am.variant;
  cert.spectral_radius =
      am.variant == AsymptoticMap::Variant::Zero ? 0.0 : spectral_radius(am.matrix);
  cert.norm = budget.norm;
  std::tie(cert.norm_bound_product, cert.norm_bound_composite) = norm_bounds(net, budget.norm);
  cert.primitivity_exponent = primitivity_certificate(net, budget.m_max, budget.eps_pos);

  bool all_concave = true;
  for (const Layer& layer : net.layers()) {
    for (const Activation& a : layer.acts) all_concave = all_concave && a.concave_on_nonneg();
  }

  const double rho = cert.spectral_radius;
  if (std::abs(rho - 1.0) <= kRhoBoundaryBand) {
    cert.verdict = Verdict::Inconclusive;
  } else if (am.variant == AsymptoticMap::Variant::NumericOnly &&
             !(rho < 1.0 - kNumericOnlyMargin)) {
    // the asymptotic map is only an estimate here; stay sound
    cert.verdict = Verdict::Inconclusive;
  } else if (rho < 1.0) {
    if (cert.property_class.level == PropertyLevel::A3A5 ||
        (all_concave && cert.primitivity_exponent.has_value())) {
      cert.verdict = Verdict::UniquePositiveFixedPoint;
    } else {
      cert.verdict = Verdict::NonemptyFixedPointSet;
    }
  } else {
    cert.verdict = cert.primitivity_exponent.has_value() ? Verdict::EmptyFixedPointSet
                                                         : Verdict::EmptyInInterior;
  }

  if (cert.verdict == Verdict::UniquePositiveFixedPoint ||
      cert.verdict == Verdict::NonemptyFixedPointSet) {
    IterationResult from_zero = iterate_fixed_point(
        net, Eigen::VectorXd::Zero(net.input_dim()), budget.tol, budget.max_iter);
    cert.fixed_point = from_zero.x;
    cert.residual_sup_norm = from_zero.residual;
    std::vector<Eigen::VectorXd> points{from_zero.x};
    Rng rng(budget.seed);
    for (int s = 0; s < budget.starts; ++s) {
      Rng sub = rng.derive(static_cast<std::uint64_t>(s) + 1);
      Eigen::VectorXd x0(net.input_dim());
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = sub.uniform(0.0, 10.0);
      IterationResult r = iterate_fixed_point(net, x0, budget.tol, budget.max_iter);
      if (r.converged) points.push_back(r.x);
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < points.size(); ++a) {
      for (std::size_t b = a + 1; b < points.size(); ++b) {
        worst = std::max(worst, (points[a] - points[b]).lpNorm<Eigen::Infinity>());
      }
    }
    cert.worst_pairwise_distance = worst;
  }
  return cert;
}

// ---- certificate report (versioned, machine readable) -----------------------

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json doc;
  doc["format"] = "nnfix-certificate";
  doc["version"] = 1;
  doc["property_class"]["level"] = property_level_name(c.property_class.level);
  auto steps = nlohmann::json::array();
  for (const auto& s : c.property_class.derivation) {
    steps.push_back({{"rule", s.rule}, {"layer", s.layer}});
  }
  doc["property_class"]["derivation"] = std::move(steps);
  doc["asymptotic"] = asymptotic_variant_name(c.asymptotic);
  doc["spectral_radius"] = c.spectral_radius;
  doc["norm"] = operator_norm_name(c.norm);
  doc["norm_bound_product"] = c.norm_bound_product;
  doc["norm_bound_composite"] = c.norm_bound_composite;
  doc["primitivity_exponent"] =
      c.primitivity_exponent ? nlohmann::json(*c.primitivity_exponent) : nlohmann::json();
  doc["verdict"] = verdict_name(c.verdict);
  if (c.fixed_point) {
    auto fp = nlohmann::json::array();
    for (Eigen::Index i = 0; i < c.fixed_point->size(); ++i) fp.push_back((*c.fixed_point)(i));
    doc["fixed_point"] = std::move(fp);
  } else {
    doc["fixed_point"] = nullptr;
  }
  doc["residual_sup_norm"] =
      c.residual_sup_norm ? nlohmann::json(*c.residual_sup_norm) : nlohmann::json();
  doc["worst_pairwise_distance"] =
      c.worst_pairwise_distance ? nlohmann::json(*c.worst_pairwise_distance) : nlohmann::json();
  return doc;
}

inline PropertyLevel property_level_from_name(const std::string& s) {
  if (s == "A3_A4") return PropertyLevel::A3A4;
  if (s == "A3_A5") return PropertyLevel::A3A5;
  return PropertyLevel::Unknown;
}

inline AsymptoticMap::Variant asymptotic_variant_from_name(const std::string& s) {
  if (s == "Linear") return AsymptoticMap::Variant::Linear;
  if (s == "NumericOnly") return AsymptoticMap::Variant::NumericOnly;
  return AsymptoticMap::Variant::Zero;
}

inline Verdict verdict_from_name(const std::string& s) {
  if (s == "UniquePositiveFixedPoint") return Verdict::UniquePositiveFixedPoint;
  if (s == "NonemptyFixedPointSet") return Verdict::NonemptyFixedPointSet;
  if (s == "EmptyInInterior") return Verdict::EmptyInInterior;
  if (s == "EmptyFixedPointSet") return Verdict::EmptyFixedPointSet;
  return Verdict::Inconclusive;
}

inline OperatorNorm operator_norm_from_name(const std::string& s) {
  if (s == "one") return OperatorNorm::One;
  if (s == "inf") return OperatorNorm::Inf;
  if (s == "spectral") return OperatorNorm::Spectral;
  throw std::invalid_argument("unknown norm: " + s);
}

inline Certificate certificate_from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "nnfix-certificate" || doc.value("version", 0) != 1) {
    throw std::invalid_argument("not a v1 nnfix-certificate document");
  }
  Certificate c;
  c.property_class.level =
      property_level_from_name(doc.at("property_class").at("level").get<std::string>());
  for (const auto& s : doc.at("property_class").at("derivation")) {
    c.property_class.derivation.push_back(
        {s.at("rule").get<std::string>(), s.at("layer").get<int>()});
  }
  c.asymptotic = asymptotic_variant_from_name(doc.at("asymptotic").get<std::string>());
  c.spectral_radius = doc.at("spectral_radius").get<double>();
  c.norm = operator_norm_from_name(doc.at("norm").get<std::string>());
  c.norm_bound_product = doc.at("norm_bound_product").get<double>();
  c.norm_bound_composite = doc.at("norm_bound_composite").get<double>();
  if (!doc.at("primitivity_exponent").is_null()) {
    c.primitivity_exponent = doc.at("primitivity_exponent").get<int>();
  }
  c.verdict = verdict_from_name(doc.at("verdict").get<std::string>());
  if (!doc.at("fixed_point").is_null()) {
    const auto& fp = doc.at("fixed_point");
    Eigen::VectorXd v(fp.size());
    for (std::size_t i = 0; i < fp.size(); ++i) v(static_cast<Eigen::Index>(i)) = fp[i].get<double>();
    c.fixed_point = std::move(v);
  }
  if (!doc.at("residual_sup_norm").is_null()) {
    c.residual_sup_norm = doc.at("residual_sup_norm").get<double>();
  }
  if (!doc.at("worst_pairwise_distance").is_null()) {
    c.worst_pairwise_distance = doc.at("worst_pairwise_distance").get<double>();
  }
  return c;
}

}  // namespace nnfix
