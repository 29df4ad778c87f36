#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "nnfix/network.hpp"
#include "nnfix/rng.hpp"

// Executable calculus for maps of the nonnegative cone: combinators that
// propagate declared order/scaling properties, and sampling oracles that try
// to refute them. A passing oracle is evidence, not proof; only a
// counterexample is conclusive.

namespace nnfix {

enum class MapProperty {
  Monotonic,
  WeaklyScalable,
  Scalable,
  StrictlyMonotonic,
  StronglyMonotonic,
};

struct ConeMap {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
  Eigen::Index in_dim = 0;
  Eigen::Index out_dim = 0;
  std::set<MapProperty> declared;

  bool has(MapProperty p) const { return declared.count(p) > 0; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return eval(x); }
};

inline ConeMap cone_map_from_network(const Network& net) {
  ConeMap m;
  m.in_dim = net.input_dim();
  m.out_dim = net.output_dim();
  m.eval = [net](const Eigen::VectorXd& x) { return net.forward(x); };
  m.declared = {MapProperty::Monotonic, MapProperty::WeaklyScalable};
  return m;
}

// x -> alpha f1(x) + beta f2(x)
inline ConeMap combine_sum(const ConeMap& f1, const ConeMap& f2, double alpha, double beta) {
  if (f1.in_dim != f2.in_dim || f1.out_dim != f2.out_dim) {
    throw std::invalid_argument("combine_sum: dimension mismatch");
  }
  if (alpha < 0.0 || beta < 0.0) throw std::invalid_argument("combine_sum: negative coefficient");
  ConeMap m;
  m.in_dim = f1.in_dim;
  m.out_dim = f1.out_dim;
  m.eval = [f1, f2, alpha, beta](const Eigen::VectorXd& x) {
    return (alpha * f1.eval(x) + beta * f2.eval(x)).eval();
  };
  if (f1.has(MapProperty::Monotonic) && f2.has(MapProperty::Monotonic)) {
    m.declared.insert(MapProperty::Monotonic);
  }
  if (f1.has(MapProperty::WeaklyScalable) && f2.has(MapProperty::WeaklyScalable)) {
    m.declared.insert(MapProperty::WeaklyScalable);
  }
  if (f1.has(MapProperty::WeaklyScalable) && f2.has(MapProperty::Scalable) && beta > 0.0) {
    m.declared.insert(MapProperty::Scalable);
  }
  return m;
}

namespace detail {

inline ConeMap combine_lattice(const ConeMap& f1, const ConeMap& f2, bool take_max) {
  if (f1.in_dim != f2.in_dim || f1.out_dim != f2.out_dim) {
    throw std::invalid_argument("combine_max/min: dimension mismatch");
  }
  ConeMap m;
  m.in_dim = f1.in_dim;
  m.out_dim = f1.out_dim;
  m.eval = [f1, f2, take_max](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd a = f1.eval(x);
    Eigen::VectorXd b = f2.eval(x);
    return take_max ? a.cwiseMax(b).eval() : a.cwiseMin(b).eval();
  };
  if (f1.has(MapProperty::Monotonic) && f2.has(MapProperty::Monotonic)) {
    m.declared.insert(MapProperty::Monotonic);
  }
  if (f1.has(MapProperty::WeaklyScalable) && f2.has(MapProperty::WeaklyScalable)) {
    m.declared.insert(MapProperty::WeaklyScalable);
  }
  if (f1.has(MapProperty::Scalable) && f2.has(MapProperty::Scalable)) {
    m.declared.insert(MapProperty::Scalable);
  }
  return m;
}

}  // namespace detail

inline ConeMap combine_max(const ConeMap& f1, const ConeMap& f2) {
  return detail::combine_lattice(f1, f2, true);
}

inline ConeMap combine_min(const ConeMap& f1, const ConeMap& f2) {
  return detail::combine_lattice(f1, f2, false);
}

// x -> g(f1(x))
inline ConeMap combine_compose(const ConeMap& g, const ConeMap& f1) {
  if (f1.out_dim != g.in_dim) {
    throw std::invalid_argument("combine_compose: dimension mismatch");
  }
  ConeMap m;
  m.in_dim = f1.in_dim;
  m.out_dim = g.out_dim;
  m.eval = [g, f1](const Eigen::VectorXd& x) { return g.eval(f1.eval(x)); };
  if (f1.has(MapProperty::Monotonic) && g.has(MapProperty::Monotonic)) {
    m.declared.insert(MapProperty::Monotonic);
  }
  if (f1.has(MapProperty::StrictlyMonotonic) && g.has(MapProperty::StrictlyMonotonic)) {
    m.declared.insert(MapProperty::StrictlyMonotonic);
  }
  if (f1.has(MapProperty::StronglyMonotonic) && g.has(MapProperty::StronglyMonotonic)) {
    m.declared.insert(MapProperty::StronglyMonotonic);
  }
  if (f1.has(MapProperty::WeaklyScalable) && g.has(MapProperty::WeaklyScalable) &&
      g.has(MapProperty::Monotonic)) {
    m.declared.insert(MapProperty::WeaklyScalable);
  }
  if ((f1.has(MapProperty::WeaklyScalable) && g.has(MapProperty::Scalable) &&
       g.has(MapProperty::Monotonic)) ||
      (f1.has(MapProperty::Scalable) && g.has(MapProperty::WeaklyScalable) &&
       g.has(MapProperty::StrictlyMonotonic))) {
    m.declared.insert(MapProperty::Scalable);
  }
  return m;
}

// ---- sampling oracles -------------------------------------------------

struct OracleResult {
  bool pass = true;
  Eigen::VectorXd x;        // witness pair / scaling point when pass == false
  Eigen::VectorXd x_tilde;  // second point for order oracles
  double rho = 0.0;         // scaling factor for scalability oracles
};

inline constexpr double kOracleSlack = 1e-12;

namespace detail {

// log-uniform scaling factor, floored away from 1 so that strict-inequality
// margins of genuinely scalable maps stay above the eps_pos threshold
inline double sample_rho(Rng& rng) { return std::pow(10.0, 0.05 + 0.95 * rng.uniform()); }

}  // namespace detail

inline OracleResult oracle_monotonic(const ConeMap& f, int trials, double box,
                                     std::uint64_t seed = 1) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(f.in_dim), xt(f.in_dim);
    for (Eigen::Index i = 0; i < f.in_dim; ++i) {
      x(i) = rng.uniform(0.0, box);
      xt(i) = x(i) + rng.uniform(0.0, box - x(i));
    }
    Eigen::VectorXd fx = f.eval(x), fxt = f.eval(xt);
    if ((fx.array() > fxt.array() + kOracleSlack).any()) {
      return {false, x, xt, 0.0};
    }
  }
  return {};
}

inline OracleResult oracle_weakly_scalable(const ConeMap& f, int trials, double box,
                                           std::uint64_t seed = 1) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(f.in_dim);
    for (Eigen::Index i = 0; i < f.in_dim; ++i) x(i) = rng.uniform(0.0, box);
    double rho = detail::sample_rho(rng);
    Eigen::VectorXd lhs = f.eval((rho * x).eval());
    Eigen::VectorXd rhs = rho * f.eval(x);
    if ((lhs.array() > rhs.array() + kOracleSlack).any()) {
      return {false, x, Eigen::VectorXd(), rho};
    }
  }
  return {};
}

inline OracleResult oracle_scalable(const ConeMap& f, int trials, double box,
                                    std::uint64_t seed = 1, double eps_pos = kEpsPos) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(f.in_dim);
    for (Eigen::Index i = 0; i < f.in_dim; ++i) x(i) = rng.uniform(0.0, box);
    double rho = detail::sample_rho(rng);
    Eigen::VectorXd lhs = f.eval((rho * x).eval());
    Eigen::VectorXd rhs = rho * f.eval(x);
    // every output coordinate has to shrink strictly
    if (!((rhs.array() - lhs.array()) > eps_pos).all()) {
      return {false, x, Eigen::VectorXd(), rho};
    }
  }
  return {};
}

// Tests both defining clauses: x < x~ must give f(x) < f(x~), and x << x~
// must give f(x) << f(x~).
inline OracleResult oracle_strict_monotonic(const ConeMap& f, int trials, double box,
                                            std::uint64_t seed = 1, double eps_pos = kEpsPos) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(f.in_dim), xt(f.in_dim);
    for (Eigen::Index i = 0; i < f.in_dim; ++i) {
      x(i) = rng.uniform(0.0, box);
      xt(i) = x(i);
    }
    // first clause: bump a single coordinate
    xt(rng.uniform_int(0, static_cast<int>(f.in_dim) - 1)) += rng.uniform(0.01, 1.0);
    Eigen::VectorXd fx = f.eval(x), fxt = f.eval(xt);
    bool le = (fx.array() <= fxt.array() + kOracleSlack).all();
    bool strict_somewhere = ((fxt - fx).array() > eps_pos).any();
    if (!le || !strict_somewhere) return {false, x, xt, 0.0};
    // second clause: bump every coordinate
    for (Eigen::Index i = 0; i < f.in_dim; ++i) xt(i) = x(i) + rng.uniform(0.01, 1.0);
    fxt = f.eval(xt);
    if (!((fxt.array() - fx.array()) > eps_pos).all()) return {false, x, xt, 0.0};
  }
  return {};
}

inline OracleResult oracle_strong_monotonic(const ConeMap& f, int trials, double box,
                                            std::uint64_t seed = 1, double eps_pos = kEpsPos) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x(f.in_dim), xt(f.in_dim);
    // perturb a random nonempty subset of coordinates upward
    bool any = false;
    for (Eigen::Index i = 0; i < f.in_dim; ++i) {
      x(i) = rng.uniform(0.0, box);
      xt(i) = x(i);
    }
    for (Eigen::Index i = 0; i < f.in_dim; ++i) {
      if (rng.uniform() < 0.5) {
        xt(i) += rng.uniform(0.01, 1.0);
        any = true;
      }
    }
    if (!any) {
      Eigen::Index i = rng.uniform_int(0, static_cast<int>(f.in_dim) - 1);
      xt(i) += rng.uniform(0.01, 1.0);
    }
    Eigen::VectorXd fx = f.eval(x), fxt = f.eval(xt);
    if (!((fxt.array() - fx.array()) > eps_pos).all()) {
      return {false, x, xt, 0.0};
    }
  }
  return {};
}

// ---- builtin non-network cone maps -------------------------------------

// f(x, y) = (x, min{2, y}); weakly scalable and monotonic, fixed point set
// int(R+) x (0, 2], neither lower- nor upper-primitive on it.
inline ConeMap builtin_example2() {
  ConeMap m;
  m.in_dim = m.out_dim = 2;
  m.eval = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(2);
    y(0) = x(0);
    y(1) = std::min(2.0, x(1));
    return y;
  };
  m.declared = {MapProperty::Monotonic, MapProperty::WeaklyScalable};
  return m;
}

// Gauss arithmetic-geometric mean f(x, y) = ((x+y)/2, sqrt(xy)).
inline ConeMap builtin_gauss_agm() {
  ConeMap m;
  m.in_dim = m.out_dim = 2;
  m.eval = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(2);
    y(0) = 0.5 * (x(0) + x(1));
    y(1) = std::sqrt(x(0) * x(1));
    return y;
  };
  m.declared = {MapProperty::Monotonic, MapProperty::WeaklyScalable};
  return m;
}

inline std::optional<ConeMap> builtin_cone_map(const std::string& name) {
  if (name == "example2") return builtin_example2();
  if (name == "gauss-agm") return builtin_gauss_agm();
  return std::nullopt;
}

}  // namespace nnfix
