// Command-line front end: model certification, fixed-point location,
// interval scanning, property audits, data generation, training, and the
// end-to-end autoencoder experiment.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "nnfix/analysis.hpp"
#include "nnfix/cone_map.hpp"
#include "nnfix/model_io.hpp"
#include "nnfix/reproduce.hpp"
#include "nnfix/train.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NNFIX_SEED")) {
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  }
  return 1;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump(2) << "\n";
}

Eigen::VectorXd load_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  if (!doc.is_array()) throw std::invalid_argument("vector file must be a JSON array");
  Eigen::VectorXd v(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = doc[i].get<double>();
  }
  return v;
}

void print_certificate(const nnfix::Certificate& c) {
  std::cout << "property_class: " << nnfix::property_level_name(c.property_class.level) << "\n";
  std::cout << "derivation:";
  for (const auto& s : c.property_class.derivation) {
    std::cout << " " << s.rule;
    if (s.layer >= 0) std::cout << "@" << s.layer;
  }
  std::cout << "\n";
  std::cout << "asymptotic: " << nnfix::asymptotic_variant_name(c.asymptotic) << "\n";
  std::cout << "spectral_radius: " << c.spectral_radius << "\n";
  std::cout << "norm (" << nnfix::operator_norm_name(c.norm)
            << "): product=" << c.norm_bound_product
            << " composite=" << c.norm_bound_composite << "\n";
  if (c.primitivity_exponent) {
    std::cout << "primitivity_exponent: " << *c.primitivity_exponent << "\n";
  } else {
    std::cout << "primitivity_exponent: none\n";
  }
  std::cout << "verdict: " << nnfix::verdict_name(c.verdict) << "\n";
  if (c.residual_sup_norm) {
    std::cout << "fixed_point residual_sup_norm: " << *c.residual_sup_norm << "\n";
  }
  if (c.worst_pairwise_distance) {
    std::cout << "worst_pairwise_distance: " << *c.worst_pairwise_distance << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"fixed-point analysis of nonnegative feed-forward networks"};
  app.require_subcommand(1);

  // certify
  std::string model_path, out_path, norm_name = "spectral";
  int m_max = 100, max_iter = 10000, starts = 10;
  double tol = 1e-9;
  std::uint64_t seed = default_seed();
  auto* certify_cmd = app.add_subcommand("certify", "run the full analysis pipeline");
  certify_cmd->add_option("model", model_path, "model file")->required();
  certify_cmd->add_option("--m-max", m_max);
  certify_cmd->add_option("--tol", tol);
  certify_cmd->add_option("--max-iter", max_iter);
  certify_cmd->add_option("--norm", norm_name)->check(CLI::IsMember({"spectral", "one", "inf"}));
  certify_cmd->add_option("--starts", starts);
  certify_cmd->add_option("--seed", seed);
  certify_cmd->add_option("--out", out_path, "write the JSON certificate here");

  // fixpoint
  std::string x0_mode = "zero", x0_file;
  auto* fix_cmd = app.add_subcommand("fixpoint", "locate a fixed point by Picard iteration");
  fix_cmd->add_option("model", model_path)->required();
  fix_cmd->add_option("--x0", x0_mode)->check(CLI::IsMember({"zero", "random", "file"}));
  fix_cmd->add_option("--x0-file", x0_file);
  fix_cmd->add_option("--tol", tol);
  fix_cmd->add_option("--max-iter", max_iter);
  fix_cmd->add_option("--seed", seed);
  fix_cmd->add_option("--out", out_path);

  // scan
  std::string anchor_path, builtin_name;
  double lambda_max = 1e6;
  int grid = 200;
  auto* scan_cmd = app.add_subcommand("scan", "characterize the fixed-point interval along a ray");
  scan_cmd->add_option("model", model_path);
  scan_cmd->add_option("anchor", anchor_path, "JSON array with a fixed point");
  scan_cmd->add_option("--builtin", builtin_name, "scan a builtin map (example2, gauss-agm)");
  scan_cmd->add_option("--lambda-max", lambda_max);
  scan_cmd->add_option("--grid", grid);
  scan_cmd->add_option("--tol", tol);
  scan_cmd->add_option("--out", out_path);

  // audit
  int trials = 1000;
  auto* audit_cmd = app.add_subcommand("audit", "run the sampling oracles against a model");
  audit_cmd->add_option("model", model_path)->required();
  audit_cmd->add_option("--trials", trials);
  audit_cmd->add_option("--seed", seed);

  // gen-data
  std::string data_out = "dataset.json";
  int samples = 5000, dim = 36;
  auto* gen_cmd = app.add_subcommand("gen-data", "generate Gaussian-mixture spectra");
  gen_cmd->add_option("--out", data_out);
  gen_cmd->add_option("--samples", samples);
  gen_cmd->add_option("--dim", dim);
  gen_cmd->add_option("--seed", seed);

  // train
  std::string data_path, loss_out;
  nnfix::TrainConfig cfg;
  auto* train_cmd = app.add_subcommand("train", "train the nonnegative autoencoder");
  train_cmd->add_option("--data", data_path, "dataset file")->required();
  train_cmd->add_option("--out", out_path, "trained model path")->required();
  train_cmd->add_option("--loss-out", loss_out, "per-epoch loss CSV");
  train_cmd->add_option("--epochs", cfg.epochs);
  train_cmd->add_option("--batch", cfg.batch);
  train_cmd->add_option("--lr", cfg.lr);
  train_cmd->add_option("--beta1", cfg.beta1);
  train_cmd->add_option("--beta2", cfg.beta2);
  train_cmd->add_option("--hidden", cfg.hidden, "hidden layer widths (3 values)");
  train_cmd->add_option("--seed", cfg.seed);

  // reproduce
  std::string scale = "desk", outdir = "reproduce-out";
  auto* repr_cmd = app.add_subcommand("reproduce", "end-to-end autoencoder experiment");
  repr_cmd->add_option("--scale", scale)->check(CLI::IsMember({"desk", "paper"}));
  repr_cmd->add_option("--seed", seed);
  repr_cmd->add_option("--outdir", outdir);

  CLI11_PARSE(app, argc, argv);

  if (certify_cmd->parsed()) {
    nnfix::Network net = nnfix::load_model(model_path);
    nnfix::CertifyBudget budget;
    budget.m_max = m_max;
    budget.tol = tol;
    budget.max_iter = max_iter;
    budget.starts = starts;
    budget.seed = seed;
    budget.norm = nnfix::operator_norm_from_name(norm_name);
    nnfix::Certificate cert = nnfix::certify(net, budget);
    print_certificate(cert);
    write_json(nnfix::to_json(cert), out_path);
    return cert.verdict == nnfix::Verdict::Inconclusive ? 2 : 0;
  }

  if (fix_cmd->parsed()) {
    nnfix::Network net = nnfix::load_model(model_path);
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(net.input_dim());
    if (x0_mode == "random") {
      nnfix::Rng rng(seed);
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = rng.uniform(0.0, 10.0);
    } else if (x0_mode == "file") {
      x0 = load_vector(x0_file);
    }
    nnfix::IterationResult r = nnfix::iterate_fixed_point(net, x0, tol, max_iter);
    std::cout << "converged: " << (r.converged ? "yes" : "no") << "\n";
    std::cout << "iterations: " << r.iterations << "\n";
    std::cout << "residual_sup_norm: " << r.residual << "\n";
    nlohmann::json doc;
    doc["format"] = "nnfix-fixpoint";
    doc["version"] = 1;
    doc["converged"] = r.converged;
    doc["iterations"] = r.iterations;
    doc["residual_sup_norm"] = r.residual;
    auto x = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.x.size(); ++i) x.push_back(r.x(i));
    doc["x"] = std::move(x);
    write_json(doc, out_path);
    return 0;
  }

  if (scan_cmd->parsed()) {
    nnfix::IntervalEstimate est;
    if (!builtin_name.empty()) {
      auto map = nnfix::builtin_cone_map(builtin_name);
      if (!map) throw std::invalid_argument("unknown builtin: " + builtin_name);
      Eigen::VectorXd u =
          anchor_path.empty() ? Eigen::VectorXd::Ones(map->in_dim) : load_vector(anchor_path);
      est = nnfix::interval_scan(map->eval, u, lambda_max, grid, tol);
    } else {
      if (model_path.empty() || anchor_path.empty()) {
        throw std::invalid_argument("scan needs a model and an anchor, or --builtin");
      }
      nnfix::Network net = nnfix::load_model(model_path);
      est = nnfix::interval_scan(net, load_vector(anchor_path), lambda_max, grid, tol);
    }
    std::cout << "s0: " << (est.s0_zero_limit ? std::string("-> 0") : std::to_string(est.s0))
              << "\n";
    std::cout << "t0: " << (est.t0_unbounded ? std::string("-> inf") : std::to_string(est.t0))
              << "\n";
    std::size_t fixed = 0;
    for (const auto& [l, f] : est.samples) fixed += f ? 1 : 0;
    std::cout << "grid: " << fixed << "/" << est.samples.size() << " scales fixed\n";
    nlohmann::json doc;
    doc["format"] = "nnfix-interval";
    doc["version"] = 1;
    doc["s0"] = est.s0_zero_limit ? nlohmann::json() : nlohmann::json(est.s0);
    doc["t0"] = est.t0_unbounded ? nlohmann::json() : nlohmann::json(est.t0);
    doc["s0_zero_limit"] = est.s0_zero_limit;
    doc["t0_unbounded"] = est.t0_unbounded;
    auto samples = nlohmann::json::array();
    for (const auto& [l, f] : est.samples) samples.push_back({{"lambda", l}, {"fixed", f}});
    doc["samples"] = std::move(samples);
    write_json(doc, out_path);
    return 0;
  }

  if (audit_cmd->parsed()) {
    nnfix::Network net = nnfix::load_model(model_path);
    nnfix::ConeMap map = nnfix::cone_map_from_network(net);
    struct Row {
      const char* name;
      nnfix::OracleResult result;
    };
    const double box = 10.0;
    Row rows[] = {
        {"monotonic", nnfix::oracle_monotonic(map, trials, box, seed)},
        {"weakly_scalable", nnfix::oracle_weakly_scalable(map, trials, box, seed + 1)},
        {"scalable", nnfix::oracle_scalable(map, trials, box, seed + 2)},
        {"strongly_monotonic", nnfix::oracle_strong_monotonic(map, trials, box, seed + 3)},
    };
    for (const Row& row : rows) {
      std::cout << row.name << ": " << (row.result.pass ? "pass" : "counterexample") << "\n";
    }
    return 0;
  }

  if (gen_cmd->parsed()) {
    auto data = nnfix::generate_dataset(samples, dim, seed);
    nnfix::save_dataset(data, dim, seed, data_out);
    std::cout << "wrote " << data.size() << " samples to " << data_out << "\n";
    return 0;
  }

  if (train_cmd->parsed()) {
    int data_dim = 0;
    auto data = nnfix::load_dataset(data_path, &data_dim);
    cfg.input_dim = data_dim;
    nnfix::TrainResult r = nnfix::train(cfg, data);
    nnfix::save_model(r.net, out_path);
    if (!loss_out.empty()) {
      std::ofstream out(loss_out);
      out << "epoch,loss\n";
      out.precision(17);
      for (std::size_t e = 0; e < r.loss_history.size(); ++e) {
        out << e << "," << r.loss_history[e] << "\n";
      }
    }
    std::cout << "final loss: " << (r.loss_history.empty() ? 0.0 : r.loss_history.back()) << "\n";
    return 0;
  }

  if (repr_cmd->parsed()) {
    cfg = nnfix::TrainConfig{};
    cfg.seed = seed;
    if (scale == "paper") {
      cfg.input_dim = 180;
      cfg.hidden = {200, 40, 200};
      cfg.samples = 50000;
      cfg.epochs = 2000;
    }
    nnfix::ReproduceResult res = nnfix::reproduce_section4(cfg, outdir, {}, scale == "paper");
    print_certificate(res.certificate);
    std::cout << "untrained_loss: " << res.untrained_loss << "\n";
    std::cout << "final_loss: " << (res.loss_history.empty() ? 0.0 : res.loss_history.back())
              << "\n";
    std::cout << "constant_baseline: " << res.constant_baseline << "\n";
    std::cout << "heldout_error: " << res.heldout_error << "\n";
    std::cout << "artifacts in " << outdir << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
