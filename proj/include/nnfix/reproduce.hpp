#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "nnfix/analysis.hpp"
#include "nnfix/model_io.hpp"
#include "nnfix/train.hpp"

// End-to-end desk-scale run of the autoencoder experiment: generate
// Gaussian-mixture spectra, train under the nonnegativity constraint, then
// certify the trained network and dump plottable artifacts.

namespace nnfix {

struct ReproduceResult {
  Network net;
  Certificate certificate;
  std::vector<double> loss_history;
  double untrained_loss = 0.0;       // mean loss of the freshly initialized net
  double constant_baseline = 0.0;    // mean loss of the best constant predictor
  double heldout_error = 0.0;        // ||T(xhat) - xhat|| on a held-out sample
};

inline void write_csv_vector(const std::string& path, const Eigen::VectorXd& v,
                             const std::string& value_name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "index," << value_name << "\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << i << "," << v(i) << "\n";
}

inline ReproduceResult reproduce_section4(const TrainConfig& cfg, const std::string& outdir,
                                          const CertifyBudget& budget = {},
                                          bool log_progress = false) {
  cfg.validate();
  std::filesystem::create_directories(outdir);
  auto path = [&](const std::string& name) { return outdir + "/" + name; };

  std::vector<Eigen::VectorXd> data = generate_dataset(cfg.samples, cfg.input_dim, cfg.seed);
  save_dataset(data, cfg.input_dim, cfg.seed, path("dataset.json"));

  // 90/10 train / held-out split
  const std::size_t heldout_from = (data.size() * 9) / 10;
  std::vector<Eigen::VectorXd> train_set(data.begin(),
                                         data.begin() + static_cast<std::ptrdiff_t>(heldout_from));
  std::vector<Eigen::VectorXd> heldout(data.begin() + static_cast<std::ptrdiff_t>(heldout_from),
                                       data.end());
  if (heldout.empty()) heldout.push_back(data.back());

  ReproduceResult res{init_network(cfg), Certificate{}, {}, 0.0, 0.0, 0.0};

  // baselines on the training set
  {
    double untrained = 0.0;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(cfg.input_dim);
    for (const auto& x : train_set) {
      untrained += (res.net.forward(x) - x).squaredNorm();
      mean += x;
    }
    mean /= static_cast<double>(train_set.size());
    double constant = 0.0;
    for (const auto& x : train_set) constant += (mean - x).squaredNorm();
    res.untrained_loss = untrained / static_cast<double>(train_set.size());
    res.constant_baseline = constant / static_cast<double>(train_set.size());
  }

  if (log_progress) {
    std::cerr << "training " << cfg.input_dim << "-" << cfg.hidden[0] << "-" << cfg.hidden[1]
              << "-" << cfg.hidden[2] << "-" << cfg.input_dim << " on " << train_set.size()
              << " samples, " << cfg.epochs << " epochs\n";
  }
  TrainResult tr = train(cfg, train_set);
  res.net = tr.net;
  res.loss_history = std::move(tr.loss_history);
  save_model(res.net, path("model.json"));

  res.certificate = certify(res.net, budget);
  {
    std::ofstream out(path("certificate.json"));
    out << to_json(res.certificate).dump(2) << "\n";
  }

  {
    std::ofstream out(path("loss.csv"));
    out << "epoch,loss\n";
    out.precision(17);
    for (std::size_t e = 0; e < res.loss_history.size(); ++e) {
      out << e << "," << res.loss_history[e] << "\n";
    }
  }

  if (res.certificate.fixed_point) {
    write_csv_vector(path("fixed_point.csv"), *res.certificate.fixed_point, "value");
  }

  // T^m(0) for the found primitivity exponent (budget.m_max iterations if absent)
  {
    int m = res.certificate.primitivity_exponent.value_or(budget.m_max);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cfg.input_dim);
    for (int i = 0; i < m; ++i) v = res.net.forward(v);
    write_csv_vector(path("tm0.csv"), v, "value");
  }

  // reconstruction overlay for the first held-out sample
  {
    const Eigen::VectorXd& xin = heldout.front();
    Eigen::VectorXd xout = res.net.forward(xin);
    res.heldout_error = (xout - xin).norm();
    std::ofstream out(path("reconstruction.csv"));
    out << "index,input,output\n";
    out.precision(17);
    for (Eigen::Index i = 0; i < xin.size(); ++i) {
      out << i << "," << xin(i) << "," << xout(i) << "\n";
    }
  }

  return res;
}

}  // namespace nnfix
