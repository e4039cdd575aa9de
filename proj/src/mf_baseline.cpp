#include "bmf/mf_baseline.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bmf/loss.hpp"
#include "bmf/optimizer.hpp"
#include "bmf/rng.hpp"
#include "bmf/sampling.hpp"

namespace bmf {

MfParams init_mf(Index m, Index n, int latent_dim, std::uint64_t seed) {
  if (m < 1 || n < 1 || latent_dim < 1)
    throw std::invalid_argument("init_mf: bad dimensions");
  MfParams p;
  p.P.resize(m, latent_dim);
  p.Q.resize(n, latent_dim);
  Rng rng(derive_seed(seed, 0x6d66 /* "mf" */));
  const double lp = std::sqrt(6.0 / (static_cast<double>(m) + latent_dim));
  for (Eigen::Index r = 0; r < p.P.rows(); ++r)
    for (Eigen::Index c = 0; c < p.P.cols(); ++c)
      p.P(r, c) = uniform_real(rng, -lp, lp);
  const double lq = std::sqrt(6.0 / (static_cast<double>(n) + latent_dim));
  for (Eigen::Index r = 0; r < p.Q.rows(); ++r)
    for (Eigen::Index c = 0; c < p.Q.cols(); ++c)
      p.Q(r, c) = uniform_real(rng, -lq, lq);
  return p;
}

double mf_score(const MfParams& params, Index drug, Index disease) {
  return sigmoid(params.P.row(drug).dot(params.Q.row(disease)));
}

ScoreMatrix mf_score_all(const MfParams& params) {
  ScoreMatrix scores(params.P.rows(), params.Q.rows());
  for (Eigen::Index i = 0; i < params.P.rows(); ++i)
    for (Eigen::Index j = 0; j < params.Q.rows(); ++j)
      scores(i, j) = sigmoid(params.P.row(i).dot(params.Q.row(j)));
  return scores;
}

MfReport train_mf(const AssociationMatrix& view, const TrainConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  MfParams params = init_mf(view.num_drugs(), view.num_diseases(),
                            cfg.hp.latent_dim, cfg.seed);
  Mat gP = Mat::Zero(params.P.rows(), params.P.cols());
  Mat gQ = Mat::Zero(params.Q.rows(), params.Q.cols());

  ParamPack ppack, gpack;
  ppack.add(params.P.data(), static_cast<std::size_t>(params.P.size()));
  ppack.add(params.Q.data(), static_cast<std::size_t>(params.Q.size()));
  gpack.add(gP.data(), static_cast<std::size_t>(gP.size()));
  gpack.add(gQ.data(), static_cast<std::size_t>(gQ.size()));
  Optimizer opt(cfg.optimizer, ppack.total());

  const std::vector<IdPair> positives = view.positives();
  std::vector<std::size_t> order(positives.size());
  const std::uint64_t shuffle_base = derive_seed(cfg.seed, 0x73687566 /* "shuf" */);
  const std::uint64_t negative_base = derive_seed(cfg.seed, 0x6e656773 /* "negs" */);

  MfReport report;
  report.epoch_losses.reserve(static_cast<std::size_t>(cfg.epochs));

  auto accumulate_pair = [&](Index i, Index j, bool positive, double& loss_sum) {
    const double z = params.P.row(i).dot(params.Q.row(j));
    const double p = sigmoid(z);
    const LossTerm t = positive ? bce_positive(p) : bce_negative(p);
    loss_sum += t.loss;
    const double dz = t.dscore * p * (1.0 - p);
    gP.row(i) += dz * params.Q.row(j);
    gQ.row(j) += dz * params.P.row(i);
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(derive_seed(shuffle_base, static_cast<std::uint64_t>(epoch)));
    shuffle(order, shuffle_rng);
    const std::uint64_t epoch_neg_base =
        derive_seed(negative_base, static_cast<std::uint64_t>(epoch));

    double epoch_loss = 0.0;
    std::size_t cursor = 0;
    while (cursor < order.size()) {
      const std::size_t batch_end =
          std::min(cursor + static_cast<std::size_t>(cfg.batch_size), order.size());
      gP.setZero();
      gQ.setZero();
      for (std::size_t b = cursor; b < batch_end; ++b) {
        const std::size_t pair_idx = order[b];
        const auto& [drug, disease] = positives[pair_idx];
        accumulate_pair(drug, disease, true, epoch_loss);
        for (Index u : sample_negatives(view, drug,
                                        static_cast<std::size_t>(cfg.neg_ratio),
                                        derive_seed(epoch_neg_base, pair_idx)))
          accumulate_pair(drug, u, false, epoch_loss);
      }
      opt.step(ppack, gpack, cfg.learning_rate, cfg.weight_decay);
      cursor = batch_end;
    }

    if (!std::isfinite(epoch_loss)) throw TrainDivergence(epoch);
    report.epoch_losses.push_back(epoch_loss);
  }

  report.params = std::move(params);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace bmf
