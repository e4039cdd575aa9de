#include "bmf/train.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bmf/metrics.hpp"
#include "bmf/parallel.hpp"
#include "bmf/rng.hpp"
#include "bmf/sampling.hpp"

namespace bmf {

namespace {

// f'(z) elementwise; sigmoid uses the stored activation a = f(z).
Vec activation_grad(const Vec& z, const Vec& a, Activation act) {
  if (act == Activation::kRelu)
    return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
  return a.cwiseProduct(Vec::Ones(a.size()) - a);
}

std::vector<Index> input_rows_of_drug(const Hyperparams& hp,
                                      const AssociationMatrix& mat,
                                      Index drug) {
  if (hp.input_mode == InputMode::kOneHot) return {drug};
  return mat.row(drug);
}

ParamPack pack(ModelParams& p) {
  ParamPack out;
  out.add(p.W1.data(), static_cast<std::size_t>(p.W1.size()));
  out.add(p.b1.data(), static_cast<std::size_t>(p.b1.size()));
  out.add(p.V1.data(), static_cast<std::size_t>(p.V1.size()));
  out.add(p.b2.data(), static_cast<std::size_t>(p.b2.size()));
  out.add(p.w2.data(), static_cast<std::size_t>(p.w2.size()));
  out.add(&p.b3, 1);
  return out;
}

ParamPack pack(Gradients& g) {
  ParamPack out;
  out.add(g.W1.data(), static_cast<std::size_t>(g.W1.size()));
  out.add(g.b1.data(), static_cast<std::size_t>(g.b1.size()));
  out.add(g.V1.data(), static_cast<std::size_t>(g.V1.size()));
  out.add(g.b2.data(), static_cast<std::size_t>(g.b2.size()));
  out.add(g.w2.data(), static_cast<std::size_t>(g.w2.size()));
  out.add(&g.b3, 1);
  return out;
}

}  // namespace

void Gradients::set_zero() {
  W1.setZero();
  b1.setZero();
  V1.setZero();
  b2.setZero();
  w2.setZero();
  b3 = 0.0;
}

Gradients make_gradients(const ModelParams& params) {
  Gradients g;
  g.W1 = Mat::Zero(params.W1.rows(), params.W1.cols());
  g.b1 = Vec::Zero(params.b1.size());
  g.V1 = Mat::Zero(params.V1.rows(), params.V1.cols());
  g.b2 = Vec::Zero(params.b2.size());
  g.w2 = Vec::Zero(params.w2.size());
  g.b3 = 0.0;
  return g;
}

void backward(const ForwardTrace& trace, double dloss_dscore,
              const ModelParams& params, const Hyperparams& hp,
              const AssociationMatrix& mat, Gradients& grads) {
  if (grads.W1.rows() != params.W1.rows() || grads.W1.cols() != params.W1.cols() ||
      grads.V1.rows() != params.V1.rows() || grads.V1.cols() != params.V1.cols() ||
      grads.w2.size() != params.w2.size())
    throw std::invalid_argument("backward: gradient shape mismatch");
  if (trace.d.size() != params.w2.size())
    throw std::invalid_argument("backward: trace/parameter shape mismatch");

  if (dloss_dscore == 0.0) return;

  // score = sigmoid(logit)
  const double dz = dloss_dscore * trace.score * (1.0 - trace.score);

  const Vec hs = trace.h.cwiseProduct(trace.s);
  grads.w2 += dz * hs;
  grads.b3 += dz;

  const Vec dh = dz * params.w2.cwiseProduct(trace.s);
  const Vec ds = dz * params.w2.cwiseProduct(trace.h);

  // Disease encoder path.
  const Vec delta_s = ds.cwiseProduct(activation_grad(trace.z_s, trace.s, hp.activation));
  for (Index r : trace.disease_inputs) grads.V1.row(r) += delta_s.transpose();
  grads.b2 += delta_s;

  // Drug encoder path; fusion splits the signal between the drug's own
  // latent and the pooled neighbors.
  const bool fused = !trace.neighbors.empty();
  const double g = hp.fusion_weight;
  const Vec dd = fused ? Vec(g * dh) : dh;

  const Vec delta_d = dd.cwiseProduct(activation_grad(trace.z_d, trace.d, hp.activation));
  for (Index r : trace.drug_inputs) grads.W1.row(r) += delta_d.transpose();
  grads.b1 += delta_d;

  if (fused) {
    const double inv_count = 1.0 / static_cast<double>(trace.neighbors.size());
    const Vec dt = ((1.0 - g) * inv_count) * dh;
    for (std::size_t k = 0; k < trace.neighbors.size(); ++k) {
      const Vec delta_t = dt.cwiseProduct(
          activation_grad(trace.neighbor_z[k], trace.neighbor_d[k], hp.activation));
      for (Index r : input_rows_of_drug(hp, mat, trace.neighbors[k]))
        grads.W1.row(r) += delta_t.transpose();
      grads.b1 += delta_t;
    }
  }
}

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  // lr == 0 is accepted (no-op steps); only negative rates are rejected.
  if (learning_rate < 0.0)
    throw std::invalid_argument("learning_rate must be >= 0");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (neg_ratio < 1) throw std::invalid_argument("neg_ratio must be >= 1");
  if (weight_decay < 0.0)
    throw std::invalid_argument("weight_decay must be >= 0");
  loss.validate();
  hp.validate();
}

TrainDivergence::TrainDivergence(int at_epoch)
    : std::runtime_error("training diverged (non-finite loss) at epoch " +
                         std::to_string(at_epoch)),
      epoch(at_epoch) {}

TrainReport train(const AssociationMatrix& view, const TrainConfig& cfg) {
  cfg.validate();
  if (view.num_positives() == 0)
    throw std::invalid_argument("train: no positives in training view");

  const auto t0 = std::chrono::steady_clock::now();

  ModelParams params =
      init_params(cfg.hp, view.num_drugs(), view.num_diseases(), cfg.seed);
  Gradients grads = make_gradients(params);
  ParamPack ppack = pack(params);
  ParamPack gpack = pack(grads);
  Optimizer opt(cfg.optimizer, ppack.total());

  const std::vector<IdPair> positives = view.positives();
  std::vector<std::size_t> order(positives.size());

  const std::uint64_t shuffle_base = derive_seed(cfg.seed, 0x73687566 /* "shuf" */);
  const std::uint64_t negative_base = derive_seed(cfg.seed, 0x6e656773 /* "negs" */);

  TrainReport report;
  report.seed = cfg.seed;
  report.epoch_losses.reserve(static_cast<std::size_t>(cfg.epochs));

  std::vector<double> pos_scores, neg_scores;
  std::vector<ForwardTrace> traces;

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
      grads.set_zero();

      for (std::size_t b = cursor; b < batch_end; ++b) {
        const std::size_t pair_idx = order[b];
        const auto& [drug, disease] = positives[pair_idx];
        const std::vector<Index> negatives =
            sample_negatives(view, drug, static_cast<std::size_t>(cfg.neg_ratio),
                             derive_seed(epoch_neg_base, pair_idx));

        pos_scores.clear();
        neg_scores.clear();
        traces.clear();
        traces.push_back(forward(params, cfg.hp, view, drug, disease));
        pos_scores.push_back(traces.back().score);
        for (Index u : negatives) {
          traces.push_back(forward(params, cfg.hp, view, drug, u));
          neg_scores.push_back(traces.back().score);
        }

        const BatchLoss bl = batch_loss(pos_scores, neg_scores, cfg.loss);
        epoch_loss += bl.total;
        backward(traces[0], bl.dpositives[0], params, cfg.hp, view, grads);
        for (std::size_t u = 0; u < neg_scores.size(); ++u)
          backward(traces[u + 1], bl.dnegatives[u], params, cfg.hp, view, grads);
      }

      opt.step(ppack, gpack, cfg.learning_rate, cfg.weight_decay);
      cursor = batch_end;
    }

    if (!std::isfinite(epoch_loss)) throw TrainDivergence(epoch);
    report.epoch_losses.push_back(epoch_loss);
  }

  if (!params.all_finite())
    throw TrainDivergence(cfg.epochs > 0 ? cfg.epochs - 1 : 0);

  report.params = std::move(params);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

GridSearchResult grid_search(const AssociationMatrix& mat,
                             const FoldPlan& plan,
                             const std::vector<TrainConfig>& grid,
                             int hr_cutoff, int threads) {
  if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");

  GridSearchResult result;
  result.mean_aupr.assign(grid.size(), 0.0);

  parallel_for(grid.size(), threads, [&](std::size_t cell) {
    const TrainConfig& cfg = grid[cell];
    double sum = 0.0;
    for (int f = 0; f < plan.num_folds; ++f) {
      const AssociationMatrix view = training_view(mat, plan, f);
      const TrainReport rep = train(view, cfg);
      const ScoreMatrix scores = score_all(rep.params, cfg.hp, view);
      const MetricsReport mr =
          evaluate(scores, view, plan.fold_pairs(f), hr_cutoff);
      sum += mr.aupr;
    }
    result.mean_aupr[cell] = sum / plan.num_folds;
  });

  result.best = 0;
  for (std::size_t c = 1; c < grid.size(); ++c) {
    const double a = result.mean_aupr[c];
    const double b = result.mean_aupr[result.best];
    if (a > b) {
      result.best = c;
    } else if (a == b) {
      const auto& ch = grid[c].hp;
      const auto& bh = grid[result.best].hp;
      if (ch.latent_dim < bh.latent_dim ||
          (ch.latent_dim == bh.latent_dim && ch.neighbor_cap < bh.neighbor_cap))
        result.best = c;
    }
  }
  return result;
}

std::vector<TrainConfig> default_grid(const TrainConfig& base) {
  const int dims[] = {8, 16, 64, 128, 256, 512};
  const int caps[] = {1, 5, 10, 20};
  const double fusions[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  const double alphas[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  const double gammas[] = {1, 2, 3};
  const double margins[] = {0.001, 0.01, 0.1, 0.2};

  std::vector<TrainConfig> grid;
  grid.reserve(7200);
  for (int h : dims)
    for (int k : caps)
      for (double g : fusions)
        for (double a : alphas)
          for (double gm : gammas)
            for (double c : margins) {
              TrainConfig cell = base;
              cell.hp.latent_dim = h;
              cell.hp.neighbor_cap = k;
              cell.hp.fusion_weight = g;
              cell.loss.alpha = a;
              cell.loss.gamma = gm;
              cell.loss.margin = c;
              grid.push_back(cell);
            }
  return grid;
}

}  // namespace bmf
