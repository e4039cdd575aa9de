#pragma once

#include <cstdint>
#include <vector>

#include "bmf/association.hpp"
#include "bmf/folds.hpp"
#include "bmf/loss.hpp"
#include "bmf/model.hpp"
#include "bmf/optimizer.hpp"

namespace bmf {

// Gradient accumulator shaped like ModelParams.
struct Gradients {
  Mat W1;
  Vec b1;
  Mat V1;
  Vec b2;
  Vec w2;
  double b3 = 0.0;

  void set_zero();
};

Gradients make_gradients(const ModelParams& params);

// Reverse-mode gradients of `dloss_dscore * score` through the whole
// pipeline, accumulated into `grads`. Includes the paths through the disease
// latent, the drug latent, and every pooled neighbor latent (each scaled by
// (1-g)/|N|). Throws on shape mismatch.
void backward(const ForwardTrace& trace, double dloss_dscore,
              const ModelParams& params, const Hyperparams& hp,
              const AssociationMatrix& mat, Gradients& grads);

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 1e-3;
  OptimizerConfig optimizer;
  int batch_size = 256;   // positives per optimizer step
  int neg_ratio = 5;      // negatives sampled per positive, rho
  std::uint64_t seed = 0;
  double weight_decay = 0.0;
  LossConfig loss;
  Hyperparams hp;

  void validate() const;  // throws std::invalid_argument
};

struct TrainReport {
  std::vector<double> epoch_losses;
  ModelParams params;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

// Epoch loop: shuffle positives, redraw `neg_ratio` negatives per positive
// (fresh seed per epoch), accumulate batch gradients, apply the optimizer.
// Deterministic given cfg.seed. Throws TrainDivergence when the epoch loss
// stops being finite.
TrainReport train(const AssociationMatrix& view, const TrainConfig& cfg);

struct TrainDivergence : std::runtime_error {
  int epoch;
  explicit TrainDivergence(int at_epoch);
};

struct GridSearchResult {
  std::vector<double> mean_aupr;  // one entry per grid cell
  std::size_t best = 0;           // ties: smaller latent_dim, then smaller cap
};

// Evaluates each cell by mean validation AUPR over the plan's folds.
// `threads` > 1 trains independent cells concurrently.
GridSearchResult grid_search(const AssociationMatrix& mat,
                             const FoldPlan& plan,
                             const std::vector<TrainConfig>& grid,
                             int hr_cutoff = 10, int threads = 1);

// Full hyperparameter grid: latent_dim x neighbor_cap x fusion_weight x
// alpha x gamma x margin (6*4*5*5*3*4 = 7200 cells), other fields from base.
std::vector<TrainConfig> default_grid(const TrainConfig& base);

}  // namespace bmf
