#pragma once

#include <cstdint>
#include <vector>

#include "bmf/association.hpp"
#include "bmf/model.hpp"
#include "bmf/train.hpp"

namespace bmf {

// Plain matrix factorization reference baseline: free drug/disease
// embeddings scored by sigmoid(p_i . q_j), trained with BCE under the same
// negative-sampling protocol as the main model.
struct MfParams {
  Mat P;  // m x h
  Mat Q;  // n x h
};

MfParams init_mf(Index m, Index n, int latent_dim, std::uint64_t seed);

double mf_score(const MfParams& params, Index drug, Index disease);

ScoreMatrix mf_score_all(const MfParams& params);

struct MfReport {
  std::vector<double> epoch_losses;
  MfParams params;
  double wall_seconds = 0.0;
};

// Uses cfg.hp.latent_dim, the optimizer settings, epochs, batch size,
// neg_ratio and seed; loss kind is forced to BCE.
MfReport train_mf(const AssociationMatrix& view, const TrainConfig& cfg);

}  // namespace bmf
