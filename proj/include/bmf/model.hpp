#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "bmf/association.hpp"

namespace bmf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ScoreMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Activation { kRelu, kSigmoid };
enum class InputMode { kBehavior, kOneHot };

struct Hyperparams {
  int latent_dim = 64;          // h
  int neighbor_cap = 10;        // max neighbors pooled per pair
  double fusion_weight = 0.5;   // g: weight of the drug's own latent
  Activation activation = Activation::kRelu;
  InputMode input_mode = InputMode::kBehavior;
  // Drop the scored pair itself from the drug row / disease column inputs.
  // Off by default: a training positive contributes to its own encoding.
  bool mask_target = false;

  void validate() const;  // throws std::invalid_argument
};

// All trainable tensors. First-layer input dimensions follow the input mode:
// behavior feeds rows/columns of R (W1 is n x h, V1 is m x h); one-hot feeds
// indicator vectors (W1 is m x h, V1 is n x h).
struct ModelParams {
  Mat W1;
  Vec b1;
  Mat V1;
  Vec b2;
  Vec w2;
  double b3 = 0.0;

  bool all_finite() const;
};

// Everything forward() computed for one pair, kept for backprop.
struct ForwardTrace {
  Index drug = 0;
  Index disease = 0;
  Vec z_d, d;                    // drug pre-activation and latent
  Vec z_s, s;                    // disease pre-activation and latent
  std::vector<Index> neighbors;  // actual pooled neighbor drugs, ascending
  std::vector<Vec> neighbor_z;
  std::vector<Vec> neighbor_d;
  Vec o;                         // pooled neighbor latent (zero when none)
  Vec h;                         // fused drug representation
  double logit = 0.0;
  double score = 0.0;
  // W1 / V1 rows that actually received input for the target drug / disease
  // (accounts for input mode and target masking).
  std::vector<Index> drug_inputs;
  std::vector<Index> disease_inputs;
};

// Glorot-uniform weights, zero biases. Deterministic given the seed.
ModelParams init_params(const Hyperparams& hp, Index m, Index n,
                        std::uint64_t seed);

// d_i = f(W1^T r + b1) with r the drug's behavior row (or one-hot indicator).
Vec drug_latent(const ModelParams& params, const Hyperparams& hp,
                const AssociationMatrix& mat, Index drug);

// s_j = f(V1^T c + b2) with c the disease's behavior column (or indicator).
Vec disease_latent(const ModelParams& params, const Hyperparams& hp,
                   const AssociationMatrix& mat, Index disease);

// Drugs associated with `disease` excluding `drug`, ascending, truncated
// to `cap` entries.
std::vector<Index> neighbor_set(const AssociationMatrix& mat, Index drug,
                                Index disease, int cap);

// Full pipeline for one pair: latents, neighbor pooling over the actual
// neighbor count, fusion, and the sigmoid-scored interaction. An empty
// neighbor set degrades to h = d.
ForwardTrace forward(const ModelParams& params, const Hyperparams& hp,
                     const AssociationMatrix& mat, Index drug, Index disease);

// Scores for every pair; entry (i,j) equals forward(...).score exactly.
// Latents are computed once per row/column and reused.
ScoreMatrix score_all(const ModelParams& params, const Hyperparams& hp,
                      const AssociationMatrix& mat);

double sigmoid(double z);

const char* to_string(Activation a);
const char* to_string(InputMode m);
Activation activation_from_string(const std::string& s);
InputMode input_mode_from_string(const std::string& s);

}  // namespace bmf
