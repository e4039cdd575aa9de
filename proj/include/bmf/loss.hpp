#pragma once

#include <span>
#include <string>
#include <vector>

namespace bmf {

enum class LossKind { kBcl, kBce };

struct LossConfig {
  double alpha = 0.5;    // positive/negative balance, in (0,1)
  double gamma = 2.0;    // confidence down-weighting exponent, >= 0
  double margin = 0.01;  // c: negatives scoring <= c are filtered, in [0,1)
  LossKind kind = LossKind::kBcl;

  void validate() const;  // throws std::invalid_argument
};

struct LossTerm {
  double loss = 0.0;
  double dscore = 0.0;  // d loss / d score
};

// Positive term: -alpha * (1-p)^gamma * ln p. Scores are clamped to
// [1e-7, 1-1e-7] before logs; the gradient is evaluated at the clamped value.
LossTerm bcl_positive(double score, const LossConfig& cfg);

// Negative term: (1-alpha) * p^gamma * max(0, -ln(1-p+c)). Scores at or
// below the margin contribute exactly zero loss and zero gradient (the
// subgradient at the kink p == c is zero).
LossTerm bcl_negative(double score, const LossConfig& cfg);

// Unit-weight cross-entropy terms, same clamping.
LossTerm bce_positive(double score);
LossTerm bce_negative(double score);

struct BatchLoss {
  double total = 0.0;
  std::vector<double> dpositives;  // per positive score
  std::vector<double> dnegatives;  // per negative score
};

// Sum of per-sample terms; negatives are summed, never averaged. Requires at
// least one positive. kind selects BCL or plain BCE.
BatchLoss batch_loss(std::span<const double> positives,
                     std::span<const double> negatives, const LossConfig& cfg);

const char* to_string(LossKind k);
LossKind loss_kind_from_string(const std::string& s);

}  // namespace bmf
