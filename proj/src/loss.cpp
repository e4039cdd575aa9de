#include "bmf/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace bmf {

namespace {

constexpr double kEps = 1e-7;

double clamp_prob(double p) {
  if (p < kEps) return kEps;
  if (p > 1.0 - kEps) return 1.0 - kEps;
  return p;
}

void check_finite(double score) {
  if (!std::isfinite(score))
    throw std::invalid_argument("loss: non-finite score");
}

}  // namespace

void LossConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (!(margin >= 0.0 && margin < 1.0))
    throw std::invalid_argument("margin must lie in [0,1)");
}

LossTerm bcl_positive(double score, const LossConfig& cfg) {
  check_finite(score);
  const double p = clamp_prob(score);
  const double q = 1.0 - p;
  const double logp = std::log(p);
  const double w = std::pow(q, cfg.gamma);

  LossTerm t;
  t.loss = -cfg.alpha * w * logp;
  // d/dp [-a (1-p)^g ln p] = a g (1-p)^(g-1) ln p - a (1-p)^g / p
  const double focus = cfg.gamma == 0.0
                           ? 0.0
                           : cfg.gamma * std::pow(q, cfg.gamma - 1.0) * logp;
  t.dscore = cfg.alpha * focus - cfg.alpha * w / p;
  return t;
}

LossTerm bcl_negative(double score, const LossConfig& cfg) {
  check_finite(score);
  const double p = clamp_prob(score);
  // Hinge is active only above the margin; filtered samples contribute
  // nothing to loss or gradient (subgradient 0 at the kink).
  if (p <= cfg.margin) return {};

  const double z = 1.0 - p + cfg.margin;  // in (0,1) here
  const double hinge = -std::log(z);
  const double w = std::pow(p, cfg.gamma);

  LossTerm t;
  t.loss = (1.0 - cfg.alpha) * w * hinge;
  const double focus = cfg.gamma == 0.0
                           ? 0.0
                           : cfg.gamma * std::pow(p, cfg.gamma - 1.0) * hinge;
  t.dscore = (1.0 - cfg.alpha) * (focus + w / z);
  return t;
}

LossTerm bce_positive(double score) {
  check_finite(score);
  const double p = clamp_prob(score);
  return {-std::log(p), -1.0 / p};
}

LossTerm bce_negative(double score) {
  check_finite(score);
  const double p = clamp_prob(score);
  return {-std::log(1.0 - p), 1.0 / (1.0 - p)};
}

BatchLoss batch_loss(std::span<const double> positives,
                     std::span<const double> negatives,
                     const LossConfig& cfg) {
  if (positives.empty())
    throw std::invalid_argument("batch_loss: at least one positive required");
  cfg.validate();

  BatchLoss out;
  out.dpositives.resize(positives.size());
  out.dnegatives.resize(negatives.size());

  for (std::size_t i = 0; i < positives.size(); ++i) {
    const LossTerm t = cfg.kind == LossKind::kBcl
                           ? bcl_positive(positives[i], cfg)
                           : bce_positive(positives[i]);
    out.total += t.loss;
    out.dpositives[i] = t.dscore;
  }
  for (std::size_t i = 0; i < negatives.size(); ++i) {
    const LossTerm t = cfg.kind == LossKind::kBcl
                           ? bcl_negative(negatives[i], cfg)
                           : bce_negative(negatives[i]);
    out.total += t.loss;
    out.dnegatives[i] = t.dscore;
  }
  return out;
}

const char* to_string(LossKind k) { return k == LossKind::kBcl ? "bcl" : "bce"; }

LossKind loss_kind_from_string(const std::string& s) {
  if (s == "bcl") return LossKind::kBcl;
  if (s == "bce") return LossKind::kBce;
  throw std::invalid_argument("unknown loss kind: " + s);
}

}  // namespace bmf
