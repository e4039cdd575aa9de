#include "bmf/optimizer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bmf {

std::size_t ParamPack::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

Optimizer::Optimizer(const OptimizerConfig& cfg, std::size_t total_size)
    : cfg_(cfg) {
  if (cfg_.kind == OptimizerKind::kAdam) {
    m_.assign(total_size, 0.0);
    v_.assign(total_size, 0.0);
  }
}

void Optimizer::step(const ParamPack& params, const ParamPack& grads,
                     double lr, double weight_decay) {
  if (params.sizes != grads.sizes)
    throw std::invalid_argument("optimizer: parameter/gradient shape mismatch");

  if (cfg_.kind == OptimizerKind::kSgd) {
    for (std::size_t t = 0; t < params.data.size(); ++t) {
      double* p = params.data[t];
      const double* g = grads.data[t];
      for (std::size_t i = 0; i < params.sizes[t]; ++i)
        p[i] -= lr * (g[i] + weight_decay * p[i]);
    }
    return;
  }

  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  std::size_t off = 0;
  for (std::size_t t = 0; t < params.data.size(); ++t) {
    double* p = params.data[t];
    const double* g = grads.data[t];
    for (std::size_t i = 0; i < params.sizes[t]; ++i) {
      const double gi = g[i] + weight_decay * p[i];
      m_[off + i] = cfg_.beta1 * m_[off + i] + (1.0 - cfg_.beta1) * gi;
      v_[off + i] = cfg_.beta2 * v_[off + i] + (1.0 - cfg_.beta2) * gi * gi;
      const double mhat = m_[off + i] / bc1;
      const double vhat = v_[off + i] / bc2;
      p[i] -= lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
    off += params.sizes[t];
  }
}

const char* to_string(OptimizerKind k) {
  return k == OptimizerKind::kSgd ? "sgd" : "adam";
}

OptimizerKind optimizer_kind_from_string(const std::string& s) {
  if (s == "sgd") return OptimizerKind::kSgd;
  if (s == "adam") return OptimizerKind::kAdam;
  throw std::invalid_argument("unknown optimizer: " + s);
}

}  // namespace bmf
