#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bmf {

enum class OptimizerKind { kSgd, kAdam };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Flat view over a set of tensors (contiguous double storage each).
// Parameter and gradient packs must list tensors in the same order.
struct ParamPack {
  std::vector<double*> data;
  std::vector<std::size_t> sizes;

  void add(double* ptr, std::size_t n) {
    data.push_back(ptr);
    sizes.push_back(n);
  }
  std::size_t total() const;
};

// SGD / Adam over a ParamPack. Updates are strictly sequential, so a fixed
// gradient sequence yields bit-identical parameters.
class Optimizer {
 public:
  Optimizer(const OptimizerConfig& cfg, std::size_t total_size);

  // theta -= lr * step(grad + weight_decay * theta)
  void step(const ParamPack& params, const ParamPack& grads, double lr,
            double weight_decay);

 private:
  OptimizerConfig cfg_;
  std::vector<double> m_;  // first moment (adam)
  std::vector<double> v_;  // second moment (adam)
  long t_ = 0;
};

const char* to_string(OptimizerKind k);
OptimizerKind optimizer_kind_from_string(const std::string& s);

}  // namespace bmf
