#pragma once

#include <string>

#include "bmf/mf_baseline.hpp"
#include "bmf/model.hpp"

namespace bmf {

enum class CheckpointKind : std::uint32_t { kBmf = 0, kMf = 1 };

// Trained model snapshot. Binary layout is documented in
// docs/checkpoint_format.md; save/load round trips are bit-exact.
struct Checkpoint {
  CheckpointKind kind = CheckpointKind::kBmf;
  Index m = 0;
  Index n = 0;
  Hyperparams hp;
  ModelParams params;  // kind == kBmf
  MfParams mf;         // kind == kMf
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace bmf
