#pragma once

#include <map>
#include <string>

#include "bmf/train.hpp"

namespace bmf {

// Flat key=value config text. '#' comments and blank lines are skipped.
// std::map keeps dumps deterministically ordered.
using KvMap = std::map<std::string, std::string>;

KvMap parse_kv_text(const std::string& text);
KvMap parse_kv_file(const std::string& path);
void write_kv_file(const KvMap& kv, const std::string& path);

// Applies recognized keys onto the config; throws std::invalid_argument on
// an unknown key or unparsable value. Keys: epochs, lr, batch_size,
// neg_ratio, seed, weight_decay, optimizer, adam_beta1, adam_beta2,
// adam_eps, latent_dim, neighbor_cap, fusion_weight, activation, input_mode,
// mask_target, alpha, gamma, margin, loss.
void apply_kv(TrainConfig& cfg, const KvMap& kv);

// Inverse of apply_kv: every addressable field, formatted deterministically.
KvMap to_kv(const TrainConfig& cfg);

}  // namespace bmf
