#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmf/config.hpp"
#include "bmf/metrics.hpp"
#include "bmf/train.hpp"

namespace bmf {

// Model/loss lineup for the ablation experiments. The variant fixes
// (input_mode, loss.kind); mf swaps in the inner-product baseline.
enum class Variant { kBmf, kBmfOh, kBmfBce, kMf };

struct ExperimentManifest {
  std::string dataset_path;
  std::string config_path;  // optional key=value file
  std::uint64_t seed = 0;
  std::string out_dir;
  Variant variant = Variant::kBmf;
  int num_folds = 5;
  int hr_cutoff = 10;
  int threads = 0;  // 0 = hardware concurrency
};

void apply_variant(TrainConfig& cfg, Variant v);

struct CvResult {
  std::vector<MetricsReport> fold_reports;
  double mean_aupr = 0.0;
  double mean_f1 = 0.0;
  double mean_hr = 0.0;
};

// Cross-validated experiment: folds.tsv, then per fold
// fold_<k>/{checkpoint.bin, pr_curve.csv, confusion.csv, report.kv}, and
// summary.kv with per-fold and mean metrics. Re-running with identical
// inputs produces byte-identical files. Folds run on a worker pool.
CvResult run_cv(const ExperimentManifest& manifest, const TrainConfig& cfg);

// Single training run on the full dataset; writes checkpoint.bin, losses.csv
// and report.kv under the manifest output directory.
void run_train(const ExperimentManifest& manifest, const TrainConfig& cfg);

// Ranks the top-N unassociated diseases for one drug, CSV
// `rank,disease_id,score` on `out`. Unknown drug ids raise
// std::runtime_error listing the nearest known ids.
void run_predict(const std::string& checkpoint_path,
                 const std::string& dataset_path, const std::string& drug_id,
                 int top, std::ostream& out);

// Grid axes parsed from a key=value file whose values are comma- or
// space-separated lists. Missing axes stay at the base config's value.
std::vector<TrainConfig> parse_grid_file(const std::string& path,
                                         const TrainConfig& base);

// Cross-validated grid search with cell-hash resume: completed rows in
// grid.csv are skipped, missing cells are computed, and the table is
// rewritten in cell order. Writes best_config.kv for the winning cell.
void run_grid(const ExperimentManifest& manifest, const TrainConfig& base,
              const std::vector<TrainConfig>& grid);

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// FNV-1a over the cell's config dump; stable across runs and platforms.
std::uint64_t cell_hash(const TrainConfig& cfg);

// Default output root: $BMF_OUT_ROOT when set, else "runs".
std::string default_out_root();

}  // namespace bmf
