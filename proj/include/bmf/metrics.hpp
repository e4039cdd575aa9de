#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bmf/association.hpp"
#include "bmf/model.hpp"

namespace bmf {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

// One P-R operating point: predict positive when score >= threshold.
struct PrPoint {
  double threshold = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  std::int64_t tp = 0;         // positives at or above the threshold
  std::int64_t predicted = 0;  // candidates at or above the threshold
};

struct MetricsReport {
  double aupr = 0.0;       // average precision over the ranked universe
  double f1 = 0.0;         // max F1 over all P-R operating points
  double hit_ratio = 0.0;  // per-drug top-K membership of test positives
  int hr_cutoff = 10;
  std::vector<PrPoint> pr_points;
  std::map<double, ConfusionCounts> confusion;  // keyed by threshold
  std::size_t num_test_positives = 0;
  std::size_t universe_size = 0;
};

// Scores every pair absent from `training` (the candidate universe) against
// the held-out positives. AUPR is average precision over the ranked list,
// ties broken by (drug, disease) ascending. F1 is the max over operating
// points; HR counts test positives ranked within the top `hr_cutoff` of
// their drug's candidates. Throws when test positives are empty, overlap
// the training positives, or any score is non-finite.
MetricsReport evaluate(const ScoreMatrix& scores,
                       const AssociationMatrix& training,
                       const std::vector<IdPair>& test_positives,
                       int hr_cutoff,
                       const std::vector<double>& confusion_thresholds = {0.1, 0.3});

// Confusion counts over the same universe at one threshold in (0,1).
ConfusionCounts confusion_at(const ScoreMatrix& scores,
                             const AssociationMatrix& training,
                             const std::vector<IdPair>& test_positives,
                             double threshold);

// One point per distinct score, descending threshold; recall non-decreasing.
std::vector<PrPoint> pr_curve(const ScoreMatrix& scores,
                              const AssociationMatrix& training,
                              const std::vector<IdPair>& test_positives);

// CSV / key=value writers (deterministic formatting).
void write_pr_csv(const std::vector<PrPoint>& points, const std::string& path);
void write_confusion_csv(const std::map<double, ConfusionCounts>& confusion,
                         const std::string& path);
void write_report_kv(const MetricsReport& report, const std::string& path);

// Shortest round-trip decimal form, stable across runs.
std::string format_double(double v);

}  // namespace bmf
