#include "bmf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bmf {

namespace {

struct Candidate {
  double score;
  Index drug;
  Index disease;
  bool positive;
};

// Descending score; ties broken by (drug, disease) ascending.
bool ranked_before(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.drug != b.drug) return a.drug < b.drug;
  return a.disease < b.disease;
}

// The candidate universe: every pair absent from the training positives.
std::vector<Candidate> build_universe(const ScoreMatrix& scores,
                                      const AssociationMatrix& training,
                                      const std::vector<IdPair>& test_positives) {
  const Index m = training.num_drugs();
  const Index n = training.num_diseases();
  if (scores.rows() != m || scores.cols() != n)
    throw std::invalid_argument("evaluate: score matrix shape mismatch");
  if (test_positives.empty())
    throw std::invalid_argument("evaluate: no test positives");

  std::vector<std::vector<Index>> test_rows(static_cast<std::size_t>(m));
  for (const auto& [i, j] : test_positives) {
    if (i < 0 || i >= m || j < 0 || j >= n)
      throw std::invalid_argument("evaluate: test positive out of range");
    if (training.has(i, j))
      throw std::invalid_argument(
          "evaluate: test positives overlap training positives");
    test_rows[static_cast<std::size_t>(i)].push_back(j);
  }
  for (auto& r : test_rows) std::sort(r.begin(), r.end());

  std::vector<Candidate> universe;
  universe.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n) -
                   training.num_positives());
  for (Index i = 0; i < m; ++i) {
    const auto& trained = training.row(i);
    const auto& tested = test_rows[static_cast<std::size_t>(i)];
    std::size_t tp = 0, te = 0;
    for (Index j = 0; j < n; ++j) {
      if (tp < trained.size() && trained[tp] == j) {
        ++tp;
        continue;
      }
      const double s = scores(i, j);
      if (!std::isfinite(s))
        throw std::invalid_argument("evaluate: non-finite score");
      bool positive = false;
      if (te < tested.size() && tested[te] == j) {
        positive = true;
        ++te;
      }
      universe.push_back({s, i, j, positive});
    }
  }
  return universe;
}

std::vector<PrPoint> curve_from_ranked(const std::vector<Candidate>& ranked,
                                       std::int64_t num_positives) {
  std::vector<PrPoint> points;
  std::int64_t tp = 0;
  std::size_t k = 0;
  while (k < ranked.size()) {
    // Consume one distinct-score group.
    const double threshold = ranked[k].score;
    std::size_t end = k;
    while (end < ranked.size() && ranked[end].score == threshold) {
      if (ranked[end].positive) ++tp;
      ++end;
    }
    PrPoint p;
    p.threshold = threshold;
    p.tp = tp;
    p.predicted = static_cast<std::int64_t>(end);
    p.recall = static_cast<double>(tp) / static_cast<double>(num_positives);
    p.precision = static_cast<double>(tp) / static_cast<double>(p.predicted);
    points.push_back(p);
    k = end;
  }
  return points;
}

}  // namespace

MetricsReport evaluate(const ScoreMatrix& scores,
                       const AssociationMatrix& training,
                       const std::vector<IdPair>& test_positives,
                       int hr_cutoff,
                       const std::vector<double>& confusion_thresholds) {
  std::vector<Candidate> universe = build_universe(scores, training, test_positives);
  const auto num_pos = static_cast<std::int64_t>(test_positives.size());

  std::vector<Candidate> ranked = universe;
  std::sort(ranked.begin(), ranked.end(), ranked_before);

  MetricsReport report;
  report.hr_cutoff = hr_cutoff;
  report.num_test_positives = test_positives.size();
  report.universe_size = universe.size();

  // Average precision over the fully ordered list.
  double ap = 0.0;
  std::int64_t tp = 0;
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    if (!ranked[r].positive) continue;
    ++tp;
    ap += static_cast<double>(tp) / static_cast<double>(r + 1);
  }
  report.aupr = ap / static_cast<double>(num_pos);

  report.pr_points = curve_from_ranked(ranked, num_pos);

  // Max F1 over operating points, from integer counts:
  // F1 = 2 tp / (predicted + positives).
  double best_f1 = 0.0;
  for (const auto& p : report.pr_points) {
    const double f1 =
        2.0 * static_cast<double>(p.tp) / static_cast<double>(p.predicted + num_pos);
    best_f1 = std::max(best_f1, f1);
  }
  report.f1 = best_f1;

  // Hit ratio: per-drug rank of each test positive among that drug's
  // candidates, hit when rank <= cutoff. Same ordering rule as the global
  // ranking restricted to one row.
  std::int64_t hits = 0;
  for (const auto& [i, j] : test_positives) {
    const double s = scores(i, j);
    std::int64_t rank = 1;
    const auto& trained = training.row(i);
    std::size_t t = 0;
    for (Index jj = 0; jj < training.num_diseases(); ++jj) {
      if (t < trained.size() && trained[t] == jj) {
        ++t;
        continue;
      }
      if (jj == j) continue;
      const double other = scores(i, jj);
      if (other > s || (other == s && jj < j)) ++rank;
    }
    if (rank <= hr_cutoff) ++hits;
  }
  report.hit_ratio = static_cast<double>(hits) / static_cast<double>(num_pos);

  for (double threshold : confusion_thresholds)
    report.confusion[threshold] =
        confusion_at(scores, training, test_positives, threshold);
  return report;
}

ConfusionCounts confusion_at(const ScoreMatrix& scores,
                             const AssociationMatrix& training,
                             const std::vector<IdPair>& test_positives,
                             double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("confusion_at: threshold must lie in (0,1)");
  ConfusionCounts c;
  for (const Candidate& cand : build_universe(scores, training, test_positives)) {
    const bool predicted = cand.score >= threshold;
    if (cand.positive)
      (predicted ? c.tp : c.fn)++;
    else
      (predicted ? c.fp : c.tn)++;
  }
  return c;
}

std::vector<PrPoint> pr_curve(const ScoreMatrix& scores,
                              const AssociationMatrix& training,
                              const std::vector<IdPair>& test_positives) {
  std::vector<Candidate> ranked = build_universe(scores, training, test_positives);
  std::sort(ranked.begin(), ranked.end(), ranked_before);
  return curve_from_ranked(ranked, static_cast<std::int64_t>(test_positives.size()));
}

std::string format_double(double v) {
  char buf[64];
  // Shortest form that round-trips a double.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double parsed = 0.0;
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == v) break;
  }
  return buf;
}

void write_pr_csv(const std::vector<PrPoint>& points, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write P-R csv: " + path);
  out << "threshold,recall,precision\n";
  for (const auto& p : points)
    out << format_double(p.threshold) << ',' << format_double(p.recall) << ','
        << format_double(p.precision) << '\n';
  if (!out) throw std::runtime_error("error writing P-R csv: " + path);
}

void write_confusion_csv(const std::map<double, ConfusionCounts>& confusion,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write confusion csv: " + path);
  out << "threshold,tp,fp,tn,fn\n";
  for (const auto& [threshold, c] : confusion)
    out << format_double(threshold) << ',' << c.tp << ',' << c.fp << ','
        << c.tn << ',' << c.fn << '\n';
  if (!out) throw std::runtime_error("error writing confusion csv: " + path);
}

void write_report_kv(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << "aupr=" << format_double(report.aupr) << '\n'
      << "f1=" << format_double(report.f1) << '\n'
      << "hit_ratio=" << format_double(report.hit_ratio) << '\n'
      << "hr_cutoff=" << report.hr_cutoff << '\n'
      << "test_positives=" << report.num_test_positives << '\n'
      << "universe=" << report.universe_size << '\n';
  if (!out) throw std::runtime_error("error writing report: " + path);
}

}  // namespace bmf
