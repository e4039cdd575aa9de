#include "bmf/folds.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bmf/rng.hpp"

namespace bmf {

int FoldPlan::fold(Index drug, Index disease) const {
  const IdPair key{drug, disease};
  const auto it = std::lower_bound(pairs.begin(), pairs.end(), key);
  if (it == pairs.end() || *it != key)
    throw std::out_of_range("fold plan: pair is not a known positive");
  return fold_of[static_cast<std::size_t>(it - pairs.begin())];
}

std::vector<IdPair> FoldPlan::fold_pairs(int f) const {
  std::vector<IdPair> out;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx)
    if (fold_of[idx] == f) out.push_back(pairs[idx]);
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_folds), 0);
  for (int f : fold_of) sizes[static_cast<std::size_t>(f)]++;
  return sizes;
}

FoldPlan make_folds(const AssociationMatrix& mat, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("make_folds: k must be >= 2");
  if (mat.num_positives() < static_cast<std::size_t>(k))
    throw std::invalid_argument("make_folds: fewer positives than folds");

  FoldPlan plan;
  plan.num_folds = k;
  plan.seed = seed;
  plan.pairs = mat.positives();  // canonical order
  plan.fold_of.assign(plan.pairs.size(), 0);

  std::vector<std::size_t> order(plan.pairs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x666f6c64 /* "fold" */));
  shuffle(order, rng);

  // Folds 0 .. rem-1 take one extra pair so sizes differ by at most one.
  const std::size_t base = plan.pairs.size() / static_cast<std::size_t>(k);
  const std::size_t rem = plan.pairs.size() % static_cast<std::size_t>(k);
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < rem ? 1 : 0);
    for (std::size_t s = 0; s < size; ++s) plan.fold_of[order[pos++]] = f;
  }
  return plan;
}

AssociationMatrix training_view(const AssociationMatrix& mat,
                                const FoldPlan& plan, int held_out) {
  if (held_out < 0 || held_out >= plan.num_folds)
    throw std::invalid_argument("training_view: held_out fold out of range");
  std::vector<IdPair> kept;
  kept.reserve(plan.pairs.size());
  for (std::size_t idx = 0; idx < plan.pairs.size(); ++idx)
    if (plan.fold_of[idx] != held_out) kept.push_back(plan.pairs[idx]);
  return AssociationMatrix(mat.drug_ids(), mat.disease_ids(), kept);
}

void save_fold_plan(const FoldPlan& plan, const AssociationMatrix& mat,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write fold plan: " + path);
  out << "# folds=" << plan.num_folds << " seed=" << plan.seed << "\n";
  for (std::size_t idx = 0; idx < plan.pairs.size(); ++idx) {
    const auto& [i, j] = plan.pairs[idx];
    out << mat.drug_ids()[i] << '\t' << mat.disease_ids()[j] << '\t'
        << plan.fold_of[idx] << '\n';
  }
  if (!out) throw std::runtime_error("error writing fold plan: " + path);
}

FoldPlan load_fold_plan(const std::string& path, const AssociationMatrix& mat) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fold plan: " + path);

  std::unordered_map<std::string, Index> disease_idx;
  for (Index j = 0; j < mat.num_diseases(); ++j)
    disease_idx.emplace(mat.disease_ids()[j], j);

  std::vector<std::pair<IdPair, int>> entries;
  std::string line;
  std::size_t line_no = 0;
  int max_fold = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string drug, disease, fold_str;
    if (!std::getline(ss, drug, '\t') || !std::getline(ss, disease, '\t') ||
        !std::getline(ss, fold_str)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed fold plan line");
    }
    const Index i = mat.drug_index(drug);
    const auto jt = disease_idx.find(disease);
    if (i < 0 || jt == disease_idx.end())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": unknown id in fold plan");
    const int f = std::stoi(fold_str);
    max_fold = std::max(max_fold, f);
    entries.push_back({{i, jt->second}, f});
  }
  std::sort(entries.begin(), entries.end());

  FoldPlan plan;
  plan.num_folds = max_fold + 1;
  for (auto& [pair, f] : entries) {
    plan.pairs.push_back(pair);
    plan.fold_of.push_back(f);
  }
  if (plan.pairs.size() != mat.num_positives())
    throw std::runtime_error("fold plan does not cover the matrix positives: " + path);
  return plan;
}

}  // namespace bmf
