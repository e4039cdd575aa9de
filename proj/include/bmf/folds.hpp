#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmf/association.hpp"

namespace bmf {

// Deterministic partition of the positive pairs into k folds. Pairs are kept
// in canonical (drug asc, disease asc) order with a parallel fold id array.
struct FoldPlan {
  int num_folds = 5;
  std::uint64_t seed = 0;
  std::vector<IdPair> pairs;   // canonical order
  std::vector<int> fold_of;    // parallel to pairs

  // Fold id of a positive pair; throws if the pair is not in the plan.
  int fold(Index drug, Index disease) const;
  std::vector<IdPair> fold_pairs(int f) const;
  std::vector<std::size_t> fold_sizes() const;
};

// Uniform random partition of the positives into k folds whose sizes differ
// by at most one. Identical (mat, k, seed) gives identical assignments.
// Requires k >= 2 and |positives| >= k.
FoldPlan make_folds(const AssociationMatrix& mat, int k, std::uint64_t seed);

// The matrix restricted to positives outside fold `held_out`. Dimensions and
// id maps are unchanged; rows or columns may become empty.
AssociationMatrix training_view(const AssociationMatrix& mat,
                                const FoldPlan& plan, int held_out);

// TSV round trip: `drug_id<TAB>disease_id<TAB>fold`, canonical pair order.
void save_fold_plan(const FoldPlan& plan, const AssociationMatrix& mat,
                    const std::string& path);
FoldPlan load_fold_plan(const std::string& path, const AssociationMatrix& mat);

}  // namespace bmf
