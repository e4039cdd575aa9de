#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bmf {

using Index = std::int32_t;
using IdPair = std::pair<Index, Index>;  // (drug, disease)

// Binary drug-disease association matrix in sparse form, together with the
// external string ids of both axes. Immutable after construction and safe to
// share read-only across threads.
class AssociationMatrix {
 public:
  // `positives` may arrive in any order; duplicates are rejected here
  // (the edge-list loader deduplicates with a warning before calling).
  AssociationMatrix(std::vector<std::string> drug_ids,
                    std::vector<std::string> disease_ids,
                    const std::vector<IdPair>& positives);

  Index num_drugs() const { return static_cast<Index>(drug_ids_.size()); }
  Index num_diseases() const { return static_cast<Index>(disease_ids_.size()); }
  std::size_t num_positives() const { return num_positives_; }

  // 1 - |positives| / (m*n), always in (0, 1).
  double sparsity() const;

  bool has(Index drug, Index disease) const;

  // Diseases associated with a drug, ascending. Empty rows are legal
  // (they appear in training views).
  const std::vector<Index>& row(Index drug) const;
  // Drugs associated with a disease, ascending.
  const std::vector<Index>& col(Index disease) const;

  const std::vector<std::string>& drug_ids() const { return drug_ids_; }
  const std::vector<std::string>& disease_ids() const { return disease_ids_; }

  // -1 when the id is unknown.
  Index drug_index(const std::string& id) const;

  // All positive pairs in canonical (drug asc, disease asc) order.
  std::vector<IdPair> positives() const;

 private:
  std::vector<std::string> drug_ids_;
  std::vector<std::string> disease_ids_;
  std::vector<std::vector<Index>> rows_;
  std::vector<std::vector<Index>> cols_;
  std::unordered_map<std::string, Index> drug_lookup_;
  std::size_t num_positives_ = 0;
};

// Parses a UTF-8 TSV edge list, one `drug_id<TAB>disease_id` per line.
// Lines starting with '#' and blank lines are skipped. Indices are assigned
// by first appearance. Duplicate pairs are deduplicated with a warning on
// stderr; malformed lines and empty files raise std::runtime_error.
AssociationMatrix load_edge_list(const std::string& path);

// Drops all-zero rows and columns, re-indexing ids; positives are preserved
// exactly. Idempotent. Throws if the result would be empty.
AssociationMatrix prune_empty(const AssociationMatrix& mat);

// Writes the matrix back out as a TSV edge list in canonical pair order.
void write_edge_list(const AssociationMatrix& mat, const std::string& path);

}  // namespace bmf
