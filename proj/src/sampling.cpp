#include "bmf/sampling.hpp"

#include <algorithm>
#include <stdexcept>

#include "bmf/rng.hpp"

namespace bmf {

std::vector<Index> sample_negatives(const AssociationMatrix& mat, Index drug,
                                    std::size_t count, std::uint64_t seed) {
  if (drug < 0 || drug >= mat.num_drugs())
    throw std::out_of_range("sample_negatives: drug index out of range");
  if (count == 0)
    throw std::invalid_argument("sample_negatives: count must be >= 1");

  // Complement of the (sorted) positive row.
  const auto& pos = mat.row(drug);
  std::vector<Index> candidates;
  candidates.reserve(static_cast<std::size_t>(mat.num_diseases()) - pos.size());
  std::size_t p = 0;
  for (Index j = 0; j < mat.num_diseases(); ++j) {
    if (p < pos.size() && pos[p] == j) {
      ++p;
      continue;
    }
    candidates.push_back(j);
  }
  if (candidates.empty())
    throw std::invalid_argument("sample_negatives: drug has no non-associated disease");
  if (count >= candidates.size()) return candidates;

  // Partial Fisher-Yates: first `count` entries are the sample.
  Rng rng(derive_seed(seed, 0x6e6567 /* "neg" */));
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(
                           uniform_below(rng, candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(count);
  return candidates;
}

}  // namespace bmf
