#pragma once

#include <cstdint>
#include <vector>

#include "bmf/association.hpp"

namespace bmf {

// One training/eval instance: a (drug, disease) pair with its label and, for
// positives, the sampled negative disease set U.
struct SamplePair {
  Index drug = 0;
  Index disease = 0;
  bool positive = false;
  std::vector<Index> negatives;  // the set U when positive
};

// Samples `count` diseases uniformly without replacement from the diseases
// not associated with `drug` in `mat`. Returns all of them when fewer than
// `count` exist. Deterministic given the seed. Throws when the drug index is
// out of range, count is zero, or the drug has no non-associated disease.
std::vector<Index> sample_negatives(const AssociationMatrix& mat, Index drug,
                                    std::size_t count, std::uint64_t seed);

}  // namespace bmf
