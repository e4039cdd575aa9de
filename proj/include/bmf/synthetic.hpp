#pragma once

#include <cstdint>

#include "bmf/association.hpp"

namespace bmf {

// Block-structured synthetic benchmark: drugs and diseases are split into
// `blocks` aligned groups and most associations fall inside the diagonal
// blocks. Every drug and disease receives at least one association so the
// matrix survives an edge-list round trip at full size. Deterministic.
//
// The bundled data/synthetic_200x150.tsv is exactly
// make_synthetic_blocks(200, 150, 10, 300, 13).
AssociationMatrix make_synthetic_blocks(Index num_drugs, Index num_diseases,
                                        int blocks, std::size_t num_positives,
                                        std::uint64_t seed);

}  // namespace bmf
