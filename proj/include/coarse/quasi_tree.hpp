#pragma once

#include "coarse/graph.hpp"
#include "coarse/qi.hpp"
#include "coarse/report.hpp"

namespace coarse {

// Builds the (m, m) skeleton and reports whether its quotient is a tree. On a
// tree, the witness lists the quotient edges and the details carry the block
// diameter constants and the measured distortion of the natural map; on a
// cycle, the witness is a quotient cycle with the preimage of each block.
// Unrooted inputs are rooted at vertex 0. The verdict concerns scale m only.
Report quasi_tree_pipeline(const Graph& g, int m, const SamplingOptions& opts = {});

}  // namespace coarse
