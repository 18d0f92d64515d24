#pragma once

#include <string>
#include <vector>

#include "oddkh/homology.hpp"

namespace oddkh {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidateOptions {
  Convention convention = kDefaultConvention;
  /// Negative control: build the complex from an assignment with one edge
  /// flipped on an A or C face, which must break d^2 = 0.
  bool corrupt_assignment = false;
  /// Cap on the number of edges used for pivot and flip moves.
  std::size_t max_edge_moves = 4;
};

/// Runs the invariant battery on one graph: PU criteria, chordless-cycle
/// parity, subgraph closure, the corank lemma, freeness, cube parity,
/// assignment solving, d^2 = 0, assignment independence, Euler and UCT
/// consistency, and move invariance/closure.
std::vector<CheckResult> validate_graph(const LabeledGraph& g, const ValidateOptions& options = {});

}  // namespace oddkh
