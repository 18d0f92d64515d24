#pragma once

// Independent reference implementations used only by the tests. They share
// nothing with the library beyond the LabeledGraph container.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "oddkh/graph.hpp"

namespace oracle {

using Mat = std::vector<std::vector<long long>>;

/// Laplace expansion along the first row.
long long cofactor_det(const Mat& m);

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, where
/// D_k is the gcd of all k x k minors. Nonzero factors only.
std::vector<long long> divisor_invariant_factors(const Mat& m);

/// Rank over the rationals via fraction-free elimination in long double free
/// integer arithmetic (row echelon with gcd reduction).
std::size_t rational_rank(Mat m);

/// Textbook Smith reduction: returns nonzero invariant factors.
std::vector<long long> smith_factors(Mat m);

struct Group {
  long long betti = 0;
  std::vector<long long> torsion;
  bool operator==(const Group&) const = default;
};

/// (i, q) -> group, nonzero groups only.
using Table = std::map<std::pair<int, int>, Group>;

/// Dense end-to-end pipeline: quotient modules, exterior edge maps by minors,
/// face classes from the composites (zero faces by the inner-signed rule), a
/// dense GF(2) solve for a type-X assignment, and dense Smith homology.
/// Practical for n <= 7.
Table khovanov(const oddkh::LabeledGraph& g);

/// Brute-force PU test: every principal minor of A(G) is 0 or 1.
bool principal_dets_ok(const oddkh::LabeledGraph& g);

}  // namespace oracle
