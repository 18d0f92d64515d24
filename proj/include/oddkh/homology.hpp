#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "oddkh/state_cube.hpp"

namespace oddkh {

/// Homological degree i and secondary grading q.
struct Bigrade {
  int i = 0;
  int q = 0;
  auto operator<=>(const Bigrade&) const = default;
};

/// Basis element of the exterior algebra of V(state): a subset of the
/// state's module generators.
struct ChainGenerator {
  State state;
  std::uint32_t mask = 0;
};

/// Bigraded complex with differential of degree (+1, 0).
struct ChainComplex {
  /// Generators per bigrade, ordered by cube position then mask.
  std::map<Bigrade, std::vector<ChainGenerator>> generators;
  /// boundaries[(i,q)] maps (i,q) to (i+1,q); row r holds the image of
  /// generator r as coefficients on the generators of (i+1,q).
  std::map<Bigrade, SparseIntMatrix> boundaries;

  std::size_t dim(Bigrade b) const;
  std::size_t total_generators() const;
  /// Boundary leaving b, or nullptr when it is zero-sized.
  const SparseIntMatrix* boundary(Bigrade b) const;
};

/// Builds the signed complex and verifies that every boundary preserves q
/// and squares to zero. Throws DSquaredNonzero.
ChainComplex build_complex(const StateCube& cube, const EdgeAssignment& eps);
ChainComplex build_complex(const LabeledGraph& g, const EdgeAssignment& eps);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  bool operator==(const HomologyGroup&) const = default;
};

/// Nonzero groups only.
using BigradedGroups = std::map<Bigrade, HomologyGroup>;
/// Nonzero dimensions of homology with F2 coefficients.
using F2Groups = std::map<Bigrade, std::size_t>;

BigradedGroups integer_homology(const ChainComplex& c);
F2Groups f2_homology(const ChainComplex& c);

/// Alternating generator count per q.
std::map<int, long long> euler(const ChainComplex& c);
/// Alternating Betti sum per q.
std::map<int, long long> euler(const BigradedGroups& h);

/// dim_F2 H(i,q) = betti(i,q) + #even torsion factors at (i,q) and (i+1,q).
/// With a differential raising i, the torsion of H(i+1) feeds the Tor term of H(i).
bool uct_check(const BigradedGroups& hz, const F2Groups& hf2);

struct Alignment {
  bool equal = false;
  int di = 0;
  int dq = 0;
  std::string report;  // differences when not equal
};

/// Shifts h2 so that its smallest nonzero bigrade meets that of h1 and
/// compares group by group.
Alignment align_and_compare(const BigradedGroups& h1, const BigradedGroups& h2);

/// One line per nonzero group sorted by (i,q): `h <i> <q> <betti> <torsion|->`.
std::string format_table(const BigradedGroups& h);
std::string format_table(const F2Groups& h);
/// Inverse of format_table for integer tables; throws SyntaxError.
BigradedGroups parse_table(std::string_view text);

/// Graph size from which a slow-run warning is emitted.
inline constexpr std::size_t kWarnVertices = 12;

struct KhovanovOptions {
  AssignmentKind kind = AssignmentKind::X;
  Convention convention = kDefaultConvention;
  /// Receives the size warning; nullptr silences it.
  std::ostream* warnings = nullptr;
};

struct KhovanovResult {
  EdgeAssignment assignment;
  ChainComplex complex;
  BigradedGroups integral;
  F2Groups mod2;
};

/// Full pipeline: PU check, assignment, complex, homology over Z and F2, with
/// the Euler and universal-coefficient checks. Throws NotPU for non-PU input.
KhovanovResult khovanov_full(const LabeledGraph& g, const KhovanovOptions& options = {});
BigradedGroups khovanov(const LabeledGraph& g, const KhovanovOptions& options = {});

/// Homology of the complex built from a given assignment, with the same checks.
KhovanovResult khovanov_with(const StateCube& cube, const EdgeAssignment& eps);

}  // namespace oddkh
