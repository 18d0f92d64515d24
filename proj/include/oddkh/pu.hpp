#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oddkh/graph.hpp"

namespace oddkh {

enum class PuMethod { MinorsB, MinorsA, StateDets };

std::string_view pu_method_name(PuMethod m);
/// Accepts "minors-b", "minors-a", "state-dets"; throws SyntaxError otherwise.
PuMethod parse_pu_method(std::string_view name);

/// A violation of principal unimodularity. For minors-b and state-dets,
/// `state` is set and `det` is det A(state) (for a B-minor m this is m^2).
/// For minors-a the violating minor of A(G) is reported and `state` is set
/// only when the minor is principal.
struct PuCounterexample {
  PuMethod method = PuMethod::MinorsB;
  std::optional<State> state;
  Integer det;
  std::optional<MinorWitness> minor;  // indices into the full vertex list
};

/// nullopt means the orientation is principally unimodular.
std::optional<PuCounterexample> is_pu(const LabeledGraph& g, PuMethod method = PuMethod::MinorsB);

std::string describe(const LabeledGraph& g, const PuCounterexample& cx);

/// An induced cycle (length >= 4) listed in traversal order.
struct Cycle {
  std::vector<std::size_t> vertices;
};

/// Number of cycle edges oriented along the traversal.
std::size_t codirectional_edges(const LabeledGraph& g, const Cycle& c);

/// Induced cycles of an undirected graph given as adjacency bitsets. Each
/// cycle starts at its smallest vertex and its second vertex is smaller than
/// its last. Order: by start vertex, then DFS order over increasing neighbours.
std::vector<Cycle> chordless_cycles(const std::vector<std::uint64_t>& neighbours,
                                    std::size_t max_length);

/// First odd chordless cycle, or nullopt when every chordless cycle is even.
std::optional<Cycle> all_chordless_even(const LabeledGraph& g);

/// Labeled bipartite graph whose edges carry no direction.
struct UnorientedGraph {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

UnorientedGraph underlying(const LabeledGraph& g);

/// Tree edges of a BFS spanning forest are oriented part 0 -> part 1; the
/// remaining edges are fixed by chordless-cycle evenness and the candidate
/// is certified with is_pu. Throws NotBipartite.
std::optional<LabeledGraph> find_pu_orientation(const UnorientedGraph& u);

/// Vertex set alpha with R applied at every vertex of alpha turning g1 into
/// g2, choosing per component the alternative that excludes the component's
/// smallest vertex. nullopt when the orientations do not differ by R moves.
/// Throws StructureMismatch when vertices, labels or underlying edges differ.
std::optional<State> compare_orientations(const LabeledGraph& g1, const LabeledGraph& g2);

struct RandomGraphOptions {
  std::size_t attempts = 1000;
};

/// Deterministic in `seed`. Parts are balanced (ceil(n/2) vertices in part 0)
/// and shuffled, signs uniform, cross-part edges kept with probability
/// `edge_density`. Throws GiveUp after the attempt budget and SizeBound for n > 16.
LabeledGraph random_pu_graph(std::size_t n, double edge_density, std::uint64_t seed,
                             RandomGraphOptions options = {});

}  // namespace oddkh
