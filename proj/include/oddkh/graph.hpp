#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oddkh/linalg.hpp"

namespace oddkh {

/// Largest vertex count a LabeledGraph may hold (states are 64-bit sets).
inline constexpr std::size_t kMaxVertices = 64;

/// A subset of vertex indices.
class State {
 public:
  constexpr State() = default;
  constexpr explicit State(std::uint64_t bits) : bits_(bits) {}

  static State from_indices(std::initializer_list<std::size_t> idx) {
    State s;
    for (auto i : idx) s = s.with(i);
    return s;
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool contains(std::size_t i) const noexcept { return (bits_ >> i) & 1u; }
  constexpr State with(std::size_t i) const noexcept { return State(bits_ | (std::uint64_t{1} << i)); }
  constexpr State without(std::size_t i) const noexcept { return State(bits_ & ~(std::uint64_t{1} << i)); }
  constexpr State toggled(std::size_t i) const noexcept { return State(bits_ ^ (std::uint64_t{1} << i)); }
  constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  std::vector<std::size_t> indices() const;

  constexpr auto operator<=>(const State&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

struct Vertex {
  std::string name;
  int part = 0;   // 0 or 1
  int sign = -1;  // -1 or +1
  bool operator==(const Vertex&) const = default;
};

/// Oriented bipartite labeled graph with a skew-symmetric {0, +-1} adjacency
/// matrix. Vertex order is the indexing order of every matrix derived from it.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  /// Validates every invariant (skew-symmetry, zero diagonal, bipartite
  /// support, unique names, signs and parts in range); throws Internal on a
  /// malformed matrix and DuplicateName on repeated names.
  LabeledGraph(std::vector<Vertex> vertices, std::vector<std::int8_t> adjacency);

  /// Builds from directed edges (src, dst) given by index.
  static LabeledGraph from_edges(std::vector<Vertex> vertices,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownVertex.
  std::size_t index_of(std::string_view name) const;

  /// a_ij: +1 if v_i -> v_j, -1 if v_j -> v_i, 0 otherwise.
  int at(std::size_t i, std::size_t j) const { return adj_[i * size() + j]; }
  const std::vector<std::int8_t>& raw_adjacency() const noexcept { return adj_; }

  bool adjacent(std::size_t i, std::size_t j) const { return at(i, j) != 0; }
  std::size_t edge_count() const;
  /// Directed edges (src, dst) in (src, dst) index order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  State all() const { return State(size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1); }
  /// The set of '+' vertices: the source corner of the state cube.
  State positive_vertices() const;

  bool operator==(const LabeledGraph&) const = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::int8_t> adj_;
};

// --- operations -------------------------------------------------------------

/// Vertex declarations and edges read from a graph file. Directed edges come
/// from `edge` lines, undirected ones from the `uedge` extension.
struct GraphFile {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> directed;
  std::vector<std::pair<std::size_t, std::size_t>> undirected;
};

/// Reads the line format without checking bipartiteness of `uedge` lines.
/// Errors carry the 1-based line number.
GraphFile parse_graph_file(std::string_view text);

/// Parses a fully oriented graph file. `uedge` lines are a SyntaxError here.
LabeledGraph parse_graph(std::string_view text);

/// Canonical text: vertices in index order, then edges in (src, dst) order.
std::string serialize_graph(const LabeledGraph& g);

IntMatrix adjacency_matrix(const LabeledGraph& g);
IntMatrix induced_matrix(const LabeledGraph& g, State s);

/// B(s): rows are s ∩ V_0, columns s ∩ V_1, both in index order.
struct BipartiteBlock {
  IntMatrix matrix;
  std::vector<std::size_t> row_vertices;
  std::vector<std::size_t> col_vertices;
};
BipartiteBlock bipartite_block(const LabeledGraph& g, State s);

/// |s| - rank A(s).
std::size_t corank(const LabeledGraph& g, State s);

State neighborhood(const LabeledGraph& g, std::size_t v);
State neighborhood(const LabeledGraph& g, std::string_view name);

/// Homological degree: number of cube arrows from the all-positive state.
int grading_i(const LabeledGraph& g, State s);

/// Secondary grading of a degree-k exterior generator at state s.
int grading_q(int corank, int degree, int i);

/// The induced subgraph on s (vertex order preserved).
LabeledGraph induced_subgraph(const LabeledGraph& g, State s);

/// Brace list of vertex names, e.g. "{u,v}".
std::string format_state(const LabeledGraph& g, State s);

bool valid_vertex_name(std::string_view name);

}  // namespace oddkh
