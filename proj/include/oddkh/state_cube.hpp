#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oddkh/graph.hpp"

namespace oddkh {

/// Largest graph for which the state cube is built.
inline constexpr std::size_t kMaxCubeVertices = 16;

enum class EdgeKind { Wedge, Plain };
enum class FaceClass { A, C, X, Y };
enum class AssignmentKind { X, Y };

/// Rule deciding X versus Y on a zero face with coordinates i, j.
///   Inner:       X iff x_a = x_b in V(s+a), a the inner coordinate vertex.
///   Signed:      X iff x_i = sgn(v_j) x_j in V(s+i), taking i < j.
///   InnerSigned: X iff x_a = sgn(v_b) x_b in V(s+a), a the inner vertex.
/// Only InnerSigned satisfies the cube parity condition in general.
enum class Convention { Inner, Signed, InnerSigned };
inline constexpr Convention kDefaultConvention = Convention::InnerSigned;

std::string_view edge_kind_name(EdgeKind k);
std::string_view face_class_name(FaceClass c);
std::string_view assignment_kind_name(AssignmentKind k);
std::string_view convention_name(Convention c);
/// "X"/"Y" and "inner"/"signed"/"inner-signed"; throw SyntaxError otherwise.
AssignmentKind parse_assignment_kind(std::string_view s);
Convention parse_convention(std::string_view s);

/// Relation matrix of V(s): row i is e_i [v_i not in s] plus abar_ij for j in s,
/// where abar_ij = -sgn(v_j) a_ij.
IntMatrix relation_matrix(const LabeledGraph& g, State s);

/// V(s) = Z^n / rows of the relation matrix, with the class of x_j given by
/// column j of the projection.
struct StateModule {
  State state;
  std::size_t rank = 0;
  IntMatrix projection;  // rank x n
  IntMatrix section;     // n x rank

  std::vector<std::int64_t> pi;     // projection, row-major
  std::vector<std::int64_t> sigma;  // section, row-major
  std::size_t n = 0;

  std::int64_t pi_at(std::size_t r, std::size_t j) const { return pi[r * n + j]; }
  /// Column j of the projection: the class of x_j.
  std::vector<std::int64_t> generator(std::size_t j) const;
};

/// Builds V(s) and checks rank V(s) = cor A(s). Throws TorsionDetected or
/// LemmaViolation.
StateModule state_module(const LabeledGraph& g, State s);

struct CubeEdge {
  State source;
  State target;
  std::size_t coordinate = 0;
  EdgeKind kind = EdgeKind::Plain;
};

/// Linear map between exterior algebras of free modules. Basis elements of
/// the exterior algebra of Z^k are bitmasks over k generators; column m lists
/// the image of the basis element m as (target mask, coefficient).
struct ExteriorMap {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

  bool is_zero() const;
  ExteriorMap operator-() const;
  bool operator==(const ExteriorMap&) const = default;
};

/// second o first
ExteriorMap compose(const ExteriorMap& second, const ExteriorMap& first);

struct FaceType {
  int raw = 0;  // 1..5
  FaceClass cls = FaceClass::A;
  /// Inner flags of the two coordinate vertices (i, j as passed).
  bool inner_i = false;
  bool inner_j = false;
};

/// The hypercube of states of a graph with memoized modules and edge maps.
class StateCube {
 public:
  /// Throws SizeBound above kMaxCubeVertices.
  explicit StateCube(LabeledGraph g);
  ~StateCube();
  StateCube(StateCube&&) noexcept;
  StateCube& operator=(StateCube&&) noexcept;

  const LabeledGraph& graph() const noexcept { return graph_; }
  std::size_t dimension() const noexcept { return graph_.size(); }
  std::size_t state_count() const noexcept { return std::size_t{1} << dimension(); }
  /// The all-positive state, source of every arrow leaving it.
  State initial_corner() const noexcept { return positives_; }

  const StateModule& module(State s) const;
  std::size_t rank(State s) const { return module(s).rank; }

  /// True iff x_i = 0 in V(s); cross-checked against the corank jump.
  bool xi_zero(State s, std::size_t i) const;

  /// Whether the cube arrow along coordinate i leaves s.
  bool is_source(State s, std::size_t i) const;
  /// Cube position: the state relative to the initial corner.
  std::uint64_t position(State s) const noexcept { return s.bits() ^ positives_.bits(); }
  State state_at(std::uint64_t position) const noexcept { return State(position ^ positives_.bits()); }

  CubeEdge edge(State source, std::size_t i) const;
  /// All n 2^(n-1) edges ordered by source position, then coordinate.
  std::vector<CubeEdge> edges() const;

  /// The differential component along the edge leaving `source` in
  /// direction i, before signs.
  const ExteriorMap& edge_map(State source, std::size_t i) const;

  /// Face spanned by i and j at its source corner s. Throws NotAFace,
  /// CompositeMismatch or LemmaViolation.
  FaceType classify_face(State s, std::size_t i, std::size_t j, Convention convention) const;

 private:
  struct Cache;
  LabeledGraph graph_;
  State positives_;
  std::unique_ptr<Cache> cache_;
};

/// Whether v is inner: part 0 with sign -, or part 1 with sign +.
bool is_inner(const Vertex& v);

bool xi_zero(const LabeledGraph& g, State s, std::size_t i);
std::vector<CubeEdge> cube_edges(const LabeledGraph& g);
ExteriorMap edge_map(const LabeledGraph& g, const CubeEdge& e);
FaceType classify_face(const LabeledGraph& g, State s, std::size_t i, std::size_t j, Convention convention);

/// Classes of every face, indexed by source position and coordinate pair.
class FaceTable {
 public:
  FaceTable(const StateCube& cube, Convention convention);
  FaceClass at(std::uint64_t position, std::size_t i, std::size_t j) const;
  const FaceType& type_at(std::uint64_t position, std::size_t i, std::size_t j) const;
  std::size_t dimension() const noexcept { return n_; }
  /// Number of faces per class, in A, C, X, Y order.
  std::vector<std::size_t> counts() const;
  /// Number of faces per raw type 1..5 (index 0 unused).
  std::vector<std::size_t> raw_counts() const;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  std::size_t n_;
  std::vector<FaceType> types_;
};

/// Signs per cube edge; sign(position, i) for the edge leaving the cube
/// position along coordinate i.
struct EdgeAssignment {
  AssignmentKind kind = AssignmentKind::X;
  Convention convention = kDefaultConvention;
  std::size_t n = 0;
  std::vector<std::int8_t> signs;  // index position * n + i; unused slots 0

  int sign(std::uint64_t position, std::size_t i) const { return signs[position * n + i]; }
  bool operator==(const EdgeAssignment&) const = default;
};

/// Required parity of the number of -1 edges on a face of the given class.
int target_parity(AssignmentKind kind, FaceClass cls);

/// Deterministic solution of the face parity system: edges leaving a
/// position with no bit below their coordinate get +1, every other edge is
/// fixed by the face that closes it, and then every face is verified.
/// Throws Infeasible with the first failing face.
EdgeAssignment solve_edge_assignment(const StateCube& cube, const FaceTable& faces, AssignmentKind kind,
                                     Convention convention);
EdgeAssignment solve_edge_assignment(const LabeledGraph& g, AssignmentKind kind, Convention convention);

/// First face whose parity does not match its class, or nullopt.
struct FaceViolation {
  std::uint64_t position = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  FaceClass cls = FaceClass::A;
};
std::optional<FaceViolation> check_assignment(const FaceTable& faces, const EdgeAssignment& eps);

/// A second assignment of the same kind: the coboundary of the initial corner
/// added to eps (every edge leaving the initial corner flips).
EdgeAssignment flip_initial_corner(const EdgeAssignment& eps);

/// Copy of eps with one edge of the first A or C face flipped; such an
/// assignment breaks the square of the differential. nullopt when the cube
/// has no A or C face.
std::optional<EdgeAssignment> corrupt_assignment(const FaceTable& faces, const EdgeAssignment& eps);

/// Dense GF(2) formulation of the same system, used for cross-checking.
std::optional<EdgeAssignment> solve_edge_assignment_dense(const FaceTable& faces, AssignmentKind kind,
                                                          Convention convention);

struct SubcubeViolation {
  std::uint64_t position = 0;
  std::size_t i = 0, j = 0, k = 0;
  std::size_t a = 0, c = 0, x = 0, y = 0;
};

struct ParityReport {
  std::size_t subcubes = 0;
  std::size_t violations = 0;
  std::vector<SubcubeViolation> examples;  // at most a few
  std::vector<std::size_t> face_counts;    // A, C, X, Y

  bool clean() const { return violations == 0; }
};

/// Checks that every 3-subcube has an even number of A+X faces and of A+Y faces.
ParityReport validate_cube_parity(const FaceTable& faces);
ParityReport validate_cube_parity(const LabeledGraph& g, Convention convention);

}  // namespace oddkh
