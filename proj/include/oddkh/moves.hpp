#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oddkh/graph.hpp"

namespace oddkh {

enum class MoveKind { R, O1Add, O1Remove, O2Add, O2Remove, O3Forward, O3Backward, O4 };

/// Direction of a new twin edge seen from the twin.
enum class EdgeDir { Out, In };

/// One Reidemeister move with its arguments.
///   R, O1Remove:            vertices = {v}
///   O1Add:                  vertices = {name}, signs = {s}, part
///   O2Add:                  vertices = {n1, n2}, signs = {s1, s2}, neighbours, dirs
///   O2Remove, O4:           vertices = {u, v}
///   O3Forward, O3Backward:  vertices = {u, v, w}
/// `guarded` = false selects the raw move without the PU requirement (only
/// O2Add and O4 have an unguarded form; it is written `O2+!` / `O4!`).
struct Move {
  MoveKind kind = MoveKind::R;
  std::vector<std::string> vertices;
  std::vector<int> signs;
  int part = 0;
  std::vector<std::string> neighbours;
  std::vector<EdgeDir> dirs;
  bool guarded = true;

  bool operator==(const Move&) const = default;
};

using MoveScript = std::vector<Move>;

/// One line of the move-script format; throws SyntaxError.
Move parse_move(std::string_view line);
std::string format_move(const Move& m);
/// '#' comments and blank lines are skipped; errors name the line.
MoveScript parse_script(std::string_view text);
std::string format_script(const MoveScript& script);

LabeledGraph apply_R(const LabeledGraph& g, std::string_view v);

LabeledGraph omega1_add(const LabeledGraph& g, std::string_view name, int sign, int part = 0);
LabeledGraph omega1_remove(const LabeledGraph& g, std::string_view v);

/// Adds twins adjacent to exactly `neighbours` with the given per-neighbour
/// directions. The twins go into the part opposite the neighbours (part 0
/// when the neighbourhood is empty). With `guarded`, the result must be PU.
LabeledGraph omega2_add(const LabeledGraph& g, const std::vector<std::string>& names,
                        const std::vector<int>& signs, const std::vector<std::string>& neighbours,
                        const std::vector<EdgeDir>& dirs, bool guarded = true);
LabeledGraph omega2_remove(const LabeledGraph& g, std::string_view u, std::string_view v);

/// u -> v, u -> w, N(u) = {v, w}, all three signed '-'. u takes row(v) -
/// row(w) and moves to the opposite part (its new neighbours share its old
/// part); v and w become '+'.
LabeledGraph omega3_forward(const LabeledGraph& g, std::string_view u, std::string_view v,
                            std::string_view w);
LabeledGraph omega3_backward(const LabeledGraph& g, std::string_view u, std::string_view v,
                             std::string_view w);

/// Pivot on the edge uv. The guarded form requires a PU input and applies
/// a_ij - a_uv a_iu a_jv + a_uv a_iv a_ju; labels (a, b) become (-b, -a).
LabeledGraph omega4(const LabeledGraph& g, std::string_view u, std::string_view v, bool guarded = true);

struct FlipResult {
  MoveScript script;
  LabeledGraph graph;
};

/// Reverses the edge uv using two twin insertions, two pivots and two twin
/// removals. The middle graphs carry an odd square, so the twin insertion
/// and the pivots run unguarded.
FlipResult flip_edge_macro(const LabeledGraph& g, std::string_view u, std::string_view v);

LabeledGraph apply_move(const LabeledGraph& g, const Move& m);

/// Applies moves in order; the first failure throws MoveError with its index.
LabeledGraph apply_script(const LabeledGraph& g, const MoveScript& script);

}  // namespace oddkh
