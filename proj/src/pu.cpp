#include "oddkh/pu.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

namespace oddkh {

std::string_view pu_method_name(PuMethod m) {
  switch (m) {
    case PuMethod::MinorsB: return "minors-b";
    case PuMethod::MinorsA: return "minors-a";
    case PuMethod::StateDets: return "state-dets";
  }
  return "?";
}

PuMethod parse_pu_method(std::string_view name) {
  if (name == "minors-b") return PuMethod::MinorsB;
  if (name == "minors-a") return PuMethod::MinorsA;
  if (name == "state-dets") return PuMethod::StateDets;
  throw Error(Errc::SyntaxError, "unknown PU method '" + std::string(name) + "'");
}

namespace {

// States of size k in lexicographic order of their index lists.
template <class F>
bool for_each_state_of_size(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    State s;
    for (auto i : idx) s = s.with(i);
    if (f(s)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::size_t> map_indices(const std::vector<std::size_t>& local,
                                     const std::vector<std::size_t>& global) {
  std::vector<std::size_t> out;
  for (auto i : local) out.push_back(global[i]);
  return out;
}

}  // namespace

std::optional<PuCounterexample> is_pu(const LabeledGraph& g, PuMethod method) {
  switch (method) {
    case PuMethod::MinorsB: {
      BipartiteBlock b = bipartite_block(g, g.all());
      auto w = minors_all(b.matrix);
      if (!w) return std::nullopt;
      PuCounterexample cx;
      cx.method = method;
      MinorWitness global{map_indices(w->rows, b.row_vertices), map_indices(w->cols, b.col_vertices), w->value};
      State s;
      for (auto i : global.rows) s = s.with(i);
      for (auto i : global.cols) s = s.with(i);
      cx.state = s;
      cx.det = w->value * w->value;
      cx.minor = std::move(global);
      return cx;
    }
    case PuMethod::MinorsA: {
      auto w = minors_all(adjacency_matrix(g));
      if (!w) return std::nullopt;
      PuCounterexample cx;
      cx.method = method;
      cx.det = w->value;
      if (w->rows == w->cols) {
        State s;
        for (auto i : w->rows) s = s.with(i);
        cx.state = s;
      }
      cx.minor = std::move(*w);
      return cx;
    }
    case PuMethod::StateDets: {
      std::optional<PuCounterexample> found;
      for (std::size_t k = 1; k <= g.size() && !found; ++k) {
        for_each_state_of_size(g.size(), k, [&](State s) {
          Integer d = det(induced_matrix(g, s));
          if (d == 0 || d == 1) return false;
          found = PuCounterexample{method, s, d, std::nullopt};
          return true;
        });
      }
      return found;
    }
  }
  return std::nullopt;
}

std::string describe(const LabeledGraph& g, const PuCounterexample& cx) {
  std::ostringstream os;
  auto names = [&](const std::vector<std::size_t>& idx) {
    State s;
    for (auto i : idx) s = s.with(i);
    return format_state(g, s);
  };
  if (cx.state) {
    os << "det=" << cx.det << " at state " << format_state(g, *cx.state);
    if (cx.minor && cx.method == PuMethod::MinorsB)
      os << " (B-minor rows " << names(cx.minor->rows) << " cols " << names(cx.minor->cols) << " = "
         << cx.minor->value << ")";
  } else if (cx.minor) {
    os << "minor=" << cx.minor->value << " of A at rows " << names(cx.minor->rows) << " cols "
       << names(cx.minor->cols);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Chordless cycles

std::size_t codirectional_edges(const LabeledGraph& g, const Cycle& c) {
  std::size_t count = 0;
  const std::size_t len = c.vertices.size();
  for (std::size_t k = 0; k < len; ++k)
    if (g.at(c.vertices[k], c.vertices[(k + 1) % len]) == 1) ++count;
  return count;
}

namespace {

struct CycleSearch {
  const std::vector<std::uint64_t>& nb;
  std::size_t max_length;
  std::vector<Cycle> out;
  std::vector<std::size_t> path;

  bool adj(std::size_t a, std::size_t b) const { return (nb[a] >> b) & 1u; }

  void extend(std::size_t start) {
    const std::size_t last = path.back();
    std::uint64_t interior = 0;
    for (std::size_t k = 1; k + 1 < path.size(); ++k) interior |= std::uint64_t{1} << path[k];
    for (std::uint64_t rest = nb[last]; rest; rest &= rest - 1) {
      const auto y = static_cast<std::size_t>(std::countr_zero(rest));
      if (y <= start) continue;
      if (std::find(path.begin(), path.end(), y) != path.end()) continue;
      if (nb[y] & interior) continue;  // chord to the path interior
      if (path.size() >= 2 && adj(y, start)) {
        if (path.size() >= 3 && path[1] < y) {
          Cycle c{path};
          c.vertices.push_back(y);
          out.push_back(std::move(c));
        }
        continue;
      }
      if (path.size() + 1 >= max_length) continue;
      path.push_back(y);
      extend(start);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<Cycle> chordless_cycles(const std::vector<std::uint64_t>& neighbours, std::size_t max_length) {
  CycleSearch search{neighbours, max_length, {}, {}};
  for (std::size_t start = 0; start < neighbours.size(); ++start) {
    search.path = {start};
    search.extend(start);
  }
  return std::move(search.out);
}

namespace {

std::vector<std::uint64_t> neighbour_bits(const LabeledGraph& g) {
  std::vector<std::uint64_t> nb(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.adjacent(i, j)) nb[i] |= std::uint64_t{1} << j;
  return nb;
}

}  // namespace

std::optional<Cycle> all_chordless_even(const LabeledGraph& g) {
  for (auto& c : chordless_cycles(neighbour_bits(g), 2 * g.size()))
    if (codirectional_edges(g, c) % 2 == 1) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Orientations

UnorientedGraph underlying(const LabeledGraph& g) {
  UnorientedGraph u{g.vertices(), {}};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g.adjacent(i, j)) u.edges.emplace_back(i, j);
  return u;
}

std::optional<LabeledGraph> find_pu_orientation(const UnorientedGraph& u) {
  const std::size_t n = u.vertices.size();
  if (n > kMaxVertices) throw Error(Errc::SizeBound, "more than 64 vertices");
  // Normalize every edge to (part-0 end, part-1 end).
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::int32_t> edge_id(n * n, -1);
  std::vector<std::uint64_t> nb(n, 0);
  for (auto [a, b] : u.edges) {
    if (a >= n || b >= n || a == b) throw Error(Errc::SelfLoop, "bad edge endpoint");
    if (u.vertices[a].part == u.vertices[b].part)
      throw Error(Errc::NotBipartite, u.vertices[a].name + " - " + u.vertices[b].name);
    if (edge_id[a * n + b] >= 0) throw Error(Errc::DuplicateEdge, u.vertices[a].name + " - " + u.vertices[b].name);
    if (u.vertices[a].part == 1) std::swap(a, b);
    edge_id[a * n + b] = edge_id[b * n + a] = static_cast<std::int32_t>(edges.size());
    edges.emplace_back(a, b);
    nb[a] |= std::uint64_t{1} << b;
    nb[b] |= std::uint64_t{1} << a;
  }
  const std::size_t m = edges.size();

  // BFS spanning forest.
  std::vector<char> in_tree(m, 0), seen(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::uint64_t rest = nb[x]; rest; rest &= rest - 1) {
        auto y = static_cast<std::size_t>(std::countr_zero(rest));
        if (seen[y]) continue;
        seen[y] = 1;
        in_tree[static_cast<std::size_t>(edge_id[x * n + y])] = 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<std::int32_t> position(m, -1);
  std::vector<std::size_t> order;
  for (std::size_t e = 0; e < m; ++e)
    if (!in_tree[e]) {
      position[e] = static_cast<std::int32_t>(order.size());
      order.push_back(e);
    }

  // Each chordless cycle becomes a parity constraint checked once its last
  // free edge is decided.
  struct Constraint {
    std::vector<std::pair<std::size_t, int>> edges;  // (edge, +1 if traversed part0 -> part1)
  };
  std::vector<std::vector<Constraint>> closing(order.size());
  for (const auto& c : chordless_cycles(nb, 2 * n)) {
    Constraint k;
    std::int32_t last = -1;
    const std::size_t len = c.vertices.size();
    for (std::size_t i = 0; i < len; ++i) {
      std::size_t x = c.vertices[i], y = c.vertices[(i + 1) % len];
      auto e = static_cast<std::size_t>(edge_id[x * n + y]);
      k.edges.emplace_back(e, edges[e].first == x ? 1 : -1);
      last = std::max(last, position[e]);
    }
    ODDKH_ASSERT(last >= 0, "chordless cycle made of tree edges");
    closing[static_cast<std::size_t>(last)].push_back(std::move(k));
  }

  std::vector<int> orient(m, 1);
  auto consistent = [&](std::size_t pos) {
    for (const auto& k : closing[pos]) {
      std::size_t forward = 0;
      for (auto [e, t] : k.edges)
        if (orient[e] * t == 1) ++forward;
      if (forward % 2) return false;
    }
    return true;
  };
  auto build = [&] {
    std::vector<std::pair<std::size_t, std::size_t>> directed;
    for (std::size_t e = 0; e < m; ++e)
      directed.push_back(orient[e] > 0 ? edges[e] : std::make_pair(edges[e].second, edges[e].first));
    return LabeledGraph::from_edges(u.vertices, directed);
  };

  std::optional<LabeledGraph> result;
  // Iterative backtracking over non-tree edges; +1 is tried before -1.
  std::vector<int> choice(order.size(), 0);
  std::size_t depth = 0;
  if (order.empty()) {
    LabeledGraph g = build();
    if (!is_pu(g)) result = std::move(g);
    return result;
  }
  for (;;) {
    if (choice[depth] == 2) {
      choice[depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    orient[order[depth]] = choice[depth] == 0 ? 1 : -1;
    ++choice[depth];
    if (!consistent(depth)) continue;
    if (depth + 1 == order.size()) {
      LabeledGraph g = build();
      if (!is_pu(g)) {
        result = std::move(g);
        break;
      }
      continue;
    }
    ++depth;
  }
  return result;
}

std::optional<State> compare_orientations(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.vertices() != g2.vertices()) throw Error(Errc::StructureMismatch, "vertex lists differ");
  const std::size_t n = g1.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g1.adjacent(i, j) != g2.adjacent(i, j))
        throw Error(Errc::StructureMismatch,
                    "edge " + g1.vertex(i).name + "-" + g1.vertex(j).name + " present in one graph only");
  std::vector<int> alpha(n, -1);
  for (std::size_t root = 0; root < n; ++root) {
    if (alpha[root] >= 0) continue;
    alpha[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y = 0; y < n; ++y) {
        if (!g1.adjacent(x, y) || alpha[y] >= 0) continue;
        alpha[y] = alpha[x] ^ (g1.at(x, y) != g2.at(x, y) ? 1 : 0);
        queue.push_back(y);
      }
    }
  }
  State out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g1.adjacent(i, j)) continue;
      const bool flipped = g1.at(i, j) != g2.at(i, j);
      if (flipped != (alpha[i] != alpha[j])) return std::nullopt;
    }
    if (alpha[i]) out = out.with(i);
  }
  return out;
}

LabeledGraph random_pu_graph(std::size_t n, double edge_density, std::uint64_t seed,
                             RandomGraphOptions options) {
  if (n > 16) throw Error(Errc::SizeBound, "random_pu_graph supports n <= 16");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    UnorientedGraph u;
    std::vector<int> parts(n, 1);
    std::fill(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>((n + 1) / 2), 0);
    for (std::size_t i = n; i > 1; --i) {
      auto j = static_cast<std::size_t>(rng() % i);
      std::swap(parts[i - 1], parts[j]);
    }
    for (std::size_t i = 0; i < n; ++i)
      u.vertices.push_back({"v" + std::to_string(i), parts[i], (rng() & 1u) ? 1 : -1});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (parts[i] != parts[j] && coin(rng) < edge_density) u.edges.emplace_back(i, j);
    if (auto g = find_pu_orientation(u)) return *g;
  }
  throw Error(Errc::GiveUp, std::to_string(options.attempts) + " attempts");
}

}  // namespace oddkh
