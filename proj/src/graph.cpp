#include "oddkh/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace oddkh {

std::vector<std::size_t> State::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

bool valid_vertex_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '\'' || c == '-';
  });
}

LabeledGraph::LabeledGraph(std::vector<Vertex> vertices, std::vector<std::int8_t> adjacency)
    : vertices_(std::move(vertices)), adj_(std::move(adjacency)) {
  const std::size_t n = vertices_.size();
  if (n > kMaxVertices) throw Error(Errc::SizeBound, "more than 64 vertices");
  ODDKH_ASSERT(adj_.size() == n * n, "adjacency size does not match vertex count");
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& v = vertices_[i];
    if (!valid_vertex_name(v.name)) throw Error(Errc::SyntaxError, "invalid vertex name '" + v.name + "'");
    if (!seen.emplace(v.name, i).second) throw Error(Errc::DuplicateName, v.name);
    ODDKH_ASSERT(v.part == 0 || v.part == 1, "part must be 0 or 1");
    ODDKH_ASSERT(v.sign == 1 || v.sign == -1, "sign must be +1 or -1");
  }
  for (std::size_t i = 0; i < n; ++i) {
    ODDKH_ASSERT(at(i, i) == 0, "nonzero diagonal at " + vertices_[i].name);
    for (std::size_t j = 0; j < n; ++j) {
      const int a = at(i, j);
      ODDKH_ASSERT(a >= -1 && a <= 1, "adjacency entry outside {0,+-1}");
      ODDKH_ASSERT(a == -at(j, i), "adjacency is not skew-symmetric");
      ODDKH_ASSERT(a == 0 || vertices_[i].part != vertices_[j].part,
                   "edge " + vertices_[i].name + "-" + vertices_[j].name + " inside one part");
    }
  }
}

LabeledGraph LabeledGraph::from_edges(std::vector<Vertex> vertices,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const std::size_t n = vertices.size();
  std::vector<std::int8_t> adj(n * n, 0);
  for (auto [s, t] : edges) {
    ODDKH_ASSERT(s < n && t < n && s != t, "edge endpoint out of range");
    adj[s * n + t] = 1;
    adj[t * n + s] = -1;
  }
  return LabeledGraph(std::move(vertices), std::move(adj));
}

std::optional<std::size_t> LabeledGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].name == name) return i;
  return std::nullopt;
}

std::size_t LabeledGraph::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(Errc::UnknownVertex, std::string(name));
}

std::size_t LabeledGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::int8_t{1}));
}

std::vector<std::pair<std::size_t, std::size_t>> LabeledGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (at(i, j) == 1) out.emplace_back(i, j);
  return out;
}

State LabeledGraph::positive_vertices() const {
  State s;
  for (std::size_t i = 0; i < size(); ++i)
    if (vertices_[i].sign > 0) s = s.with(i);
  return s;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void fail(Errc code, std::size_t line, const std::string& msg) {
  throw Error(code, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

GraphFile parse_graph_file(std::string_view text) {
  GraphFile file;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<char>> linked;  // any edge between i and j, either kind
  std::size_t line_no = 0;
  std::istringstream input{std::string(text)};
  std::string raw;
  while (std::getline(input, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 4) fail(Errc::SyntaxError, line_no, "expected: vertex <name> <0|1> <+|->");
      if (!valid_vertex_name(tok[1])) fail(Errc::SyntaxError, line_no, "invalid vertex name '" + tok[1] + "'");
      if (tok[2] != "0" && tok[2] != "1") fail(Errc::SyntaxError, line_no, "part must be 0 or 1");
      if (tok[3] != "+" && tok[3] != "-") fail(Errc::SyntaxError, line_no, "sign must be + or -");
      if (index.count(tok[1])) fail(Errc::DuplicateName, line_no, tok[1]);
      if (file.vertices.size() == kMaxVertices) fail(Errc::SizeBound, line_no, "more than 64 vertices");
      index[tok[1]] = file.vertices.size();
      file.vertices.push_back({tok[1], tok[2] == "1" ? 1 : 0, tok[3] == "+" ? 1 : -1});
      for (auto& row : linked) row.push_back(0);
      linked.emplace_back(file.vertices.size(), 0);
    } else if (tok[0] == "edge" || tok[0] == "uedge") {
      if (tok.size() != 3) fail(Errc::SyntaxError, line_no, "expected: " + tok[0] + " <src> <dst>");
      auto s = index.find(tok[1]);
      auto t = index.find(tok[2]);
      if (s == index.end()) fail(Errc::UnknownVertex, line_no, tok[1]);
      if (t == index.end()) fail(Errc::UnknownVertex, line_no, tok[2]);
      const std::size_t a = s->second, b = t->second;
      if (a == b) fail(Errc::SelfLoop, line_no, tok[1]);
      if (linked[a][b]) fail(Errc::DuplicateEdge, line_no, tok[1] + " " + tok[2]);
      if (tok[0] == "edge") {
        if (file.vertices[a].part == file.vertices[b].part)
          fail(Errc::SamePartEdge, line_no, tok[1] + " " + tok[2]);
        file.directed.emplace_back(a, b);
      } else {
        file.undirected.emplace_back(a, b);
      }
      linked[a][b] = linked[b][a] = 1;
    } else {
      fail(Errc::SyntaxError, line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  return file;
}

LabeledGraph parse_graph(std::string_view text) {
  GraphFile file = parse_graph_file(text);
  if (!file.undirected.empty())
    throw Error(Errc::SyntaxError, "undirected edges need an orientation (see `orient`)");
  return LabeledGraph::from_edges(std::move(file.vertices), file.directed);
}

std::string serialize_graph(const LabeledGraph& g) {
  std::ostringstream os;
  for (const auto& v : g.vertices()) os << "vertex " << v.name << ' ' << v.part << ' ' << (v.sign > 0 ? '+' : '-') << '\n';
  for (auto [s, t] : g.edges()) os << "edge " << g.vertex(s).name << ' ' << g.vertex(t).name << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Matrices and gradings

IntMatrix adjacency_matrix(const LabeledGraph& g) { return induced_matrix(g, g.all()); }

IntMatrix induced_matrix(const LabeledGraph& g, State s) {
  const auto idx = s.indices();
  IntMatrix m(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = g.at(idx[r], idx[c]);
  return m;
}

BipartiteBlock bipartite_block(const LabeledGraph& g, State s) {
  BipartiteBlock b;
  for (std::size_t i : s.indices()) (g.vertex(i).part == 0 ? b.row_vertices : b.col_vertices).push_back(i);
  b.matrix = IntMatrix(b.row_vertices.size(), b.col_vertices.size());
  for (std::size_t r = 0; r < b.row_vertices.size(); ++r)
    for (std::size_t c = 0; c < b.col_vertices.size(); ++c)
      b.matrix(r, c) = g.at(b.row_vertices[r], b.col_vertices[c]);
  return b;
}

std::size_t corank(const LabeledGraph& g, State s) {
  return s.size() - rank(induced_matrix(g, s));
}

State neighborhood(const LabeledGraph& g, std::size_t v) {
  if (v >= g.size()) throw Error(Errc::UnknownVertex, "index " + std::to_string(v));
  State out;
  for (std::size_t u = 0; u < g.size(); ++u)
    if (g.at(u, v) != 0) out = out.with(u);
  return out;
}

State neighborhood(const LabeledGraph& g, std::string_view name) { return neighborhood(g, g.index_of(name)); }

int grading_i(const LabeledGraph& g, State s) {
  return static_cast<int>(State(s.bits() ^ g.positive_vertices().bits()).size());
}

int grading_q(int corank, int degree, int i) { return corank - 2 * degree + i; }

LabeledGraph induced_subgraph(const LabeledGraph& g, State s) {
  const auto idx = s.indices();
  std::vector<Vertex> vs;
  std::vector<std::int8_t> adj(idx.size() * idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    vs.push_back(g.vertex(idx[r]));
    for (std::size_t c = 0; c < idx.size(); ++c)
      adj[r * idx.size() + c] = static_cast<std::int8_t>(g.at(idx[r], idx[c]));
  }
  return LabeledGraph(std::move(vs), std::move(adj));
}

std::string format_state(const LabeledGraph& g, State s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : s.indices()) {
    if (!first) out += ',';
    out += g.vertex(i).name;
    first = false;
  }
  return out + "}";
}

}  // namespace oddkh
