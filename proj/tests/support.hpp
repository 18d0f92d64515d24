#pragma once

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "oddkh/homology.hpp"
#include "oddkh/pu.hpp"
#include "oracle.hpp"

namespace testing {

inline std::string fixture_path(const std::string& rel) { return std::string(ODDKH_FIXTURE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline oddkh::LabeledGraph fixture(const std::string& name) {
  return oddkh::parse_graph(read_file(fixture_path("graphs/" + name + ".graph")));
}

inline const char* const kFixtures[] = {"UNKNOT_NEG", "UNKNOT_POS", "E1", "EVEN4", "OM3", "THETA11"};

/// Library groups in the oracle's representation.
inline oracle::Table to_table(const oddkh::BigradedGroups& h) {
  oracle::Table t;
  for (const auto& [b, grp] : h) {
    oracle::Group g;
    g.betti = static_cast<long long>(grp.betti);
    for (const auto& f : grp.torsion) g.torsion.push_back(static_cast<long long>(f));
    t[{b.i, b.q}] = g;
  }
  return t;
}

inline oddkh::Integer det_of(const oracle::Mat& m) {
  oddkh::IntMatrix a(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = m[r][c];
  return oddkh::det(a);
}

inline oddkh::IntMatrix to_int_matrix(const oracle::Mat& m) {
  oddkh::IntMatrix a(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = m[r][c];
  return a;
}

inline oracle::Mat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  oracle::Mat m(rows, std::vector<long long>(cols));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

/// Random bipartite labeled graph with random orientations (not necessarily PU).
inline oddkh::LabeledGraph random_oriented_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<oddkh::Vertex> vs;
  std::bernoulli_distribution coin(0.5), keep(density);
  for (std::size_t i = 0; i < n; ++i) vs.push_back({"v" + std::to_string(i), coin(rng) ? 1 : 0, coin(rng) ? 1 : -1});
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (vs[i].part != vs[j].part && keep(rng)) edges.push_back(coin(rng) ? std::pair{i, j} : std::pair{j, i});
  return oddkh::LabeledGraph::from_edges(vs, edges);
}

/// A PU graph with a fresh vertex "u" attached to two '-' vertices v, w of one
/// part (u -> v, u -> w, all three '-'), i.e. a forward third-move site.
/// nullopt when the graph has no such pair or the result is not PU.
struct ThirdMoveSite {
  oddkh::LabeledGraph graph;
  std::string u, v, w;
};

inline std::optional<ThirdMoveSite> third_move_site(std::size_t n, std::uint64_t seed) {
  const oddkh::LabeledGraph h = oddkh::random_pu_graph(n, 0.5, seed);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b)
      if (h.vertex(a).part == h.vertex(b).part) pairs.emplace_back(a, b);
  if (pairs.empty()) return std::nullopt;
  const auto [v, w] = pairs[rng() % pairs.size()];
  std::vector<oddkh::Vertex> vs = h.vertices();
  vs[v].sign = vs[w].sign = -1;
  std::string u = "u";
  while (h.find(u)) u += "x";
  vs.push_back({u, 1 - vs[v].part, -1});
  auto edges = h.edges();
  edges.emplace_back(h.size(), v);
  edges.emplace_back(h.size(), w);
  oddkh::LabeledGraph g = oddkh::LabeledGraph::from_edges(vs, edges);
  if (oddkh::is_pu(g)) return std::nullopt;
  return ThirdMoveSite{g, u, vs[v].name, vs[w].name};
}

}  // namespace testing
