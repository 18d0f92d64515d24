#include <doctest.h>

#include <random>

#include "oddkh/moves.hpp"
#include "oddkh/pu.hpp"
#include "support.hpp"

using namespace oddkh;
using testing::fixture;

namespace {

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

std::string fixture_text(const std::string& rel) { return testing::read_file(testing::fixture_path(rel)); }

}  // namespace

TEST_CASE("script parsing and formatting") {
  const char* lines[] = {"R u",         "O1+ z 1 +",          "O1- z", "O2+ w wp + N=v,x dirs=oi", "O2+! a b - N= dirs=",
                         "O2- w wp",    "O3 u v w",           "O3inv u v w", "O4 u v", "O4! u v"};
  for (const char* line : lines) {
    INFO(line);
    const Move m = parse_move(line);
    CHECK(parse_move(format_move(m)) == m);
  }
  CHECK_FALSE(parse_move("O4! u v").guarded);
  CHECK(parse_move("O2+ w wp + N=v dirs=o").signs == std::vector<int>{1, -1});

  for (const char* bad : {"", "R", "R u v", "O1+ z 2 +", "O2+ a b + N=v dirs=oo", "O2+ a b + v o", "X u"}) {
    INFO(bad);
    CHECK(error_of([&] { parse_move(bad); }) == Errc::SyntaxError);
  }
  const MoveScript script = parse_script("# comment\n\nR u\nO4 u v\n");
  CHECK(script.size() == 2);
  CHECK(parse_script(format_script(script)) == script);
  try {
    parse_script("R u\nbogus\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("reversal") {
  const LabeledGraph e1 = fixture("E1");
  const LabeledGraph r = apply_R(e1, "u");
  CHECK(r.at(1, 0) == 1);
  CHECK(apply_R(r, "u") == e1);
  const LabeledGraph unknot = fixture("UNKNOT_NEG");
  CHECK(apply_R(unknot, "v") == unknot);
}

TEST_CASE("first move") {
  CHECK(omega1_add(LabeledGraph(), "v", -1) == fixture("UNKNOT_NEG"));
  const LabeledGraph e1 = fixture("E1");
  CHECK(error_of([&] { omega1_remove(e1, "u"); }) == Errc::NotIsolated);
  CHECK(omega1_remove(omega1_add(e1, "z", 1, 1), "z") == e1);
  CHECK(omega1_add(e1, "z", 1, 1).vertex(2) == Vertex{"z", 1, 1});
  CHECK(error_of([&] { omega1_add(e1, "u", 1); }) == Errc::DuplicateName);
}

TEST_CASE("second move") {
  const LabeledGraph e1 = fixture("E1");
  const LabeledGraph g = omega2_add(e1, {"w", "w'"}, {1, -1}, {"v"}, {EdgeDir::Out});
  CHECK(g.size() == 4);
  CHECK_FALSE(is_pu(g));
  CHECK(g.at(g.index_of("w"), g.index_of("v")) == 1);
  CHECK(g.at(g.index_of("w'"), g.index_of("v")) == 1);
  CHECK(omega2_remove(g, "w", "w'") == e1);

  CHECK(error_of([&] { omega2_add(e1, {"a", "b"}, {1, 1}, {"v"}, {EdgeDir::Out}); }) == Errc::SignsNotOpposite);
  CHECK(error_of([&] { omega2_add(e1, {"a", "b"}, {1, -1}, {"u", "v"}, {EdgeDir::Out, EdgeDir::Out}); }) ==
        Errc::NeighborhoodMixedParts);
  CHECK(error_of([&] { omega2_remove(e1, "u", "v"); }) == Errc::NotTwins);

  // a -> b <- c plus twins a <- t -> ... closing a square with three codirectional edges.
  const LabeledGraph path = parse_graph("vertex a 0 -\nvertex b 1 -\nvertex c 0 -\nedge a b\nedge c b\n");
  try {
    omega2_add(path, {"t", "t'"}, {1, -1}, {"a", "c"}, {EdgeDir::Out, EdgeDir::In});
    FAIL("odd square accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PUViolation);
    CHECK(std::string(e.what()).find("det=4") != std::string::npos);
  }
  const LabeledGraph raw = omega2_add(path, {"t", "t'"}, {1, -1}, {"a", "c"}, {EdgeDir::Out, EdgeDir::In}, false);
  CHECK(is_pu(raw));
}

TEST_CASE("third move") {
  const LabeledGraph om3 = fixture("OM3");
  const LabeledGraph f = omega3_forward(om3, "u", "v", "w");
  CHECK(format_state(f, neighborhood(f, "u")) == "{t}");
  CHECK(f.at(f.index_of("u"), f.index_of("t")) == 1);
  CHECK(f.vertex(f.index_of("v")).sign == 1);
  CHECK(f.vertex(f.index_of("w")).sign == 1);
  CHECK_FALSE(is_pu(f));
  CHECK(omega3_backward(f, "u", "v", "w") == om3);

  const LabeledGraph lone = parse_graph("vertex u 0 -\nvertex v 1 -\nvertex w 1 -\nedge u v\n");
  CHECK(error_of([&] { omega3_forward(lone, "u", "v", "w"); }) == Errc::BadNeighborhood);
  CHECK(error_of([&] { omega3_forward(fixture("ODD4"), "u", "v", "w"); }) == Errc::NotPU);
  CHECK(error_of([&] { omega3_forward(apply_R(om3, "v"), "u", "v", "w"); }) == Errc::BadDirections);
  CHECK(error_of([&] { omega3_forward(om3, "u", "v", "t"); }) ==
        Errc::BadNeighborhood);

  const LabeledGraph e1w = omega1_add(fixture("E1"), "w", 1, 1);
  CHECK(error_of([&] { omega3_backward(e1w, "u", "v", "w"); }) == Errc::NotInverseConfiguration);
}

TEST_CASE("property: third move round trip on random sites") {
  int sites = 0;
  for (std::uint64_t seed = 1; seed < 200 && sites < 40; ++seed) {
    const auto site = testing::third_move_site(3 + seed % 5, seed);
    if (!site) continue;
    ++sites;
    const LabeledGraph f = omega3_forward(site->graph, site->u, site->v, site->w);
    CHECK_FALSE(is_pu(f));
    CHECK(omega3_backward(f, site->u, site->v, site->w) == site->graph);
  }
  CHECK(sites >= 40);
}

TEST_CASE("pivot") {
  const LabeledGraph e1 = fixture("E1");
  const LabeledGraph p = omega4(e1, "u", "v");
  CHECK(p.at(1, 0) == 1);
  CHECK(p.vertex(0).sign == 1);
  CHECK(p.vertex(1).sign == 1);

  const LabeledGraph even = fixture("EVEN4");
  const LabeledGraph q = omega4(even, "u1", "v1");
  CHECK_FALSE(q.adjacent(q.index_of("u2"), q.index_of("v2")));
  CHECK(omega4(q, "u1", "v1") == even);

  CHECK(error_of([&] { omega4(even, "u1", "u2"); }) == Errc::NotAdjacent);
  CHECK(error_of([&] { omega4(fixture("ODD4"), "u", "v"); }) == Errc::NotPU);
}

TEST_CASE("property: pivot is an involution and keeps entries in range") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const LabeledGraph g = random_pu_graph(2 + seed % 7, 0.6, seed);
    for (const auto& [a, b] : g.edges()) {
      const std::string u = g.vertex(a).name, v = g.vertex(b).name;
      const LabeledGraph h = omega4(g, u, v);
      CHECK_FALSE(is_pu(h));
      for (std::int8_t x : h.raw_adjacency()) CHECK(std::abs(x) <= 1);
      CHECK(omega4(h, u, v) == g);
    }
  }
}

TEST_CASE("edge flip macro") {
  const LabeledGraph e1 = fixture("E1");
  const FlipResult r = flip_edge_macro(e1, "u", "v");
  CHECK(r.graph.at(1, 0) == 1);
  CHECK(r.graph.vertices() == e1.vertices());
  CHECK(apply_script(e1, r.script) == r.graph);
  CHECK(r.script.size() == 6);
  CHECK(parse_script(format_script(r.script)) == r.script);

  // Reversing one edge of an even square makes it odd: the result exists but
  // is not PU.
  const LabeledGraph even = fixture("EVEN4");
  const FlipResult s = flip_edge_macro(even, "u1", "v1");
  CHECK(s.graph.at(s.graph.index_of("v1"), s.graph.index_of("u1")) == 1);
  CHECK(s.graph.edge_count() == even.edge_count());
  CHECK(is_pu(s.graph));

  CHECK(error_of([&] { flip_edge_macro(even, "u1", "u2"); }) == Errc::NotAdjacent);
  CHECK(error_of([&] { flip_edge_macro(fixture("ODD4"), "u", "v"); }) == Errc::NotPU);
}

TEST_CASE("property: the flip macro reverses exactly one edge") {
  int flips = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const LabeledGraph g = random_pu_graph(2 + seed % 7, 0.35, seed);
    for (const auto& [a, b] : g.edges()) {
      const FlipResult r = flip_edge_macro(g, g.vertex(a).name, g.vertex(b).name);
      CHECK(r.graph.at(b, a) == 1);
      for (const auto& [c, d] : g.edges())
        if (c != a || d != b) CHECK(r.graph.at(c, d) == 1);
      if (!is_pu(r.graph)) ++flips;
    }
  }
  CHECK(flips > 20);
}

TEST_CASE("scripts") {
  const LabeledGraph e1 = fixture("E1");
  CHECK(apply_script(e1, {}) == e1);
  CHECK(apply_script(e1, parse_script("R u\nR u\n")) == e1);
  CHECK(apply_script(e1, parse_script(fixture_text("scripts/E1_roundtrip.moves"))) == e1);
  CHECK(apply_script(e1, parse_script(fixture_text("scripts/E1_twins.moves"))) == e1);
  CHECK(apply_script(e1, parse_script(fixture_text("scripts/E1_pivot.moves"))) == omega4(e1, "u", "v"));
  CHECK(apply_script(fixture("OM3"), parse_script(fixture_text("scripts/OM3_third.moves"))) ==
        omega3_forward(fixture("OM3"), "u", "v", "w"));
  try {
    apply_script(e1, parse_script(fixture_text("scripts/E1_third.moves")));
    FAIL("E1 has no third-move site");
  } catch (const MoveError& e) {
    CHECK(e.index() == 0);
    CHECK(e.code() == Errc::MoveFailed);
  }
  try {
    apply_script(e1, parse_script("R u\nO1- u\n"));
    FAIL("u is not isolated");
  } catch (const MoveError& e) {
    CHECK(e.index() == 1);
    CHECK(e.cause() == Errc::NotIsolated);
  }
}

TEST_CASE("property: moves on PU graphs stay PU and inverse pairs cancel") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const LabeledGraph g = random_pu_graph(1 + seed % 7, 0.5, seed);
    for (std::size_t v = 0; v < g.size(); ++v) {
      const std::string name = g.vertex(v).name;
      const LabeledGraph r = apply_R(g, name);
      CHECK_FALSE(is_pu(r));
      CHECK(apply_R(r, name) == g);
    }
    const LabeledGraph z = omega1_add(g, "zz", -1, 1);
    CHECK_FALSE(is_pu(z));
    CHECK(omega1_remove(z, "zz") == g);
    if (g.size() == 0) continue;
    const std::string w = g.vertex(0).name;
    try {
      const LabeledGraph t = omega2_add(g, {"t1", "t2"}, {-1, 1}, {w}, {EdgeDir::In});
      CHECK_FALSE(is_pu(t));
      CHECK(omega2_remove(t, "t1", "t2") == g);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::PUViolation);
    }
  }
}
