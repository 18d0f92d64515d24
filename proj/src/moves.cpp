#include "oddkh/moves.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "oddkh/pu.hpp"

namespace oddkh {

namespace {

// Mutable copy of a graph; rebuilt into a validated LabeledGraph at the end.
struct Draft {
  std::vector<Vertex> vs;
  std::vector<int> adj;

  explicit Draft(const LabeledGraph& g) : vs(g.vertices()), adj(g.raw_adjacency().begin(), g.raw_adjacency().end()) {}

  std::size_t n() const { return vs.size(); }
  int get(std::size_t i, std::size_t j) const { return adj[i * n() + j]; }
  void set(std::size_t i, std::size_t j, int value) {
    adj[i * n() + j] = value;
    adj[j * n() + i] = -value;
  }
  std::size_t add_vertex(Vertex v) {
    const std::size_t old = n();
    std::vector<int> grown((old + 1) * (old + 1), 0);
    for (std::size_t i = 0; i < old; ++i)
      for (std::size_t j = 0; j < old; ++j) grown[i * (old + 1) + j] = adj[i * old + j];
    adj = std::move(grown);
    vs.push_back(std::move(v));
    return old;
  }
  void remove_vertices(std::set<std::size_t> doomed) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n(); ++i)
      if (!doomed.count(i)) keep.push_back(i);
    std::vector<Vertex> nv;
    std::vector<int> na(keep.size() * keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      nv.push_back(vs[keep[r]]);
      for (std::size_t c = 0; c < keep.size(); ++c) na[r * keep.size() + c] = get(keep[r], keep[c]);
    }
    vs = std::move(nv);
    adj = std::move(na);
  }
  LabeledGraph build() const {
    std::vector<std::int8_t> a;
    a.reserve(adj.size());
    for (int x : adj) {
      ODDKH_ASSERT(x >= -1 && x <= 1, "move produced an entry outside {0,+-1}");
      a.push_back(static_cast<std::int8_t>(x));
    }
    return LabeledGraph(vs, std::move(a));
  }
};

std::string sign_char(int s) { return s > 0 ? "+" : "-"; }

int parse_sign(const std::string& tok) {
  if (tok == "+") return 1;
  if (tok == "-") return -1;
  throw Error(Errc::SyntaxError, "sign must be + or -, got '" + tok + "'");
}

void require_distinct(std::initializer_list<std::size_t> idx) {
  std::set<std::size_t> s(idx);
  if (s.size() != idx.size()) throw Error(Errc::SyntaxError, "move vertices must be distinct");
}

}  // namespace

// ---------------------------------------------------------------------------
// Script format

Move parse_move(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  if (tok.empty()) throw Error(Errc::SyntaxError, "empty move");
  auto arity = [&](std::size_t k) {
    if (tok.size() != k + 1)
      throw Error(Errc::SyntaxError, "'" + tok[0] + "' takes " + std::to_string(k) + " arguments");
  };
  Move m;
  std::string op = tok[0];
  if (op == "O2+!" || op == "O4!") {
    m.guarded = false;
    op.pop_back();
  }
  if (op == "R") {
    arity(1);
    m.kind = MoveKind::R;
    m.vertices = {tok[1]};
  } else if (op == "O1+") {
    arity(3);
    m.kind = MoveKind::O1Add;
    m.vertices = {tok[1]};
    if (tok[2] != "0" && tok[2] != "1") throw Error(Errc::SyntaxError, "part must be 0 or 1");
    m.part = tok[2] == "1" ? 1 : 0;
    m.signs = {parse_sign(tok[3])};
  } else if (op == "O1-") {
    arity(1);
    m.kind = MoveKind::O1Remove;
    m.vertices = {tok[1]};
  } else if (op == "O2+") {
    arity(5);
    m.kind = MoveKind::O2Add;
    m.vertices = {tok[1], tok[2]};
    const int s = parse_sign(tok[3]);
    m.signs = {s, -s};
    if (tok[4].rfind("N=", 0) != 0) throw Error(Errc::SyntaxError, "expected N=<w1,...,wk>");
    if (tok[5].rfind("dirs=", 0) != 0) throw Error(Errc::SyntaxError, "expected dirs=<o|i>...");
    std::string list = tok[4].substr(2);
    std::istringstream ls(list);
    for (std::string name; std::getline(ls, name, ',');) {
      if (name.empty()) throw Error(Errc::SyntaxError, "empty neighbour name");
      m.neighbours.push_back(name);
    }
    for (char c : tok[5].substr(5)) {
      if (c == 'o') m.dirs.push_back(EdgeDir::Out);
      else if (c == 'i') m.dirs.push_back(EdgeDir::In);
      else throw Error(Errc::SyntaxError, std::string("direction must be o or i, got '") + c + "'");
    }
    if (m.dirs.size() != m.neighbours.size())
      throw Error(Errc::SyntaxError, "dirs must list one direction per neighbour");
  } else if (op == "O2-") {
    arity(2);
    m.kind = MoveKind::O2Remove;
    m.vertices = {tok[1], tok[2]};
  } else if (op == "O3" || op == "O3inv") {
    arity(3);
    m.kind = op == "O3" ? MoveKind::O3Forward : MoveKind::O3Backward;
    m.vertices = {tok[1], tok[2], tok[3]};
  } else if (op == "O4") {
    arity(2);
    m.kind = MoveKind::O4;
    m.vertices = {tok[1], tok[2]};
  } else {
    throw Error(Errc::SyntaxError, "unknown move '" + tok[0] + "'");
  }
  return m;
}

std::string format_move(const Move& m) {
  std::ostringstream os;
  switch (m.kind) {
    case MoveKind::R: os << "R " << m.vertices.at(0); break;
    case MoveKind::O1Add: os << "O1+ " << m.vertices.at(0) << ' ' << m.part << ' ' << sign_char(m.signs.at(0)); break;
    case MoveKind::O1Remove: os << "O1- " << m.vertices.at(0); break;
    case MoveKind::O2Add: {
      os << (m.guarded ? "O2+ " : "O2+! ") << m.vertices.at(0) << ' ' << m.vertices.at(1) << ' '
         << sign_char(m.signs.at(0)) << " N=";
      for (std::size_t k = 0; k < m.neighbours.size(); ++k) os << (k ? "," : "") << m.neighbours[k];
      os << " dirs=";
      for (auto d : m.dirs) os << (d == EdgeDir::Out ? 'o' : 'i');
      break;
    }
    case MoveKind::O2Remove: os << "O2- " << m.vertices.at(0) << ' ' << m.vertices.at(1); break;
    case MoveKind::O3Forward:
    case MoveKind::O3Backward:
      os << (m.kind == MoveKind::O3Forward ? "O3 " : "O3inv ") << m.vertices.at(0) << ' ' << m.vertices.at(1)
         << ' ' << m.vertices.at(2);
      break;
    case MoveKind::O4: os << (m.guarded ? "O4 " : "O4! ") << m.vertices.at(0) << ' ' << m.vertices.at(1); break;
  }
  return os.str();
}

MoveScript parse_script(std::string_view text) {
  MoveScript script;
  std::istringstream is{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      script.push_back(parse_move(line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return script;
}

std::string format_script(const MoveScript& script) {
  std::string out;
  for (const auto& m : script) out += format_move(m) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Moves

LabeledGraph apply_R(const LabeledGraph& g, std::string_view v) {
  const std::size_t i = g.index_of(v);
  Draft d(g);
  for (std::size_t j = 0; j < d.n(); ++j)
    if (d.get(i, j) != 0) d.set(i, j, -d.get(i, j));
  return d.build();
}

LabeledGraph omega1_add(const LabeledGraph& g, std::string_view name, int sign, int part) {
  if (g.find(name)) throw Error(Errc::DuplicateName, std::string(name));
  if (sign != 1 && sign != -1) throw Error(Errc::SyntaxError, "sign must be +1 or -1");
  if (part != 0 && part != 1) throw Error(Errc::SyntaxError, "part must be 0 or 1");
  Draft d(g);
  d.add_vertex({std::string(name), part, sign});
  return d.build();
}

LabeledGraph omega1_remove(const LabeledGraph& g, std::string_view v) {
  const std::size_t i = g.index_of(v);
  if (!neighborhood(g, i).empty()) throw Error(Errc::NotIsolated, std::string(v));
  Draft d(g);
  d.remove_vertices({i});
  return d.build();
}

LabeledGraph omega2_add(const LabeledGraph& g, const std::vector<std::string>& names,
                        const std::vector<int>& signs, const std::vector<std::string>& neighbours,
                        const std::vector<EdgeDir>& dirs, bool guarded) {
  if (names.size() != 2 || signs.size() != 2) throw Error(Errc::SyntaxError, "O2+ adds exactly two vertices");
  if (dirs.size() != neighbours.size()) throw Error(Errc::SyntaxError, "one direction per neighbour");
  if (names[0] == names[1]) throw Error(Errc::DuplicateName, names[0]);
  for (const auto& nm : names)
    if (g.find(nm)) throw Error(Errc::DuplicateName, nm);
  if (!((signs[0] == 1 && signs[1] == -1) || (signs[0] == -1 && signs[1] == 1)))
    throw Error(Errc::SignsNotOpposite, names[0] + ", " + names[1]);
  std::vector<std::size_t> nb;
  for (const auto& nm : neighbours) nb.push_back(g.index_of(nm));
  if (std::set<std::size_t>(nb.begin(), nb.end()).size() != nb.size())
    throw Error(Errc::SyntaxError, "repeated neighbour");
  for (std::size_t k = 1; k < nb.size(); ++k)
    if (g.vertex(nb[k]).part != g.vertex(nb[0]).part)
      throw Error(Errc::NeighborhoodMixedParts, g.vertex(nb[0]).name + " vs " + g.vertex(nb[k]).name);
  const int part = nb.empty() ? 0 : 1 - g.vertex(nb[0]).part;
  Draft d(g);
  for (std::size_t t = 0; t < 2; ++t) {
    const std::size_t x = d.add_vertex({names[t], part, signs[t]});
    for (std::size_t k = 0; k < nb.size(); ++k) d.set(x, nb[k], dirs[k] == EdgeDir::Out ? 1 : -1);
  }
  LabeledGraph out = d.build();
  if (guarded)
    if (auto cx = is_pu(out)) throw Error(Errc::PUViolation, describe(out, *cx));
  return out;
}

LabeledGraph omega2_remove(const LabeledGraph& g, std::string_view u, std::string_view v) {
  const std::size_t i = g.index_of(u), j = g.index_of(v);
  require_distinct({i, j});
  if (g.adjacent(i, j)) throw Error(Errc::NotTwins, "twins must be nonadjacent");
  if (g.vertex(i).sign == g.vertex(j).sign) throw Error(Errc::SignsNotOpposite, std::string(u) + ", " + std::string(v));
  for (std::size_t t = 0; t < g.size(); ++t)
    if (g.at(i, t) != g.at(j, t))
      throw Error(Errc::NotTwins, "neighbourhoods differ at " + g.vertex(t).name);
  Draft d(g);
  d.remove_vertices({i, j});
  return d.build();
}

LabeledGraph omega3_forward(const LabeledGraph& g, std::string_view u, std::string_view v, std::string_view w) {
  const std::size_t iu = g.index_of(u), iv = g.index_of(v), iw = g.index_of(w);
  require_distinct({iu, iv, iw});
  if (g.vertex(iu).sign != -1 || g.vertex(iv).sign != -1 || g.vertex(iw).sign != -1)
    throw Error(Errc::BadSigns, "u, v, w must all be labeled '-'");
  if (neighborhood(g, iu) != State().with(iv).with(iw))
    throw Error(Errc::BadNeighborhood, "N(" + std::string(u) + ") must be exactly {" + std::string(v) + "," + std::string(w) + "}");
  if (g.at(iu, iv) != 1 || g.at(iu, iw) != 1)
    throw Error(Errc::BadDirections, "need " + std::string(u) + "->" + std::string(v) + " and " + std::string(u) + "->" + std::string(w));
  Draft d(g);
  d.set(iu, iv, 0);
  d.set(iu, iw, 0);
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (t == iu || t == iv || t == iw) continue;
    const int diff = g.at(iv, t) - g.at(iw, t);
    if (diff > 1 || diff < -1)
      throw Error(Errc::NotPU, "det A({" + std::string(u) + "," + std::string(v) + "," + std::string(w) + "," +
                                   g.vertex(t).name + "}) = 4");
    d.set(iu, t, diff);
  }
  d.vs[iu].part = 1 - d.vs[iu].part;
  d.vs[iv].sign = 1;
  d.vs[iw].sign = 1;
  return d.build();
}

LabeledGraph omega3_backward(const LabeledGraph& g, std::string_view u, std::string_view v, std::string_view w) {
  const std::size_t iu = g.index_of(u), iv = g.index_of(v), iw = g.index_of(w);
  require_distinct({iu, iv, iw});
  auto reject = [](const std::string& why) { throw Error(Errc::NotInverseConfiguration, why); };
  if (g.vertex(iu).sign != -1 || g.vertex(iv).sign != 1 || g.vertex(iw).sign != 1)
    reject("need sgn(u) = -1 and sgn(v) = sgn(w) = +1");
  if (g.adjacent(iu, iv) || g.adjacent(iu, iw)) reject("u must be nonadjacent to v and w");
  if (g.vertex(iv).part != g.vertex(iw).part) reject("v and w must lie in one part");
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (t == iu || t == iv || t == iw) continue;
    if (g.at(iu, t) != g.at(iv, t) - g.at(iw, t)) reject("row of u differs from row(v) - row(w) at " + g.vertex(t).name);
  }
  Draft d(g);
  for (std::size_t t = 0; t < g.size(); ++t)
    if (t != iu) d.set(iu, t, 0);
  d.vs[iu].part = 1 - d.vs[iv].part;
  d.set(iu, iv, 1);
  d.set(iu, iw, 1);
  d.vs[iv].sign = -1;
  d.vs[iw].sign = -1;
  return d.build();
}

LabeledGraph omega4(const LabeledGraph& g, std::string_view u, std::string_view v, bool guarded) {
  const std::size_t p = g.index_of(u), q = g.index_of(v);
  require_distinct({p, q});
  if (!g.adjacent(p, q)) throw Error(Errc::NotAdjacent, std::string(u) + ", " + std::string(v));
  if (guarded)
    if (auto cx = is_pu(g)) throw Error(Errc::NotPU, describe(g, *cx));
  const int apq = g.at(p, q);
  Draft d(g);
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p || i == q) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == p || j == q) continue;
      const int delta = -apq * g.at(i, p) * g.at(j, q) + apq * g.at(i, q) * g.at(j, p);
      if (delta == 0) continue;
      int value = g.at(i, j) + delta;
      if (value > 1 || value < -1) {
        // The square through i, j, u, v is odd; only possible off PU.
        if (guarded)
          throw Error(Errc::NotPU, "pivot entry " + g.vertex(i).name + "," + g.vertex(j).name + " = " +
                                       std::to_string(value));
        value = 0;
      } else if (!guarded && g.at(i, j) != 0) {
        value = 0;
      }
      d.set(i, j, value);
    }
  }
  d.set(p, q, -apq);
  const int a = g.vertex(p).sign, b = g.vertex(q).sign;
  d.vs[p].sign = -b;
  d.vs[q].sign = -a;
  LabeledGraph out = d.build();
  // Every square u-x-y-v closed by a fresh edge xy is even.
  for (std::size_t x = 0; x < n; ++x) {
    if (x == q || !out.adjacent(p, x)) continue;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == p || !out.adjacent(q, y) || !out.adjacent(x, y) || g.adjacent(x, y)) continue;
      ODDKH_ASSERT(out.at(p, x) * out.at(x, y) * out.at(y, q) * out.at(q, p) == 1, "pivot created an odd square");
    }
  }
  return out;
}

namespace {

std::string fresh_name(const LabeledGraph& g, const std::string& base, const std::set<std::string>& taken) {
  std::string name = base;
  for (int k = 1; g.find(name) || taken.count(name); ++k) name = base + std::to_string(k);
  return name;
}

}  // namespace

FlipResult flip_edge_macro(const LabeledGraph& g, std::string_view u, std::string_view v) {
  const std::size_t iu = g.index_of(u), iv = g.index_of(v);
  if (!g.adjacent(iu, iv)) throw Error(Errc::NotAdjacent, std::string(u) + ", " + std::string(v));
  if (auto cx = is_pu(g)) throw Error(Errc::NotPU, describe(g, *cx));
  std::set<std::string> taken;
  const std::string w = fresh_name(g, "fw", taken);
  taken.insert(w);
  const std::string w2 = fresh_name(g, "fw'", taken);
  taken.insert(w2);
  const std::string t = fresh_name(g, "ft", taken);
  taken.insert(t);
  const std::string t2 = fresh_name(g, "ft'", taken);

  MoveScript script;
  Move add_w{MoveKind::O2Add, {w, w2}, {1, -1}, 0, {std::string(v)}, {EdgeDir::Out}, false};
  // With w -> v and t -> w, the square u v w t is odd exactly when the edge
  // t-u is traversed forward iff u -> v is not.
  const EdgeDir towards_u = g.at(iu, iv) == 1 ? EdgeDir::In : EdgeDir::Out;
  Move add_t{MoveKind::O2Add, {t, t2}, {1, -1}, 0, {std::string(u), w}, {towards_u, EdgeDir::Out}, false};
  Move pivot{MoveKind::O4, {w, t}, {}, 0, {}, {}, false};
  script = {add_w, add_t, pivot, pivot,
            Move{MoveKind::O2Remove, {t, t2}, {}, 0, {}, {}, true},
            Move{MoveKind::O2Remove, {w, w2}, {}, 0, {}, {}, true}};
  LabeledGraph out = apply_script(g, script);

  Draft expected(g);
  expected.set(iu, iv, -g.at(iu, iv));
  ODDKH_ASSERT(out == expected.build(), "edge flip did not reproduce the input with one edge reversed");
  return {std::move(script), std::move(out)};
}

LabeledGraph apply_move(const LabeledGraph& g, const Move& m) {
  switch (m.kind) {
    case MoveKind::R: return apply_R(g, m.vertices.at(0));
    case MoveKind::O1Add: return omega1_add(g, m.vertices.at(0), m.signs.at(0), m.part);
    case MoveKind::O1Remove: return omega1_remove(g, m.vertices.at(0));
    case MoveKind::O2Add: return omega2_add(g, m.vertices, m.signs, m.neighbours, m.dirs, m.guarded);
    case MoveKind::O2Remove: return omega2_remove(g, m.vertices.at(0), m.vertices.at(1));
    case MoveKind::O3Forward: return omega3_forward(g, m.vertices.at(0), m.vertices.at(1), m.vertices.at(2));
    case MoveKind::O3Backward: return omega3_backward(g, m.vertices.at(0), m.vertices.at(1), m.vertices.at(2));
    case MoveKind::O4: return omega4(g, m.vertices.at(0), m.vertices.at(1), m.guarded);
  }
  throw Error(Errc::Internal, "unknown move kind");
}

LabeledGraph apply_script(const LabeledGraph& g, const MoveScript& script) {
  LabeledGraph cur = g;
  for (std::size_t k = 0; k < script.size(); ++k) {
    try {
      cur = apply_move(cur, script[k]);
    } catch (const MoveError&) {
      throw;
    } catch (const Error& e) {
      if (e.is_internal()) throw;
      throw MoveError(k, e);
    }
  }
  return cur;
}

}  // namespace oddkh
