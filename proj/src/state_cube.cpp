#include "oddkh/state_cube.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <sstream>

namespace oddkh {

std::string_view edge_kind_name(EdgeKind k) { return k == EdgeKind::Wedge ? "wedge" : "plain"; }

std::string_view face_class_name(FaceClass c) {
  switch (c) {
    case FaceClass::A: return "A";
    case FaceClass::C: return "C";
    case FaceClass::X: return "X";
    case FaceClass::Y: return "Y";
  }
  return "?";
}

std::string_view assignment_kind_name(AssignmentKind k) { return k == AssignmentKind::X ? "X" : "Y"; }
std::string_view convention_name(Convention c) {
  switch (c) {
    case Convention::Inner: return "inner";
    case Convention::Signed: return "signed";
    case Convention::InnerSigned: return "inner-signed";
  }
  return "?";
}

AssignmentKind parse_assignment_kind(std::string_view s) {
  if (s == "X" || s == "x") return AssignmentKind::X;
  if (s == "Y" || s == "y") return AssignmentKind::Y;
  throw Error(Errc::SyntaxError, "assignment type must be X or Y, got '" + std::string(s) + "'");
}

Convention parse_convention(std::string_view s) {
  if (s == "inner") return Convention::Inner;
  if (s == "signed") return Convention::Signed;
  if (s == "inner-signed") return Convention::InnerSigned;
  throw Error(Errc::SyntaxError, "convention must be inner, signed or inner-signed, got '" + std::string(s) + "'");
}

bool is_inner(const Vertex& v) { return (v.part == 0 && v.sign < 0) || (v.part == 1 && v.sign > 0); }

// ---------------------------------------------------------------------------
// Modules

IntMatrix relation_matrix(const LabeledGraph& g, State s) {
  const std::size_t n = g.size();
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!s.contains(i)) r(i, i) = 1;
    for (std::size_t j : s.indices()) r(i, j) += -g.vertex(j).sign * g.at(i, j);
  }
  return r;
}

std::vector<std::int64_t> StateModule::generator(std::size_t j) const {
  std::vector<std::int64_t> out(rank);
  for (std::size_t r = 0; r < rank; ++r) out[r] = pi_at(r, j);
  return out;
}

StateModule state_module(const LabeledGraph& g, State s) {
  QuotientProjection q = quotient_projection(relation_matrix(g, s));
  const std::size_t cor = corank(g, s);
  if (q.rank != cor)
    throw Error(Errc::LemmaViolation, "rank V(" + format_state(g, s) + ") = " + std::to_string(q.rank) +
                                          " but cor A(s) = " + std::to_string(cor));
  StateModule m;
  m.state = s;
  m.rank = q.rank;
  m.n = g.size();
  m.pi = q.projection.to_int64();
  m.sigma = q.section.to_int64();
  m.projection = std::move(q.projection);
  m.section = std::move(q.section);
  return m;
}

// ---------------------------------------------------------------------------
// Exterior maps

namespace {

using Term = std::pair<std::uint32_t, std::int64_t>;
using Column = std::vector<Term>;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Internal, "exterior coefficient overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Internal, "exterior coefficient overflow");
  return r;
}

// Sorts by mask, merges equal masks and drops zeros.
void normalize(Column& col) {
  std::sort(col.begin(), col.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Column out;
  for (const auto& t : col) {
    if (!out.empty() && out.back().first == t.first) out.back().second = checked_add(out.back().second, t.second);
    else out.push_back(t);
    if (out.back().second == 0) out.pop_back();
  }
  col = std::move(out);
}

// element ^ v
Column wedge_right(const Column& element, const std::vector<std::int64_t>& v) {
  Column out;
  for (const auto& [m, c] : element)
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (v[r] == 0 || ((m >> r) & 1u)) continue;
      const bool odd = std::popcount(m >> (r + 1)) & 1;
      const std::int64_t coeff = checked_mul(c, v[r]);
      out.emplace_back(m | (1u << r), odd ? -coeff : coeff);
    }
  normalize(out);
  return out;
}

// v ^ element
Column wedge_left(const std::vector<std::int64_t>& v, const Column& element) {
  Column out;
  for (const auto& [m, c] : element)
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (v[r] == 0 || ((m >> r) & 1u)) continue;
      const bool odd = std::popcount(m & ((1u << r) - 1)) & 1;
      const std::int64_t coeff = checked_mul(c, v[r]);
      out.emplace_back(m | (1u << r), odd ? -coeff : coeff);
    }
  normalize(out);
  return out;
}

bool is_zero_vector(const std::vector<std::int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::vector<std::int64_t> negated(std::vector<std::int64_t> v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

bool ExteriorMap::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const auto& c) { return c.empty(); });
}

ExteriorMap ExteriorMap::operator-() const {
  ExteriorMap out = *this;
  for (auto& col : out.columns)
    for (auto& t : col) t.second = -t.second;
  return out;
}

ExteriorMap compose(const ExteriorMap& second, const ExteriorMap& first) {
  ODDKH_ASSERT(first.target_rank == second.source_rank, "composing incompatible exterior maps");
  ExteriorMap out;
  out.source_rank = first.source_rank;
  out.target_rank = second.target_rank;
  out.columns.resize(first.columns.size());
  for (std::size_t m = 0; m < first.columns.size(); ++m) {
    Column col;
    for (const auto& [mid, c1] : first.columns[m])
      for (const auto& [tgt, c2] : second.columns[mid]) col.emplace_back(tgt, checked_mul(c1, c2));
    normalize(col);
    out.columns[m] = std::move(col);
  }
  return out;
}

// ---------------------------------------------------------------------------
// StateCube

struct StateCube::Cache {
  std::mutex lock;
  std::vector<std::unique_ptr<StateModule>> modules;
  std::vector<std::unique_ptr<ExteriorMap>> maps;
};

StateCube::StateCube(LabeledGraph g) : graph_(std::move(g)), cache_(std::make_unique<Cache>()) {
  if (graph_.size() > kMaxCubeVertices)
    throw Error(Errc::SizeBound, "state cube limited to " + std::to_string(kMaxCubeVertices) + " vertices");
  positives_ = graph_.positive_vertices();
  cache_->modules.resize(state_count());
  cache_->maps.resize(state_count() * std::max<std::size_t>(dimension(), 1));
}

StateCube::~StateCube() = default;
StateCube::StateCube(StateCube&&) noexcept = default;
StateCube& StateCube::operator=(StateCube&&) noexcept = default;

const StateModule& StateCube::module(State s) const {
  auto& slot = cache_->modules.at(s.bits());
  {
    std::lock_guard guard(cache_->lock);
    if (slot) return *slot;
  }
  auto built = std::make_unique<StateModule>(state_module(graph_, s));
  std::lock_guard guard(cache_->lock);
  if (!slot) slot = std::move(built);
  return *slot;
}

bool StateCube::xi_zero(State s, std::size_t i) const {
  ODDKH_ASSERT(i < dimension(), "coordinate out of range");
  const StateModule& m = module(s);
  const bool by_projection = is_zero_vector(m.generator(i));
  const std::size_t here = m.rank, there = rank(s.toggled(i));
  const bool by_corank = there == here + 1;
  if (by_projection != by_corank || (!by_corank && here != there + 1))
    throw Error(Errc::LemmaViolation, "x_" + graph_.vertex(i).name + " in V(" + format_state(graph_, s) +
                                          ") is " + (by_projection ? "zero" : "nonzero") + " but coranks are " +
                                          std::to_string(here) + " -> " + std::to_string(there));
  return by_projection;
}

bool StateCube::is_source(State s, std::size_t i) const {
  ODDKH_ASSERT(i < dimension(), "coordinate out of range");
  return s.contains(i) == positives_.contains(i);
}

CubeEdge StateCube::edge(State source, std::size_t i) const {
  if (!is_source(source, i))
    throw Error(Errc::NotAFace, "no arrow leaves " + format_state(graph_, source) + " along " + graph_.vertex(i).name);
  return {source, source.toggled(i), i, xi_zero(source, i) ? EdgeKind::Wedge : EdgeKind::Plain};
}

std::vector<CubeEdge> StateCube::edges() const {
  std::vector<CubeEdge> out;
  const std::size_t n = dimension();
  for (std::uint64_t x = 0; x < state_count(); ++x)
    for (std::size_t i = 0; i < n; ++i)
      if (!((x >> i) & 1u)) out.push_back(edge(state_at(x), i));
  return out;
}

const ExteriorMap& StateCube::edge_map(State source, std::size_t i) const {
  const CubeEdge e = edge(source, i);
  auto& slot = cache_->maps.at(source.bits() * dimension() + i);
  {
    std::lock_guard guard(cache_->lock);
    if (slot) return *slot;
  }
  const StateModule& ms = module(e.source);
  const StateModule& mt = module(e.target);
  const std::size_t ks = ms.rank, kt = mt.rank, n = dimension();

  // f = pi_t sigma_s sends the class of x_j in V(s) to the class of x_j in V(t).
  const IntMatrix f_big = mt.projection * ms.section;
  const std::vector<std::int64_t> f = f_big.to_int64();
  const std::vector<std::int64_t> target_xi = mt.generator(i);

  // Each relation of V(s) must vanish in V(t) (modulo x_i on wedge edges).
  const IntMatrix images = mt.projection * relation_matrix(graph_, e.source).transpose();
  const std::vector<std::int64_t> img = images.to_int64();
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t a = 0; a < kt; ++a) {
      const std::int64_t va = img[a * n + col];
      if (e.kind == EdgeKind::Plain) {
        ODDKH_ASSERT(va == 0, "edge map is not well defined");
      } else {
        for (std::size_t b = a + 1; b < kt; ++b)
          ODDKH_ASSERT(checked_mul(va, target_xi[b]) == checked_mul(img[b * n + col], target_xi[a]),
                       "wedge edge map is not well defined");
      }
    }

  // Injective with image x_i ^ (...) on wedge edges; surjective with kernel
  // x_i ^ (...) on plain edges.
  if (e.kind == EdgeKind::Wedge) {
    if (kt != ks + 1) throw Error(Errc::LemmaViolation, "wedge edge does not raise the rank by one");
    IntMatrix m(kt, kt);
    for (std::size_t r = 0; r < kt; ++r) {
      m(r, 0) = target_xi[r];
      for (std::size_t c = 0; c < ks; ++c) m(r, c + 1) = f[r * ks + c];
    }
    const Integer d = det(m);
    ODDKH_ASSERT(d == 1 || d == -1, "wedge edge map is not injective onto x_i ^ V(t)");
  } else {
    if (kt + 1 != ks) throw Error(Errc::LemmaViolation, "plain edge does not lower the rank by one");
    const std::vector<std::int64_t> p = ms.generator(i);
    std::int64_t g = 0;
    for (auto x : p) g = std::gcd(g, x);
    ODDKH_ASSERT(g == 1, "x_i is not primitive on a plain edge");
    for (std::size_t r = 0; r < kt; ++r) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < ks; ++c) acc = checked_add(acc, checked_mul(f[r * ks + c], p[c]));
      ODDKH_ASSERT(acc == 0, "plain edge map does not kill x_i");
    }
    const auto factors = invariant_factors(f_big);
    ODDKH_ASSERT(factors.size() == kt &&
                     std::all_of(factors.begin(), factors.end(), [](const Integer& x) { return x == 1; }),
                 "plain edge map is not surjective");
  }

  // Exterior power of f, built one generator at a time.
  const std::size_t count = std::size_t{1} << ks;
  std::vector<Column> power(count);
  power[0] = {{0u, 1}};
  std::vector<std::vector<std::int64_t>> fcols(ks, std::vector<std::int64_t>(kt));
  for (std::size_t c = 0; c < ks; ++c)
    for (std::size_t r = 0; r < kt; ++r) fcols[c][r] = f[r * ks + c];
  for (std::size_t m = 1; m < count; ++m) {
    const std::size_t h = static_cast<std::size_t>(std::bit_width(m) - 1);
    power[m] = wedge_right(power[m ^ (std::size_t{1} << h)], fcols[h]);
  }
  auto built = std::make_unique<ExteriorMap>();
  built->source_rank = ks;
  built->target_rank = kt;
  built->columns.resize(count);
  for (std::size_t m = 0; m < count; ++m)
    built->columns[m] = e.kind == EdgeKind::Wedge ? wedge_left(target_xi, power[m]) : std::move(power[m]);

  std::lock_guard guard(cache_->lock);
  if (!slot) slot = std::move(built);
  return *slot;
}

namespace {

// c with x_b = c x_a in V(state); LemmaViolation unless c = +-1.
int relative_sign(const StateCube& cube, State state, std::size_t a, std::size_t b) {
  const StateModule& m = cube.module(state);
  const auto ga = m.generator(a), gb = m.generator(b);
  if (!is_zero_vector(ga)) {
    if (gb == ga) return 1;
    if (gb == negated(ga)) return -1;
  }
  const auto& g = cube.graph();
  throw Error(Errc::LemmaViolation, "x_" + g.vertex(a).name + " and x_" + g.vertex(b).name +
                                        " are not equal up to sign in V(" + format_state(g, state) + ")");
}

}  // namespace

FaceType StateCube::classify_face(State s, std::size_t i, std::size_t j, Convention convention) const {
  const std::size_t n = dimension();
  if (i >= n || j >= n || i == j) throw Error(Errc::NotAFace, "face needs two distinct coordinates");
  if (!is_source(s, i) || !is_source(s, j))
    throw Error(Errc::NotAFace, format_state(graph_, s) + " is not the source corner of the face along " +
                                    graph_.vertex(i).name + "," + graph_.vertex(j).name);
  const State si = s.toggled(i), sj = s.toggled(j), sij = si.toggled(j);
  const long c0 = static_cast<long>(rank(s));
  const long di = static_cast<long>(rank(si)) - c0;
  const long dj = static_cast<long>(rank(sj)) - c0;
  const long dij = static_cast<long>(rank(sij)) - c0;

  FaceType t;
  t.inner_i = is_inner(graph_.vertex(i));
  t.inner_j = is_inner(graph_.vertex(j));
  auto fail = [&](const std::string& why) {
    throw Error(Errc::LemmaViolation, "face " + format_state(graph_, s) + " along " + graph_.vertex(i).name + "," +
                                          graph_.vertex(j).name + ": " + why);
  };
  if (di == 1 && dj == 1 && dij == 2) {
    t.raw = 1;
    t.cls = FaceClass::A;
  } else if (di == -1 && dj == -1 && dij == -2) {
    t.raw = 2;
    t.cls = FaceClass::C;
  } else if (di != dj) {
    if (dij != 0) fail("mixed rank pattern with nonzero diagonal jump");
    t.raw = 3;
    t.cls = FaceClass::C;
  } else if (di == 1 && dij == 0) {
    t.raw = 4;
    if (convention != Convention::Signed) {
      if (t.inner_i == t.inner_j) fail("zero face without exactly one inner vertex");
      const std::size_t a = t.inner_i ? i : j, b = t.inner_i ? j : i;
      const int want = convention == Convention::Inner ? 1 : graph_.vertex(b).sign;
      t.cls = relative_sign(*this, s.toggled(a), a, b) == want ? FaceClass::X : FaceClass::Y;
    } else {
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      const int c = relative_sign(*this, s.toggled(lo), lo, hi);
      t.cls = c == graph_.vertex(hi).sign ? FaceClass::X : FaceClass::Y;
    }
  } else if (di == -1 && dij == 0) {
    t.raw = 5;
    t.cls = relative_sign(*this, sij, i, j) == 1 ? FaceClass::C : FaceClass::A;
  } else {
    fail("rank pattern (" + std::to_string(di) + "," + std::to_string(dj) + "," + std::to_string(dij) + ")");
  }

  const ExteriorMap p1 = compose(edge_map(si, j), edge_map(s, i));
  const ExteriorMap p2 = compose(edge_map(sj, i), edge_map(s, j));
  const bool z1 = p1.is_zero(), z2 = p2.is_zero();
  bool consistent;
  if (t.raw == 4) consistent = z1 && z2;
  else if (z1 || z2) consistent = false;
  else if (t.cls == FaceClass::C) consistent = p1 == p2;
  else consistent = p1 == -p2;
  if (!consistent)
    throw Error(Errc::CompositeMismatch, "face " + format_state(graph_, s) + " along " + graph_.vertex(i).name +
                                             "," + graph_.vertex(j).name + " (type " + std::to_string(t.raw) +
                                             ", class " + std::string(face_class_name(t.cls)) + ")");
  return t;
}

// ---------------------------------------------------------------------------
// Free-standing forms

bool xi_zero(const LabeledGraph& g, State s, std::size_t i) { return StateCube(g).xi_zero(s, i); }

std::vector<CubeEdge> cube_edges(const LabeledGraph& g) { return StateCube(g).edges(); }

ExteriorMap edge_map(const LabeledGraph& g, const CubeEdge& e) {
  StateCube cube(g);
  return cube.edge_map(e.source, e.coordinate);
}

FaceType classify_face(const LabeledGraph& g, State s, std::size_t i, std::size_t j, Convention convention) {
  return StateCube(g).classify_face(s, i, j, convention);
}

// ---------------------------------------------------------------------------
// Faces

std::size_t FaceTable::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  ODDKH_ASSERT(i != j && j < n_, "bad face coordinates");
  // pairs ordered (0,1),(0,2),...,(1,2),...
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

FaceTable::FaceTable(const StateCube& cube, Convention convention) : n_(cube.dimension()) {
  const std::size_t pairs = n_ * (n_ - (n_ ? 1 : 0)) / 2;
  types_.resize(cube.state_count() * pairs);
  for (std::uint64_t x = 0; x < cube.state_count(); ++x)
    for (std::size_t i = 0; i < n_; ++i) {
      if ((x >> i) & 1u) continue;
      for (std::size_t j = i + 1; j < n_; ++j) {
        if ((x >> j) & 1u) continue;
        types_[x * pairs + pair_index(i, j)] = cube.classify_face(cube.state_at(x), i, j, convention);
      }
    }
}

const FaceType& FaceTable::type_at(std::uint64_t position, std::size_t i, std::size_t j) const {
  const std::size_t pairs = n_ * (n_ - 1) / 2;
  const FaceType& t = types_.at(position * pairs + pair_index(i, j));
  ODDKH_ASSERT(t.raw != 0, "no face at this position");
  return t;
}

FaceClass FaceTable::at(std::uint64_t position, std::size_t i, std::size_t j) const {
  return type_at(position, i, j).cls;
}

std::vector<std::size_t> FaceTable::counts() const {
  std::vector<std::size_t> out(4, 0);
  for (const auto& t : types_)
    if (t.raw != 0) ++out[static_cast<std::size_t>(t.cls)];
  return out;
}

std::vector<std::size_t> FaceTable::raw_counts() const {
  std::vector<std::size_t> out(6, 0);
  for (const auto& t : types_) ++out[static_cast<std::size_t>(t.raw)];
  out[0] = 0;
  return out;
}

// ---------------------------------------------------------------------------
// Edge assignments

int target_parity(AssignmentKind kind, FaceClass cls) {
  const bool even = kind == AssignmentKind::X ? (cls == FaceClass::A || cls == FaceClass::X)
                                              : (cls == FaceClass::A || cls == FaceClass::Y);
  return even ? 0 : 1;
}

namespace {

template <class F>
void for_each_face(std::size_t n, F&& f) {
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < count; ++x)
    for (std::size_t i = 0; i < n; ++i) {
      if ((x >> i) & 1u) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (!((x >> j) & 1u)) f(x, i, j);
    }
}

int face_parity(const EdgeAssignment& eps, std::uint64_t x, std::size_t i, std::size_t j) {
  const std::uint64_t xi = x | (std::uint64_t{1} << i), xj = x | (std::uint64_t{1} << j);
  int neg = 0;
  for (int s : {eps.sign(x, i), eps.sign(x, j), eps.sign(xi, j), eps.sign(xj, i)}) neg += s < 0;
  return neg & 1;
}

}  // namespace

std::optional<FaceViolation> check_assignment(const FaceTable& faces, const EdgeAssignment& eps) {
  std::optional<FaceViolation> bad;
  for_each_face(faces.dimension(), [&](std::uint64_t x, std::size_t i, std::size_t j) {
    if (bad) return;
    const FaceClass cls = faces.at(x, i, j);
    if (face_parity(eps, x, i, j) != target_parity(eps.kind, cls)) bad = FaceViolation{x, i, j, cls};
  });
  return bad;
}

EdgeAssignment solve_edge_assignment(const StateCube& cube, const FaceTable& faces, AssignmentKind kind,
                                     Convention convention) {
  const std::size_t n = cube.dimension();
  const std::uint64_t count = cube.state_count();
  std::vector<std::uint8_t> delta(count * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint64_t x = 0; x < count; ++x) {
      if ((x >> i) & 1u) continue;
      const std::uint64_t below = x & ((std::uint64_t{1} << i) - 1);
      if (below == 0) continue;
      const std::size_t j = static_cast<std::size_t>(std::bit_width(below) - 1);
      const std::uint64_t y = x ^ (std::uint64_t{1} << j);
      const std::uint64_t yi = y | (std::uint64_t{1} << i);
      delta[x * n + i] = static_cast<std::uint8_t>(target_parity(kind, faces.at(y, j, i)) ^ delta[y * n + j] ^
                                                   delta[y * n + i] ^ delta[yi * n + j]);
    }
  EdgeAssignment eps;
  eps.kind = kind;
  eps.convention = convention;
  eps.n = n;
  eps.signs.assign(count * n, 0);
  for (std::uint64_t x = 0; x < count; ++x)
    for (std::size_t i = 0; i < n; ++i)
      if (!((x >> i) & 1u)) eps.signs[x * n + i] = delta[x * n + i] ? -1 : 1;
  if (auto bad = check_assignment(faces, eps)) {
    const auto& g = cube.graph();
    throw Error(Errc::Infeasible, "type " + std::string(assignment_kind_name(kind)) + " (" +
                                      std::string(convention_name(convention)) + ") fails at face " +
                                      format_state(g, cube.state_at(bad->position)) + " along " +
                                      g.vertex(bad->i).name + "," + g.vertex(bad->j).name);
  }
  return eps;
}

EdgeAssignment solve_edge_assignment(const LabeledGraph& g, AssignmentKind kind, Convention convention) {
  StateCube cube(g);
  FaceTable faces(cube, convention);
  return solve_edge_assignment(cube, faces, kind, convention);
}

EdgeAssignment flip_initial_corner(const EdgeAssignment& eps) {
  EdgeAssignment out = eps;
  for (std::size_t i = 0; i < eps.n; ++i) out.signs[i] = static_cast<std::int8_t>(-out.signs[i]);
  return out;
}

std::optional<EdgeAssignment> corrupt_assignment(const FaceTable& faces, const EdgeAssignment& eps) {
  std::optional<EdgeAssignment> out;
  for_each_face(faces.dimension(), [&](std::uint64_t x, std::size_t i, std::size_t j) {
    if (out) return;
    const FaceClass cls = faces.at(x, i, j);
    if (cls != FaceClass::A && cls != FaceClass::C) return;
    out = eps;
    out->signs[x * eps.n + i] = static_cast<std::int8_t>(-out->signs[x * eps.n + i]);
  });
  return out;
}

std::optional<EdgeAssignment> solve_edge_assignment_dense(const FaceTable& faces, AssignmentKind kind,
                                                          Convention convention) {
  const std::size_t n = faces.dimension();
  const std::uint64_t count = std::uint64_t{1} << n;
  Gf2Matrix a;
  a.cols = static_cast<std::size_t>(count) * n;
  std::vector<std::uint8_t> b;
  for_each_face(n, [&](std::uint64_t x, std::size_t i, std::size_t j) {
    const std::uint64_t xi = x | (std::uint64_t{1} << i), xj = x | (std::uint64_t{1} << j);
    std::vector<std::size_t> row{x * n + i, x * n + j, xi * n + j, xj * n + i};
    std::sort(row.begin(), row.end());
    a.rows.push_back(std::move(row));
    b.push_back(static_cast<std::uint8_t>(target_parity(kind, faces.at(x, i, j))));
  });
  auto sol = gf2_solve(a, b);
  if (!sol) return std::nullopt;
  EdgeAssignment eps;
  eps.kind = kind;
  eps.convention = convention;
  eps.n = n;
  eps.signs.assign(count * n, 0);
  for (std::uint64_t x = 0; x < count; ++x)
    for (std::size_t i = 0; i < n; ++i)
      if (!((x >> i) & 1u)) eps.signs[x * n + i] = (*sol)[x * n + i] ? -1 : 1;
  return eps;
}

// ---------------------------------------------------------------------------
// Cube parity

ParityReport validate_cube_parity(const FaceTable& faces) {
  ParityReport report;
  report.face_counts = faces.counts();
  const std::size_t n = faces.dimension();
  const std::uint64_t count = std::uint64_t{1} << n;
  auto bit = [](std::size_t b) { return std::uint64_t{1} << b; };
  for (std::uint64_t x = 0; x < count; ++x)
    for (std::size_t i = 0; i < n; ++i) {
      if (x & bit(i)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (x & bit(j)) continue;
        for (std::size_t k = j + 1; k < n; ++k) {
          if (x & bit(k)) continue;
          SubcubeViolation v{x, i, j, k};
          for (FaceClass c : {faces.at(x, i, j), faces.at(x, i, k), faces.at(x, j, k), faces.at(x | bit(k), i, j),
                              faces.at(x | bit(j), i, k), faces.at(x | bit(i), j, k)}) {
            switch (c) {
              case FaceClass::A: ++v.a; break;
              case FaceClass::C: ++v.c; break;
              case FaceClass::X: ++v.x; break;
              case FaceClass::Y: ++v.y; break;
            }
          }
          ++report.subcubes;
          if ((v.a + v.x) % 2 != 0 || (v.a + v.y) % 2 != 0) {
            ++report.violations;
            if (report.examples.size() < 5) report.examples.push_back(v);
          }
        }
      }
    }
  return report;
}

ParityReport validate_cube_parity(const LabeledGraph& g, Convention convention) {
  StateCube cube(g);
  return validate_cube_parity(FaceTable(cube, convention));
}

}  // namespace oddkh
