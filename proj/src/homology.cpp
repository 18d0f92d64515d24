#include "oddkh/homology.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "oddkh/pu.hpp"

namespace oddkh {

std::size_t ChainComplex::dim(Bigrade b) const {
  auto it = generators.find(b);
  return it == generators.end() ? 0 : it->second.size();
}

std::size_t ChainComplex::total_generators() const {
  std::size_t total = 0;
  for (const auto& [b, gens] : generators) total += gens.size();
  return total;
}

const SparseIntMatrix* ChainComplex::boundary(Bigrade b) const {
  auto it = boundaries.find(b);
  return it == boundaries.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Complex

ChainComplex build_complex(const StateCube& cube, const EdgeAssignment& eps) {
  const LabeledGraph& g = cube.graph();
  const std::size_t n = cube.dimension();
  ODDKH_ASSERT(eps.n == n && eps.signs.size() == cube.state_count() * n, "assignment does not fit the cube");

  ChainComplex c;
  // Local index of every generator inside its bigrade block.
  std::vector<std::vector<std::uint32_t>> local(cube.state_count());
  for (std::uint64_t x = 0; x < cube.state_count(); ++x) {
    const State s = cube.state_at(x);
    const std::size_t k = cube.rank(s);
    const int i = std::popcount(x);
    local[x].resize(std::size_t{1} << k);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      const Bigrade b{i, grading_q(static_cast<int>(k), std::popcount(mask), i)};
      auto& block = c.generators[b];
      local[x][mask] = static_cast<std::uint32_t>(block.size());
      block.push_back({s, mask});
    }
  }

  for (const auto& [b, gens] : c.generators) {
    const Bigrade next{b.i + 1, b.q};
    const std::size_t target_dim = c.dim(next);
    SparseIntMatrix d(gens.size(), target_dim);
    for (std::size_t r = 0; r < gens.size(); ++r) {
      const State s = gens[r].state;
      const std::uint64_t x = cube.position(s);
      for (std::size_t coord = 0; coord < n; ++coord) {
        if ((x >> coord) & 1u) continue;
        const int sign = eps.sign(x, coord);
        const ExteriorMap& f = cube.edge_map(s, coord);
        const std::uint64_t y = x | (std::uint64_t{1} << coord);
        const std::size_t kt = f.target_rank;
        for (const auto& [tmask, coeff] : f.columns[gens[r].mask]) {
          const int q = grading_q(static_cast<int>(kt), std::popcount(tmask), b.i + 1);
          ODDKH_ASSERT(q == b.q, "boundary does not preserve q");
          d.add(r, local[y][tmask], sign * coeff);
        }
      }
    }
    d.finalize();
    if (target_dim > 0) c.boundaries.emplace(b, std::move(d));
  }

  for (const auto& [b, d] : c.boundaries) {
    const SparseIntMatrix* after = c.boundary({b.i + 1, b.q});
    if (!after) continue;
    const SparseIntMatrix sq = d.multiply(*after);
    for (std::size_t r = 0; r < sq.rows(); ++r)
      if (!sq.row(r).empty()) {
        const ChainGenerator& gen = c.generators.at(b)[r];
        throw Error(Errc::DSquaredNonzero, "d^2 != 0 at (" + std::to_string(b.i) + "," + std::to_string(b.q) +
                                               ") on generator " + std::to_string(gen.mask) + " of state " +
                                               format_state(g, gen.state));
      }
  }
  return c;
}

ChainComplex build_complex(const LabeledGraph& g, const EdgeAssignment& eps) {
  return build_complex(StateCube(g), eps);
}

// ---------------------------------------------------------------------------
// Homology

BigradedGroups integer_homology(const ChainComplex& c) {
  std::map<Bigrade, std::vector<Integer>> factors;
  for (const auto& [b, d] : c.boundaries) factors[b] = invariant_factors(d);
  BigradedGroups h;
  for (const auto& [b, gens] : c.generators) {
    const auto out = factors.find(b);
    const auto in = factors.find({b.i - 1, b.q});
    const std::size_t rank_out = out == factors.end() ? 0 : out->second.size();
    const std::size_t rank_in = in == factors.end() ? 0 : in->second.size();
    ODDKH_ASSERT(rank_out + rank_in <= gens.size(), "boundary ranks exceed the chain group");
    HomologyGroup group;
    group.betti = gens.size() - rank_out - rank_in;
    if (in != factors.end())
      for (const auto& f : in->second)
        if (f > 1) group.torsion.push_back(f);
    if (group.betti > 0 || !group.torsion.empty()) h.emplace(b, std::move(group));
  }
  return h;
}

F2Groups f2_homology(const ChainComplex& c) {
  std::map<Bigrade, std::size_t> ranks;
  for (const auto& [b, d] : c.boundaries) ranks[b] = rank_mod2(d);
  F2Groups h;
  for (const auto& [b, gens] : c.generators) {
    const auto out = ranks.find(b);
    const auto in = ranks.find({b.i - 1, b.q});
    const std::size_t dim = gens.size() - (out == ranks.end() ? 0 : out->second) - (in == ranks.end() ? 0 : in->second);
    if (dim > 0) h.emplace(b, dim);
  }
  return h;
}

std::map<int, long long> euler(const ChainComplex& c) {
  std::map<int, long long> out;
  for (const auto& [b, gens] : c.generators) {
    const long long k = static_cast<long long>(gens.size());
    out[b.q] += (b.i % 2 == 0) ? k : -k;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<int, long long> euler(const BigradedGroups& h) {
  std::map<int, long long> out;
  for (const auto& [b, group] : h) {
    const long long k = static_cast<long long>(group.betti);
    out[b.q] += (b.i % 2 == 0) ? k : -k;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

namespace {

std::size_t even_factors(const BigradedGroups& h, Bigrade b) {
  auto it = h.find(b);
  if (it == h.end()) return 0;
  return static_cast<std::size_t>(std::count_if(it->second.torsion.begin(), it->second.torsion.end(),
                                                [](const Integer& f) { return f % 2 == 0; }));
}

}  // namespace

bool uct_check(const BigradedGroups& hz, const F2Groups& hf2) {
  std::map<Bigrade, std::size_t> expected;
  for (const auto& [b, group] : hz) {
    const std::size_t t2 = even_factors(hz, b);
    expected[b] += group.betti + t2;
    if (t2) expected[{b.i - 1, b.q}] += t2;
  }
  std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
  return expected == F2Groups(hf2.begin(), hf2.end());
}

Alignment align_and_compare(const BigradedGroups& h1, const BigradedGroups& h2) {
  Alignment a;
  if (h1.empty() || h2.empty()) {
    a.equal = h1.empty() && h2.empty();
    if (!a.equal) a.report = h1.empty() ? "first table is empty" : "second table is empty";
    return a;
  }
  const Bigrade m1 = h1.begin()->first, m2 = h2.begin()->first;
  a.di = m1.i - m2.i;
  a.dq = m1.q - m2.q;
  BigradedGroups shifted;
  for (const auto& [b, group] : h2) shifted.emplace(Bigrade{b.i + a.di, b.q + a.dq}, group);
  a.equal = shifted == h1;
  if (!a.equal) {
    std::ostringstream os;
    os << "after shift (" << a.di << "," << a.dq << "):\n";
    os << "first:\n" << format_table(h1) << "second (shifted):\n" << format_table(shifted);
    a.report = os.str();
  }
  return a;
}

// ---------------------------------------------------------------------------
// Tables

std::string format_table(const BigradedGroups& h) {
  std::ostringstream os;
  for (const auto& [b, group] : h) {
    os << "h " << b.i << ' ' << b.q << ' ' << group.betti << ' ';
    if (group.torsion.empty()) {
      os << '-';
    } else {
      for (std::size_t k = 0; k < group.torsion.size(); ++k) os << (k ? "," : "") << group.torsion[k];
    }
    os << '\n';
  }
  return os.str();
}

std::string format_table(const F2Groups& h) {
  std::ostringstream os;
  for (const auto& [b, dim] : h) os << "h " << b.i << ' ' << b.q << ' ' << dim << " -\n";
  return os.str();
}

BigradedGroups parse_table(std::string_view text) {
  BigradedGroups h;
  std::istringstream is{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag, torsion;
    Bigrade b;
    long long betti = 0;
    if (!(ls >> tag)) continue;
    auto fail = [&](const std::string& why) {
      throw Error(Errc::SyntaxError, "line " + std::to_string(line_no) + ": " + why);
    };
    if (tag != "h" || !(ls >> b.i >> b.q >> betti >> torsion) || betti < 0) fail("expected: h <i> <q> <betti> <torsion|->");
    std::string extra;
    if (ls >> extra) fail("trailing text");
    HomologyGroup group;
    group.betti = static_cast<std::size_t>(betti);
    if (torsion != "-") {
      std::istringstream ts(torsion);
      for (std::string f; std::getline(ts, f, ',');) {
        try {
          group.torsion.emplace_back(f);
        } catch (const std::exception&) {
          fail("bad torsion factor '" + f + "'");
        }
        if (group.torsion.back() <= 1) fail("torsion factors must exceed 1");
      }
    }
    if (!h.emplace(b, std::move(group)).second) fail("repeated bigrade");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Pipeline

KhovanovResult khovanov_with(const StateCube& cube, const EdgeAssignment& eps) {
  KhovanovResult r;
  r.assignment = eps;
  r.complex = build_complex(cube, eps);
  r.integral = integer_homology(r.complex);
  r.mod2 = f2_homology(r.complex);
  ODDKH_ASSERT(euler(r.complex) == euler(r.integral), "Euler characteristic disagrees with the Betti numbers");
  ODDKH_ASSERT(uct_check(r.integral, r.mod2), "F2 homology disagrees with the universal coefficient theorem");
  return r;
}

KhovanovResult khovanov_full(const LabeledGraph& g, const KhovanovOptions& options) {
  if (g.size() > kMaxCubeVertices)
    throw Error(Errc::SizeBound, "homology limited to " + std::to_string(kMaxCubeVertices) + " vertices");
  if (options.warnings && g.size() >= kWarnVertices)
    *options.warnings << "warning: " << g.size() << " vertices; the complex may have up to 3^" << g.size()
                      << " generators\n";
  if (auto cx = is_pu(g)) throw Error(Errc::NotPU, describe(g, *cx));
  StateCube cube(g);
  FaceTable faces(cube, options.convention);
  const EdgeAssignment eps = solve_edge_assignment(cube, faces, options.kind, options.convention);
  return khovanov_with(cube, eps);
}

BigradedGroups khovanov(const LabeledGraph& g, const KhovanovOptions& options) {
  return khovanov_full(g, options).integral;
}

}  // namespace oddkh
