#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

long long mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("oracle overflow");
  return r;
}

long long sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("oracle overflow");
  return r;
}

Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<long long>(c, 0)); }

Mat eye(std::size_t n) {
  Mat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::size_t cols_of(const Mat& m) { return m.empty() ? 0 : m[0].size(); }

Mat transpose(const Mat& a, std::size_t cols) {
  Mat t = zeros(cols, a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

Mat times(const Mat& a, const Mat& b, std::size_t inner) {
  const std::size_t r = a.size(), c = cols_of(b);
  Mat out = zeros(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < c; ++j) out[i][j] += mul(a[i][k], b[k][j]);
  return out;
}

// Diagonalizes m in place by elementary operations. Column operations are
// mirrored into v (v <- v E) and vinv (vinv <- E^-1 vinv) when given.
// Pivot: smallest absolute value, scanning column by column.
void diagonalize(Mat& m, Mat* v, Mat* vinv) {
  const std::size_t rows = m.size(), cols = cols_of(m);
  auto col_axpy = [&](std::size_t dst, std::size_t src, long long q) {  // col_dst -= q col_src
    for (std::size_t r = 0; r < rows; ++r) m[r][dst] = sub(m[r][dst], mul(q, m[r][src]));
    if (v)
      for (auto& row : *v) row[dst] = sub(row[dst], mul(q, row[src]));
    if (vinv)
      for (std::size_t c = 0; c < vinv->at(src).size(); ++c)
        (*vinv)[src][c] = sub((*vinv)[src][c], mul(-q, (*vinv)[dst][c]));
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : m) std::swap(row[a], row[b]);
    if (v)
      for (auto& row : *v) std::swap(row[a], row[b]);
    if (vinv) std::swap((*vinv)[a], (*vinv)[b]);
  };
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t c = t; c < cols; ++c)
      for (std::size_t r = t; r < rows; ++r)
        if (m[r][c] && (pr == rows || std::llabs(m[r][c]) < std::llabs(m[pr][pc]))) pr = r, pc = c;
    if (pr == rows) return;
    std::swap(m[t], m[pr]);
    col_swap(t, pc);
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (!m[r][t]) continue;
        const long long q = m[r][t] / m[t][t];
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = sub(m[r][c], mul(q, m[t][c]));
        if (m[r][t]) {
          std::swap(m[r], m[t]);
          dirty = true;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (!m[t][c]) continue;
        col_axpy(c, t, m[t][c] / m[t][t]);
        if (m[t][c]) {
          col_swap(c, t);
          dirty = true;
        }
      }
    }
  }
}

std::vector<long long> normalize(std::vector<long long> d) {
  for (auto& x : d) x = std::llabs(x);
  std::erase(d, 0);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const long long g = std::gcd(d[i], d[j]);
      const long long l = mul(d[i] / g, d[j]);
      d[i] = g;
      d[j] = l;
    }
  return d;
}

// Free module V(s) as an explicit projection and section.
struct Module {
  std::size_t k = 0;
  Mat pi;     // k x n
  Mat sigma;  // n x k
};

int sign_of(const oddkh::LabeledGraph& g, std::size_t v) { return g.vertex(v).sign; }

Module module_of(const oddkh::LabeledGraph& g, std::uint64_t s) {
  const std::size_t n = g.size();
  Mat rel = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!((s >> i) & 1)) rel[i][i] += 1;
    for (std::size_t j = 0; j < n; ++j)
      if ((s >> j) & 1) rel[i][j] += -sign_of(g, j) * g.at(i, j);
  }
  Mat d = rel, v = eye(n), vinv = eye(n);
  diagonalize(d, &v, &vinv);
  std::size_t r = 0;
  while (r < n && d[r][r]) {
    if (std::llabs(d[r][r]) != 1) throw std::runtime_error("oracle: torsion in V(s)");
    ++r;
  }
  Module m;
  m.k = n - r;
  m.pi = zeros(m.k, n);
  m.sigma = zeros(n, m.k);
  for (std::size_t a = 0; a < m.k; ++a)
    for (std::size_t j = 0; j < n; ++j) {
      m.pi[a][j] = v[j][r + a];
      m.sigma[j][a] = vinv[r + a][j];
    }
  if (times(m.pi, transpose(rel, n), n) != zeros(m.k, n) || times(m.pi, m.sigma, n) != eye(m.k))
    throw std::runtime_error("oracle: bad quotient basis");
  return m;
}

// Columns of w restricted to the rows in mask, as a square matrix.
long long minor_on(const Mat& w, std::uint32_t rows_mask, std::size_t cols) {
  Mat sq;
  for (std::size_t r = 0; r < w.size(); ++r)
    if ((rows_mask >> r) & 1) sq.emplace_back(w[r].begin(), w[r].begin() + static_cast<long>(cols));
  return cofactor_det(sq);
}

// Exterior power map: column T holds the coefficients of
// (prefix ^) f e_t1 ^ ... ^ f e_tm on the target basis.
Mat exterior_map(const Mat& f, std::size_t kt, std::size_t ks, const std::vector<long long>* prefix) {
  Mat out = zeros(std::size_t{1} << kt, std::size_t{1} << ks);
  for (std::uint32_t t = 0; t < (1u << ks); ++t) {
    Mat w = zeros(kt, 0);
    for (std::size_t r = 0; r < kt; ++r) {
      if (prefix) w[r].push_back((*prefix)[r]);
      for (std::size_t c = 0; c < ks; ++c)
        if ((t >> c) & 1) w[r].push_back(f[r][c]);
    }
    const std::size_t m = static_cast<std::size_t>(std::popcount(t)) + (prefix ? 1 : 0);
    if (m > kt) continue;
    for (std::uint32_t s = 0; s < (1u << kt); ++s)
      if (static_cast<std::size_t>(std::popcount(s)) == m) out[s][t] = minor_on(w, s, m);
  }
  return out;
}

bool is_zero(const Mat& m) {
  for (const auto& row : m)
    for (long long x : row)
      if (x) return false;
  return true;
}

Mat negated(Mat m) {
  for (auto& row : m)
    for (auto& x : row) x = -x;
  return m;
}

}  // namespace

long long cofactor_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (!m[0][c]) continue;
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const long long term = mul(m[0][c], cofactor_det(minor));
    total = c % 2 ? sub(total, term) : total + term;
  }
  return total;
}

std::vector<long long> divisor_invariant_factors(const Mat& m) {
  const std::size_t rows = m.size(), cols = cols_of(m);
  std::vector<long long> out;
  long long prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    long long g = 0;
    for (std::uint32_t rm = 0; rm < (1u << rows); ++rm) {
      if (static_cast<std::size_t>(std::popcount(rm)) != k) continue;
      for (std::uint32_t cm = 0; cm < (1u << cols); ++cm) {
        if (static_cast<std::size_t>(std::popcount(cm)) != k) continue;
        Mat sq;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!((rm >> r) & 1)) continue;
          std::vector<long long> row;
          for (std::size_t c = 0; c < cols; ++c)
            if ((cm >> c) & 1) row.push_back(m[r][c]);
          sq.push_back(std::move(row));
        }
        g = std::gcd(g, cofactor_det(sq));
      }
    }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

std::size_t rational_rank(Mat m) {
  const std::size_t rows = m.size(), cols = cols_of(m);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (!m[r][c]) continue;
      const long long a = m[rank][c], b = m[r][c];
      long long g = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        m[r][k] = sub(mul(a, m[r][k]), mul(b, m[rank][k]));
        g = std::gcd(g, m[r][k]);
      }
      if (g > 1)
        for (auto& x : m[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

std::vector<long long> smith_factors(Mat m) {
  diagonalize(m, nullptr, nullptr);
  std::vector<long long> d;
  for (std::size_t i = 0; i < std::min(m.size(), cols_of(m)); ++i) d.push_back(m[i][i]);
  return normalize(d);
}

bool principal_dets_ok(const oddkh::LabeledGraph& g) {
  const std::size_t n = g.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Mat a;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((s >> i) & 1)) continue;
      std::vector<long long> row;
      for (std::size_t j = 0; j < n; ++j)
        if ((s >> j) & 1) row.push_back(g.at(i, j));
      a.push_back(std::move(row));
    }
    const long long d = cofactor_det(a);
    if (d != 0 && d != 1) return false;
  }
  return true;
}

Table khovanov(const oddkh::LabeledGraph& g) {
  const std::size_t n = g.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<Module> mods;
  for (std::uint64_t s = 0; s < states; ++s) mods.push_back(module_of(g, s));

  auto grading = [&](std::uint64_t s) {
    int i = 0;
    for (std::size_t v = 0; v < n; ++v) i += ((s >> v) & 1) ? (g.vertex(v).sign < 0) : (g.vertex(v).sign > 0);
    return i;
  };
  auto leaves = [&](std::uint64_t s, std::size_t c) {
    return ((s >> c) & 1) ? g.vertex(c).sign > 0 : g.vertex(c).sign < 0;
  };
  auto column = [&](const Module& m, std::size_t j) {
    std::vector<long long> col(m.k);
    for (std::size_t a = 0; a < m.k; ++a) col[a] = m.pi[a][j];
    return col;
  };

  // Edge maps keyed by (source state, coordinate).
  std::map<std::pair<std::uint64_t, std::size_t>, Mat> maps;
  auto edge = [&](std::uint64_t s, std::size_t c) -> const Mat& {
    auto key = std::make_pair(s, c);
    if (auto it = maps.find(key); it != maps.end()) return it->second;
    const std::uint64_t t = s ^ (std::uint64_t{1} << c);
    const Module &ms = mods[s], &mt = mods[t];
    const Mat f = times(mt.pi, mods[s].sigma, n);
    const auto xs = column(ms, c);
    const bool wedge = std::all_of(xs.begin(), xs.end(), [](long long x) { return x == 0; });
    const auto xt = column(mt, c);
    return maps[key] = exterior_map(f, mt.k, ms.k, wedge ? &xt : nullptr);
  };

  // Face classes; parity target 1 for C and Y under a type X assignment.
  std::vector<std::pair<std::uint64_t, std::size_t>> edges;
  std::map<std::pair<std::uint64_t, std::size_t>, std::size_t> edge_index;
  for (std::uint64_t s = 0; s < states; ++s)
    for (std::size_t c = 0; c < n; ++c)
      if (leaves(s, c)) {
        edge_index[{s, c}] = edges.size();
        edges.emplace_back(s, c);
      }
  std::vector<std::vector<std::uint8_t>> system;
  for (std::uint64_t s = 0; s < states; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!leaves(s, i) || !leaves(s, j)) continue;
        const std::uint64_t si = s ^ (std::uint64_t{1} << i), sj = s ^ (std::uint64_t{1} << j);
        const Mat p1 = times(edge(si, j), edge(s, i), std::size_t{1} << mods[si].k);
        const Mat p2 = times(edge(sj, i), edge(s, j), std::size_t{1} << mods[sj].k);
        int parity;
        if (is_zero(p1) && is_zero(p2)) {
          const bool inner_i = (g.vertex(i).part == 0) == (g.vertex(i).sign < 0);
          const bool inner_j = (g.vertex(j).part == 0) == (g.vertex(j).sign < 0);
          if (inner_i == inner_j) throw std::runtime_error("oracle: zero face without one inner vertex");
          const std::size_t a = inner_i ? i : j, b = inner_i ? j : i;
          const Module& m = mods[s ^ (std::uint64_t{1} << a)];
          const auto xa = column(m, a), xb = column(m, b);
          std::vector<long long> sb = xb;
          for (auto& x : sb) x *= g.vertex(b).sign;
          std::vector<long long> nsb = sb;
          for (auto& x : nsb) x = -x;
          if (xa == sb) parity = 0;
          else if (xa == nsb) parity = 1;
          else throw std::runtime_error("oracle: x_a and x_b not related by a sign");
        } else if (!is_zero(p1) && p1 == negated(p2)) {
          parity = 0;
        } else if (!is_zero(p1) && p1 == p2) {
          parity = 1;
        } else {
          throw std::runtime_error("oracle: face neither commutes nor anticommutes");
        }
        std::vector<std::uint8_t> row(edges.size() + 1, 0);
        row[edge_index.at({s, i})] ^= 1;
        row[edge_index.at({s, j})] ^= 1;
        row[edge_index.at({si, j})] ^= 1;
        row[edge_index.at({sj, i})] ^= 1;
        row.back() = static_cast<std::uint8_t>(parity);
        system.push_back(std::move(row));
      }

  // Gauss-Jordan over GF(2), free variables zero.
  std::vector<std::uint8_t> delta(edges.size(), 0);
  {
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < edges.size() && rank < system.size(); ++c) {
      std::size_t p = rank;
      while (p < system.size() && !system[p][c]) ++p;
      if (p == system.size()) continue;
      std::swap(system[p], system[rank]);
      for (std::size_t r = 0; r < system.size(); ++r)
        if (r != rank && system[r][c])
          for (std::size_t k = 0; k <= edges.size(); ++k) system[r][k] ^= system[rank][k];
      pivot_col.push_back(c);
      ++rank;
    }
    for (std::size_t r = rank; r < system.size(); ++r)
      if (system[r].back()) throw std::runtime_error("oracle: parity system infeasible");
    for (std::size_t r = 0; r < rank; ++r) delta[pivot_col[r]] = system[r].back();
  }

  // Chain groups per bigrade.
  std::map<std::pair<int, int>, std::vector<std::pair<std::uint64_t, std::uint32_t>>> gens;
  std::map<std::pair<std::uint64_t, std::uint32_t>, std::size_t> pos;
  for (std::uint64_t s = 0; s < states; ++s)
    for (std::uint32_t m = 0; m < (1u << mods[s].k); ++m) {
      const int i = grading(s);
      const int q = static_cast<int>(mods[s].k) - 2 * std::popcount(m) + i;
      auto& list = gens[{i, q}];
      pos[{s, m}] = list.size();
      list.emplace_back(s, m);
    }
  auto grade_of = [&](std::uint64_t s, std::uint32_t m) {
    const int i = grading(s);
    return std::make_pair(i, static_cast<int>(mods[s].k) - 2 * std::popcount(m) + i);
  };

  // d[(i,q)] has rows indexed by targets in (i+1,q), columns by sources.
  std::map<std::pair<int, int>, Mat> d;
  for (const auto& [b, list] : gens) {
    auto it = gens.find({b.first + 1, b.second});
    d[b] = zeros(it == gens.end() ? 0 : it->second.size(), list.size());
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [s, c] = edges[e];
    const std::uint64_t t = s ^ (std::uint64_t{1} << c);
    const Mat& m = edge(s, c);
    const long long eps = delta[e] ? -1 : 1;
    for (std::uint32_t src = 0; src < (1u << mods[s].k); ++src)
      for (std::uint32_t dst = 0; dst < (1u << mods[t].k); ++dst) {
        if (!m[dst][src]) continue;
        const auto bs = grade_of(s, src), bt = grade_of(t, dst);
        if (bt.first != bs.first + 1 || bt.second != bs.second) throw std::runtime_error("oracle: bigrade not preserved");
        d[bs][pos.at({t, dst})][pos.at({s, src})] += eps * m[dst][src];
      }
  }
  for (const auto& [b, m] : d) {
    auto next = d.find({b.first + 1, b.second});
    if (next == d.end() || m.empty()) continue;
    if (!is_zero(times(next->second, m, m.size()))) throw std::runtime_error("oracle: d^2 != 0");
  }

  Table out;
  for (const auto& [b, list] : gens) {
    const auto out_factors = smith_factors(d[b]);
    std::vector<long long> in_factors;
    if (auto prev = d.find({b.first - 1, b.second}); prev != d.end()) in_factors = smith_factors(prev->second);
    Group grp;
    grp.betti = static_cast<long long>(list.size() - out_factors.size() - in_factors.size());
    for (long long f : in_factors)
      if (f > 1) grp.torsion.push_back(f);
    if (grp.betti || !grp.torsion.empty()) out[b] = grp;
  }
  return out;
}

}  // namespace oracle
