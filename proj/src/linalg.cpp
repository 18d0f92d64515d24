#include "oddkh/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <sstream>

namespace oddkh {

namespace checks {
namespace {
std::atomic<bool> g_paranoid{false};
}
void set_paranoid(bool on) noexcept { g_paranoid = on; }
bool paranoid() noexcept { return g_paranoid; }
}  // namespace checks

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged initializer");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> rows,
                               std::span<const std::size_t> cols) const {
  IntMatrix s(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) s(r, c) = (*this)(rows[r], cols[c]);
  return s;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(Errc::DimensionMismatch, "matrix product");
  IntMatrix p(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) p(r, c) += a * rhs(k, c);
    }
  return p;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix n = *this;
  for (auto& v : n.data_) v = -v;
  return n;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

std::vector<std::int64_t> IntMatrix::to_int64() const {
  std::vector<std::int64_t> out;
  out.reserve(data_.size());
  for (const auto& v : data_) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw Error(Errc::Internal, "entry does not fit in 64 bits");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

// ---------------------------------------------------------------------------
// Bareiss elimination

namespace {

struct Overflow {};

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Overflow{};
  return static_cast<std::int64_t>(v);
}

// Fraction-free elimination shared by det and rank. Returns the rank; when
// the matrix is square and of full rank, `det_out` receives the determinant.
template <class T, class Combine>
std::size_t bareiss(std::vector<T>& a, std::size_t rows, std::size_t cols, T& det_out,
                    Combine combine) {
  auto at = [&](std::size_t r, std::size_t c) -> T& { return a[r * cols + c]; };
  T prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(at(piv, k), at(rank, k));
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k)
        at(r, k) = combine(at(r, k), at(rank, c), at(r, c), at(rank, k), prev);
      at(r, c) = 0;
    }
    prev = at(rank, c);
    ++rank;
  }
  if (rows == cols && rank == rows) {
    det_out = sign > 0 ? prev : T(-prev);
  } else {
    det_out = 0;
  }
  return rank;
}

std::int64_t combine64(std::int64_t x, std::int64_t p, std::int64_t y, std::int64_t z,
                       std::int64_t prev) {
  i128 v = static_cast<i128>(x) * p - static_cast<i128>(y) * z;
  return narrow(v / prev);
}

Integer combine_big(const Integer& x, const Integer& p, const Integer& y, const Integer& z,
                    const Integer& prev) {
  return (x * p - y * z) / prev;
}

bool fits64(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer& v = m(r, c);
      if (v > (std::int64_t{1} << 40) || v < -(std::int64_t{1} << 40)) return false;
    }
  return true;
}

std::pair<std::size_t, Integer> rank_det(const IntMatrix& m) {
  if (fits64(m)) {
    try {
      std::vector<std::int64_t> a = m.to_int64();
      std::int64_t d = 0;
      std::size_t r = bareiss(a, m.rows(), m.cols(), d, combine64);
      return {r, Integer(d)};
    } catch (const Overflow&) {
    }
  }
  std::vector<Integer> a;
  a.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
  Integer d = 0;
  std::size_t r = bareiss(a, m.rows(), m.cols(), d, combine_big);
  return {r, d};
}

// Small dense determinant used in minor enumeration.
std::int64_t det_small(std::vector<std::int64_t>& a, std::size_t n) {
  std::int64_t d = 0;
  bareiss(a, n, n, d, combine64);
  return d;
}

}  // namespace

Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(Errc::NotSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (m.rows() == 0) return 1;
  return rank_det(m).second;
}

std::size_t rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  return rank_det(m).first;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Integer division rounding toward zero keeps remainders smaller in absolute
// value than the divisor, which is all the reduction loop needs.
Integer quotient(const Integer& a, const Integer& b) { return a / b; }

struct SmithWork {
  IntMatrix a;
  bool track;
  IntMatrix u, v, v_inv;

  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    a.swap_rows(x, y);
    if (track) u.swap_rows(x, y);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    a.swap_cols(x, y);
    if (track) {
      v.swap_cols(x, y);
      v_inv.swap_rows(x, y);
    }
  }
  // row[dst] -= q * row[src]
  void row_sub(std::size_t dst, std::size_t src, const Integer& q) {
    if (q.is_zero()) return;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(src, c).is_zero()) a(dst, c) -= q * a(src, c);
    if (track)
      for (std::size_t c = 0; c < u.cols(); ++c)
        if (!u(src, c).is_zero()) u(dst, c) -= q * u(src, c);
  }
  // col[dst] -= q * col[src]
  void col_sub(std::size_t dst, std::size_t src, const Integer& q) {
    if (q.is_zero()) return;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (!a(r, src).is_zero()) a(r, dst) -= q * a(r, src);
    if (track) {
      for (std::size_t r = 0; r < v.rows(); ++r)
        if (!v(r, src).is_zero()) v(r, dst) -= q * v(r, src);
      // inverse of (col dst -= q col src) acts on rows: row src += q row dst
      for (std::size_t c = 0; c < v_inv.cols(); ++c)
        if (!v_inv(dst, c).is_zero()) v_inv(src, c) += q * v_inv(dst, c);
    }
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = -a(r, c);
    if (track)
      for (std::size_t c = 0; c < u.cols(); ++c) u(r, c) = -u(r, c);
  }
};

bool find_min(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t r = t; r < a.rows(); ++r)
    for (std::size_t c = t; c < a.cols(); ++c) {
      const Integer& x = a(r, c);
      if (x.is_zero()) continue;
      Integer ax = abs(x);
      if (!found || ax < best) {
        found = true;
        best = ax;
        pr = r;
        pc = c;
      }
    }
  return found;
}

void run_smith(SmithWork& w) {
  IntMatrix& a = w.a;
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_min(a, t, pr, pc)) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < a.rows(); ++r) {
        if (a(r, t).is_zero()) continue;
        w.row_sub(r, t, quotient(a(r, t), a(t, t)));
        if (!a(r, t).is_zero()) dirty = true;
      }
      for (std::size_t c = t + 1; c < a.cols(); ++c) {
        if (a(t, c).is_zero()) continue;
        w.col_sub(c, t, quotient(a(t, c), a(t, t)));
        if (!a(t, c).is_zero()) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived: re-pivot on the
        // smallest entry of the cross.
        std::size_t br = t, bc = t;
        Integer best = abs(a(t, t));
        for (std::size_t r = t + 1; r < a.rows(); ++r)
          if (!a(r, t).is_zero() && abs(a(r, t)) < best) {
            best = abs(a(r, t));
            br = r;
            bc = t;
          }
        for (std::size_t c = t + 1; c < a.cols(); ++c)
          if (!a(t, c).is_zero() && abs(a(t, c)) < best) {
            best = abs(a(t, c));
            br = t;
            bc = c;
          }
        w.swap_rows(t, br);
        w.swap_cols(t, bc);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row.
      std::size_t bad_row = a.rows();
      for (std::size_t r = t + 1; r < a.rows() && bad_row == a.rows(); ++r)
        for (std::size_t c = t + 1; c < a.cols(); ++c)
          if (!a(r, c).is_zero() && a(r, c) % a(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (bad_row == a.rows()) break;
      w.row_sub(t, bad_row, Integer(-1));
    }
    if (a(t, t) < 0) w.negate_row(t);
  }
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  return static_cast<std::size_t>(std::count_if(diagonal.begin(), diagonal.end(),
                                                [](const Integer& d) { return !d.is_zero(); }));
}

bool SmithDecomposition::verify(const IntMatrix& m) const {
  IntMatrix d = U * m * V;
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) {
      const Integer expected = (r == c) ? diagonal[r] : Integer(0);
      if (d(r, c) != expected) return false;
    }
  if (abs(det(U)) != 1 || abs(det(V)) != 1) return false;
  if (V * V_inv != IntMatrix::identity(V.rows())) return false;
  for (std::size_t i = 0; i + 1 < diagonal.size(); ++i) {
    if (diagonal[i] < 0) return false;
    if (diagonal[i].is_zero()) {
      if (!diagonal[i + 1].is_zero()) return false;
    } else if (diagonal[i + 1] % diagonal[i] != 0) {
      return false;
    }
  }
  return true;
}

SmithDecomposition smith(const IntMatrix& m) {
  SmithWork w{m, true, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.cols())};
  run_smith(w);
  SmithDecomposition out;
  const std::size_t limit = std::min(m.rows(), m.cols());
  out.diagonal.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.diagonal.push_back(w.a(i, i));
  out.U = std::move(w.u);
  out.V = std::move(w.v);
  out.V_inv = std::move(w.v_inv);
  if (checks::paranoid() && !out.verify(m))
    throw Error(Errc::Internal, "smith certificate failed to verify");
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SmithWork w{m, false, {}, {}, {}};
  run_smith(w);
  std::vector<Integer> out;
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < limit; ++i)
    if (!w.a(i, i).is_zero()) out.push_back(w.a(i, i));
  return out;
}

QuotientProjection quotient_projection(const IntMatrix& relations) {
  const std::size_t n = relations.cols();
  SmithDecomposition snf = smith(relations);
  const std::size_t r = snf.rank();
  for (std::size_t i = 0; i < r; ++i)
    if (snf.diagonal[i] != 1) {
      std::ostringstream os;
      os << "invariant factor " << snf.diagonal[i];
      throw Error(Errc::TorsionDetected, os.str());
    }
  // rowspace(R) = span of the first r rows of V^-1, so coordinates r..n-1 of
  // x*V parametrize the quotient.
  QuotientProjection q;
  q.rank = n - r;
  q.projection = IntMatrix(q.rank, n);
  q.section = IntMatrix(n, q.rank);
  for (std::size_t k = 0; k < q.rank; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      q.projection(k, j) = snf.V(j, r + k);
      q.section(j, k) = snf.V_inv(r + k, j);
    }
  ODDKH_ASSERT((q.projection * relations.transpose()).is_zero(), "projection misses a relation");
  ODDKH_ASSERT(q.projection * q.section == IntMatrix::identity(q.rank), "section is not a right inverse");
  return q;
}

// ---------------------------------------------------------------------------
// Minors

bool is_unimodular_value(const Integer& value) { return value >= -1 && value <= 1; }

namespace {

// Visits k-subsets of {0..n-1} in lexicographic order; stops when f returns true.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k > n) return false;
  for (;;) {
    if (f(std::span<const std::size_t>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<MinorWitness> minors_all(const IntMatrix& m, const MinorTest& accept) {
  const std::size_t limit = std::min(m.rows(), m.cols());
  const bool small = fits64(m);
  std::vector<std::int64_t> flat;
  if (small) flat = m.to_int64();
  std::optional<MinorWitness> witness;
  std::vector<std::int64_t> buf;
  for (std::size_t k = 1; k <= limit && !witness; ++k) {
    for_each_subset(m.rows(), k, [&](std::span<const std::size_t> rows) {
      return for_each_subset(m.cols(), k, [&](std::span<const std::size_t> cols) {
        Integer value;
        bool done = false;
        if (small) {
          buf.assign(k * k, 0);
          for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) buf[r * k + c] = flat[rows[r] * m.cols() + cols[c]];
          try {
            value = det_small(buf, k);
            done = true;
          } catch (const Overflow&) {
          }
        }
        if (!done) value = det(m.submatrix(rows, cols));
        if (accept(value)) return false;
        witness = MinorWitness{{rows.begin(), rows.end()}, {cols.begin(), cols.end()}, value};
        return true;
      });
    });
  }
  return witness;
}

// ---------------------------------------------------------------------------
// GF(2)

std::optional<std::vector<std::uint8_t>> gf2_solve(const Gf2Matrix& a,
                                                   std::span<const std::uint8_t> b) {
  if (b.size() != a.rows.size()) throw Error(Errc::DimensionMismatch, "gf2_solve rhs length");
  const std::size_t n = a.cols;
  const std::size_t words = (n + 1 + 63) / 64;  // last bit column is the rhs
  const std::size_t m = a.rows.size();
  std::vector<std::uint64_t> rows(m * words, 0);
  auto row = [&](std::size_t r) { return rows.data() + r * words; };
  auto get = [&](std::size_t r, std::size_t c) { return (row(r)[c / 64] >> (c % 64)) & 1u; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c : a.rows[r]) {
      if (c >= n) throw Error(Errc::DimensionMismatch, "gf2_solve column index");
      row(r)[c / 64] ^= std::uint64_t{1} << (c % 64);
    }
    if (b[r] & 1u) row(r)[n / 64] ^= std::uint64_t{1} << (n % 64);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t piv = m;
    for (std::size_t r = rank; r < m; ++r)
      if (get(r, c)) {
        piv = r;
        break;
      }
    if (piv == m) continue;
    if (piv != rank) std::swap_ranges(row(piv), row(piv) + words, row(rank));
    for (std::size_t r = 0; r < m; ++r)
      if (r != rank && get(r, c))
        for (std::size_t w = 0; w < words; ++w) row(r)[w] ^= row(rank)[w];
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (get(r, n)) return std::nullopt;
  std::vector<std::uint8_t> x(n, 0);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = static_cast<std::uint8_t>(get(r, n));
  return x;
}

// ---------------------------------------------------------------------------
// Exterior algebra

ExteriorElement ExteriorElement::operator-() const {
  ExteriorElement e = *this;
  for (auto& [key, c] : e.coefficients) c = -c;
  return e;
}

ExteriorElement wedge_expand(std::span<const std::vector<Integer>> vectors, std::size_t k) {
  ExteriorElement acc;
  acc.ambient = k;
  acc.degree = 0;
  acc.coefficients[{}] = 1;
  for (const auto& v : vectors) {
    if (v.size() != k) throw Error(Errc::DimensionMismatch, "wedge_expand vector length");
    std::map<std::vector<std::size_t>, Integer> next;
    for (const auto& [key, c] : acc.coefficients) {
      for (std::size_t r = 0; r < k; ++r) {
        if (v[r].is_zero() || std::binary_search(key.begin(), key.end(), r)) continue;
        // e_key ^ e_r: move e_r left past every index greater than r
        auto pos = std::upper_bound(key.begin(), key.end(), r);
        const auto above = static_cast<std::size_t>(key.end() - pos);
        std::vector<std::size_t> merged(key.begin(), pos);
        merged.push_back(r);
        merged.insert(merged.end(), pos, key.end());
        Integer term = c * v[r];
        if (above % 2) term = -term;
        next[merged] += term;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    acc.coefficients = std::move(next);
    ++acc.degree;
  }
  return acc;
}

}  // namespace oddkh
