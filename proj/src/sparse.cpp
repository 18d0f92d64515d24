#include <algorithm>
#include <map>

#include "oddkh/linalg.hpp"

namespace oddkh {

void SparseIntMatrix::add(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_.size() || c >= cols_) throw Error(Errc::DimensionMismatch, "sparse entry out of range");
  if (value != 0) rows_[r].emplace_back(static_cast<std::uint32_t>(c), value);
}

void SparseIntMatrix::finalize() {
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    merged.reserve(row.size());
    for (const auto& e : row) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(e);
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
    row = std::move(merged);
  }
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows()) throw Error(Errc::DimensionMismatch, "sparse product");
  SparseIntMatrix out(rows(), rhs.cols());
  std::map<std::uint32_t, std::int64_t> acc;
  for (std::size_t r = 0; r < rows(); ++r) {
    acc.clear();
    for (const auto& [k, a] : rows_[r])
      for (const auto& [c, b] : rhs.row(k)) {
        std::int64_t prod = 0, sum = 0;
        if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc[c], prod, &sum))
          throw Error(Errc::Internal, "overflow in sparse product");
        acc[c] = sum;
      }
    for (const auto& [c, v] : acc)
      if (v != 0) out.rows_[r].emplace_back(c, v);
  }
  return out;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix d(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, v] : rows_[r]) d(r, c) = v;
  return d;
}

namespace {

struct Overflow {};

inline std::int64_t sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t prod = 0, out = 0;
  if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
  return out;
}

inline Integer sub_mul(const Integer& a, const Integer& f, const Integer& b) { return a - f * b; }

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const Integer& v) { return v == 1 || v == -1; }

template <class T>
struct SparseEliminator {
  using Row = std::vector<std::pair<std::uint32_t, T>>;
  std::vector<Row> rows;
  std::vector<std::vector<std::uint32_t>> col_rows;
  std::vector<char> alive;
  std::size_t cols = 0;

  explicit SparseEliminator(const SparseIntMatrix& m) : rows(m.rows()), col_rows(m.cols()),
                                                        alive(m.rows(), 1), cols(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [c, v] : m.row(r)) {
        rows[r].emplace_back(c, T(v));
        col_rows[c].push_back(static_cast<std::uint32_t>(r));
      }
    }
  }

  static const T* find(const Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::uint32_t key) { return e.first < key; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  // target -= f * source, registering fresh columns of `target_index`.
  void eliminate(std::uint32_t target_index, const Row& source, const T& f) {
    Row& target = rows[target_index];
    Row out;
    out.reserve(target.size() + source.size());
    auto a = target.begin();
    auto b = source.begin();
    while (a != target.end() || b != source.end()) {
      if (b == source.end() || (a != target.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == target.end() || b->first < a->first) {
        T v = sub_mul(T(0), f, b->second);
        if (v != 0) {
          col_rows[b->first].push_back(target_index);
          out.emplace_back(b->first, v);
        }
        ++b;
      } else {
        T v = sub_mul(a->second, f, b->second);
        if (v != 0) out.emplace_back(a->first, v);
        ++a;
        ++b;
      }
    }
    target = std::move(out);
  }

  std::size_t unit_phase() {
    std::size_t pivots = 0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::uint32_t r = 0; r < rows.size(); ++r) {
        if (!alive[r] || rows[r].empty()) continue;
        // Markowitz-lite: among unit entries prefer the sparsest column.
        std::size_t best = rows[r].size();
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t e = 0; e < rows[r].size(); ++e) {
          if (!is_unit(rows[r][e].second)) continue;
          std::size_t cost = col_rows[rows[r][e].first].size();
          if (cost < best_cost) {
            best_cost = cost;
            best = e;
          }
        }
        if (best == rows[r].size()) continue;
        const std::uint32_t c = rows[r][best].first;
        const T p = rows[r][best].second;
        const Row pivot_row = rows[r];
        std::vector<std::uint32_t> touched = std::move(col_rows[c]);
        col_rows[c].clear();
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::uint32_t r2 : touched) {
          if (r2 == r || !alive[r2]) continue;
          const T* entry = find(rows[r2], c);
          if (!entry) continue;
          T f = *entry * p;  // p = +-1 so a / p == a * p
          eliminate(r2, pivot_row, f);
        }
        alive[r] = 0;
        rows[r].clear();
        ++pivots;
        progress = true;
      }
    }
    return pivots;
  }

  IntMatrix residue() const {
    std::vector<std::uint32_t> live_rows;
    std::vector<std::uint32_t> live_cols;
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
      if (!alive[r] || rows[r].empty()) continue;
      live_rows.push_back(r);
      for (const auto& e : rows[r]) live_cols.push_back(e.first);
    }
    std::sort(live_cols.begin(), live_cols.end());
    live_cols.erase(std::unique(live_cols.begin(), live_cols.end()), live_cols.end());
    IntMatrix d(live_rows.size(), live_cols.size());
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : rows[live_rows[i]]) {
        auto j = static_cast<std::size_t>(std::lower_bound(live_cols.begin(), live_cols.end(), c) -
                                          live_cols.begin());
        d(i, j) = Integer(v);
      }
    return d;
  }
};

template <class T>
std::vector<Integer> sparse_invariant_factors(const SparseIntMatrix& m) {
  SparseEliminator<T> elim(m);
  const std::size_t units = elim.unit_phase();
  std::vector<Integer> out(units, Integer(1));
  IntMatrix rest = elim.residue();
  if (!rest.empty()) {
    auto tail = invariant_factors(rest);
    out.insert(out.end(), tail.begin(), tail.end());
  }
  return out;
}

}  // namespace

std::vector<Integer> invariant_factors(const SparseIntMatrix& m) {
  try {
    return sparse_invariant_factors<std::int64_t>(m);
  } catch (const Overflow&) {
    return sparse_invariant_factors<Integer>(m);
  }
}

std::size_t rank_mod2(const SparseIntMatrix& m) {
  using Row = std::vector<std::uint32_t>;
  std::vector<Row> rows(m.rows());
  std::vector<std::vector<std::uint32_t>> col_rows(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r))
      if (v % 2 != 0) {
        rows[r].push_back(c);
        col_rows[c].push_back(static_cast<std::uint32_t>(r));
      }
  std::size_t rank = 0;
  Row merged;
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    // pivot on the sparsest column of the row
    std::uint32_t c = rows[r][0];
    for (std::uint32_t x : rows[r])
      if (col_rows[x].size() < col_rows[c].size()) c = x;
    const Row pivot = std::move(rows[r]);
    rows[r].clear();
    std::vector<std::uint32_t> touched = std::move(col_rows[c]);
    col_rows[c].clear();
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t r2 : touched) {
      if (r2 <= r) continue;
      if (!std::binary_search(rows[r2].begin(), rows[r2].end(), c)) continue;
      merged.clear();
      std::set_symmetric_difference(rows[r2].begin(), rows[r2].end(), pivot.begin(), pivot.end(),
                                    std::back_inserter(merged));
      for (std::uint32_t x : merged)
        if (!std::binary_search(rows[r2].begin(), rows[r2].end(), x)) col_rows[x].push_back(r2);
      rows[r2] = merged;
    }
    ++rank;
  }
  return rank;
}

}  // namespace oddkh
