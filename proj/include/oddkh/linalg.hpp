#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oddkh/error.hpp"

namespace oddkh {

using Integer = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  /// Entries narrowed to int64; throws Internal if any entry does not fit.
  std::vector<std::int64_t> to_int64() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination. Throws NotSquare.
Integer det(const IntMatrix& m);

/// Rank over the rationals by fraction-free elimination.
std::size_t rank(const IntMatrix& m);

/// U * M * V = D with U, V unimodular; `diagonal` holds d_1 | d_2 | ... of
/// length min(rows, cols), zeros trailing. `V_inv` is the inverse of V.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix V;
  IntMatrix V_inv;
  std::vector<Integer> diagonal;

  std::size_t rank() const;
  /// Recomputes U*M*V and the unimodularity / divisibility conditions.
  bool verify(const IntMatrix& m) const;
};

/// Smith normal form with transformation matrices. Pivot rule: smallest
/// nonzero absolute value in the active block, ties broken by lowest row then
/// lowest column.
SmithDecomposition smith(const IntMatrix& m);

/// Nonzero invariant factors only, without transformation matrices.
std::vector<Integer> invariant_factors(const IntMatrix& m);

/// Free quotient Z^n / rowspace(R) presented as a projection and a section.
struct QuotientProjection {
  std::size_t rank = 0;     // k = n - rank(R)
  IntMatrix projection;     // k x n, kills every row of R
  IntMatrix section;        // n x k, projection * section = I_k
};

/// Throws TorsionDetected carrying the first invariant factor > 1.
QuotientProjection quotient_projection(const IntMatrix& relations);

struct MinorWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Integer value;
};

using MinorTest = std::function<bool(const Integer&)>;

/// The value test used for total unimodularity: value in {0, 1, -1}.
bool is_unimodular_value(const Integer& value);

/// First square submatrix (size ascending, then rows lexicographic, then
/// columns lexicographic) whose determinant fails `accept`.
std::optional<MinorWitness> minors_all(const IntMatrix& m,
                                       const MinorTest& accept = is_unimodular_value);

/// Sparse 0/1 matrix over GF(2): each row lists the columns holding a 1.
struct Gf2Matrix {
  std::size_t cols = 0;
  std::vector<std::vector<std::size_t>> rows;
};

/// Solves A x = b over GF(2). Pivots are taken column by column; free
/// variables are set to zero. Returns nullopt when the system is inconsistent.
std::optional<std::vector<std::uint8_t>> gf2_solve(const Gf2Matrix& a,
                                                   std::span<const std::uint8_t> b);

/// Element of the m-th exterior power of Z^k. Keys are strictly increasing
/// index tuples; zero coefficients are never stored.
struct ExteriorElement {
  std::size_t ambient = 0;
  std::size_t degree = 0;
  std::map<std::vector<std::size_t>, Integer> coefficients;

  bool is_zero() const { return coefficients.empty(); }
  ExteriorElement operator-() const;
  bool operator==(const ExteriorElement&) const = default;
};

/// v_1 ^ v_2 ^ ... ^ v_m for vectors of length k.
ExteriorElement wedge_expand(std::span<const std::vector<Integer>> vectors, std::size_t k);

// ---------------------------------------------------------------------------
// Sparse integer matrices used for chain-complex boundaries.

class SparseIntMatrix {
 public:
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Adds `value` to entry (r, c).
  void add(std::size_t r, std::size_t c, std::int64_t value);
  /// Sorts rows and drops zeros; call after the last add().
  void finalize();

  std::span<const Entry> row(std::size_t r) const { return rows_[r]; }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  /// this * rhs
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  IntMatrix to_dense() const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
};

/// Nonzero invariant factors (ascending divisibility chain). Unit pivots are
/// eliminated sparsely with checked 64-bit arithmetic (falling back to
/// arbitrary precision on overflow); the residue goes through dense Smith.
std::vector<Integer> invariant_factors(const SparseIntMatrix& m);

/// Rank of the matrix reduced modulo 2.
std::size_t rank_mod2(const SparseIntMatrix& m);

namespace checks {
/// When enabled, every smith() call re-verifies its certificate.
void set_paranoid(bool on) noexcept;
bool paranoid() noexcept;
}  // namespace checks

}  // namespace oddkh
