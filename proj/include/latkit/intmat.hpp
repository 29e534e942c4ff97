#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace latkit {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

// Dense row-major matrix over the integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);
  static IntMatrix row_vector(const IntVec& v);
  static IntMatrix diagonal(const IntVec& d);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  void set_row(std::size_t i, const IntVec& v);
  void append_row(const IntVec& v);

  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const Int& s) const;
  bool operator==(const IntMatrix& o) const;
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += f * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Int& f);
  void add_col_multiple(std::size_t i, std::size_t j, const Int& f);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

IntVec vec_mul(const IntVec& x, const IntMatrix& a);
bool vec_is_zero(const IntVec& v);

struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  // nonzero diagonal entries d_1 | d_2 | ... in order
  IntVec invariants() const;
};

// U*A = [H; 0]. H holds the nonzero rows only; U is square unimodular.
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return H.rows(); }
};

struct AbelianInvariants {
  IntVec factors;  // each > 1, divisibility ordered
  std::size_t free_rank = 0;
  bool trivial() const { return factors.empty() && free_rank == 0; }
  bool operator==(const AbelianInvariants& o) const {
    return factors == o.factors && free_rank == o.free_rank;
  }
  Int order() const;  // 0 when free_rank > 0
  std::string str() const;
};

SmithForm snf(const IntMatrix& a);
// Nonzero invariant factors only (no transforms kept).
IntVec smith_invariants(const IntMatrix& a);

HermiteForm hnf(const IntMatrix& a);
IntMatrix hnf_basis(const IntMatrix& a);

IntMatrix kernel_basis(const IntMatrix& a);
AbelianInvariants cokernel_invariants(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
Int det(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);
IntMatrix inverse_unimodular(const IntMatrix& a);

// Y with Y*basis = x, when it exists over the integers. basis rows independent.
std::optional<IntMatrix> solve_left(const IntMatrix& basis, const IntMatrix& x);

// Row-span lattice helpers. Lattices are given by generating rows.
bool span_equal(const IntMatrix& a, const IntMatrix& b);
bool span_contains(const IntMatrix& big, const IntMatrix& x);
IntMatrix span_intersection(const IntMatrix& a, const IntMatrix& b);
IntMatrix saturation(const IntMatrix& a);
// structure of span(big)/span(small); small must lie in span(big)
AbelianInvariants quotient_invariants(const IntMatrix& big, const IntMatrix& small);

AbelianInvariants invariants_from_diagonal(const IntVec& nonzero, std::size_t ambient);

// Exact rationals, used for basis changes with non-integral inverses.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix transpose() const;
  bool operator==(const RatMatrix& o) const;
  bool is_integral() const;
  IntMatrix to_int() const;  // requires is_integral
  Int common_denominator() const;
  std::optional<RatMatrix> inverse() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace latkit
