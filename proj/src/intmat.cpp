#include "latkit/intmat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "latkit/errors.hpp"

namespace latkit {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  std::size_t c = rows.empty() ? cols : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::row_vector(const IntVec& v) {
  IntMatrix m(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ == 0) return b;
  if (b.rows_ == 0) return a;
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix m(a.rows_ + b.rows_, a.cols_);
  std::copy(a.a_.begin(), a.a_.end(), m.a_.begin());
  std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + a.a_.size());
  return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

IntMatrix IntMatrix::block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
  if (v.size() != cols_) throw std::invalid_argument("set_row: size mismatch");
  std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

void IntMatrix::append_row(const IntVec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("append_row: size mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Int& y = o(k, j);
        if (y != 0) m(i, j) += x * y;
      }
    }
  }
  return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("sum: dimension mismatch");
  IntMatrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
  return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("difference: dimension mismatch");
  IntMatrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
  return m;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

IntMatrix IntMatrix::scaled(const Int& s) const {
  IntMatrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Int& f) {
  if (f == 0) return;
  for (std::size_t k = 0; k < cols_; ++k) {
    const Int& y = (*this)(j, k);
    if (y != 0) (*this)(i, k) += f * y;
  }
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Int& f) {
  if (f == 0) return;
  for (std::size_t k = 0; k < rows_; ++k) {
    const Int& y = (*this)(k, j);
    if (y != 0) (*this)(k, i) += f * y;
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntVec vec_mul(const IntVec& x, const IntMatrix& a) {
  if (x.size() != a.rows()) throw std::invalid_argument("vec_mul: dimension mismatch");
  IntVec y(a.cols(), Int(0));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(k, j) != 0) y[j] += x[k] * a(k, j);
  }
  return y;
}

bool vec_is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int AbelianInvariants::order() const {
  if (free_rank > 0) return 0;
  Int o = 1;
  for (const auto& f : factors) o *= f;
  return o;
}

std::string AbelianInvariants::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << factors[i].get_str();
  os << "]";
  if (free_rank) os << "+Z^" << free_rank;
  return os.str();
}

namespace {

// Combine rows r and i so that column c of row i becomes zero and row r holds the gcd.
// Only columns >= c0 are touched in m; aux (if given) is updated on all columns.
void row_gcd_step(IntMatrix& m, IntMatrix* aux, std::size_t r, std::size_t i, std::size_t c,
                  std::size_t c0) {
  Int a = m(r, c), b = m(i, c);
  if (b == 0) return;
  if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    Int q = b / a;
    for (std::size_t k = c0; k < m.cols(); ++k)
      if (m(r, k) != 0) m(i, k) -= q * m(r, k);
    if (aux) aux->add_row_multiple(i, r, -q);
    return;
  }
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int ag = a / g, bg = b / g;
  for (std::size_t k = c0; k < m.cols(); ++k) {
    Int x = m(r, k), y = m(i, k);
    m(r, k) = s * x + t * y;
    m(i, k) = ag * y - bg * x;
  }
  if (aux) {
    for (std::size_t k = 0; k < aux->cols(); ++k) {
      Int x = (*aux)(r, k), y = (*aux)(i, k);
      (*aux)(r, k) = s * x + t * y;
      (*aux)(i, k) = ag * y - bg * x;
    }
  }
}

void col_gcd_step(IntMatrix& m, IntMatrix* aux, std::size_t r, std::size_t j, std::size_t c) {
  // combine columns c and j so that entry (r, j) becomes zero
  Int a = m(r, c), b = m(r, j);
  if (b == 0) return;
  if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    Int q = b / a;
    m.add_col_multiple(j, c, -q);
    if (aux) aux->add_col_multiple(j, c, -q);
    return;
  }
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int ag = a / g, bg = b / g;
  auto apply = [&](IntMatrix& x) {
    for (std::size_t k = 0; k < x.rows(); ++k) {
      Int u = x(k, c), v = x(k, j);
      x(k, c) = s * u + t * v;
      x(k, j) = ag * v - bg * u;
    }
  };
  apply(m);
  if (aux) apply(*aux);
}

// In-place row-style Hermite normal form. Returns pivot columns.
std::vector<std::size_t> hnf_inplace(IntMatrix& h, IntMatrix* u) {
  std::vector<std::size_t> pivots;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // pick the smallest nonzero entry as pivot to keep numbers small
    std::size_t best = m;
    for (std::size_t i = r; i < m; ++i) {
      if (h(i, c) == 0) continue;
      if (best == m || abs(h(i, c)) < abs(h(best, c))) best = i;
    }
    if (best == m) continue;
    h.swap_rows(r, best);
    if (u) u->swap_rows(r, best);
    for (std::size_t i = r + 1; i < m; ++i) row_gcd_step(h, u, r, i, c, c);
    if (h(r, c) < 0) {
      h.negate_row(r);
      if (u) u->negate_row(r);
    }
    const Int& p = h(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (h(i, c) == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = c; k < n; ++k)
        if (h(r, k) != 0) h(i, k) -= q * h(r, k);
      if (u) u->add_row_multiple(i, r, -q);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void snf_inplace(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
  const std::size_t m = d.rows(), n = d.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (bi == m || abs(d(i, j)) < abs(d(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    d.swap_rows(t, bi);
    if (u) u->swap_rows(t, bi);
    d.swap_cols(t, bj);
    if (v) v->swap_cols(t, bj);
    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) row_gcd_step(d, u, t, i, t, t);
      for (std::size_t j = t + 1; j < n; ++j) col_gcd_step(d, v, t, j, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m && clean; ++i)
        if (d(i, t) != 0) clean = false;
      for (std::size_t j = t + 1; j < n && clean; ++j)
        if (d(t, j) != 0) clean = false;
      if (!clean) continue;
      // enforce divisibility of the remaining block
      std::size_t fi = m;
      for (std::size_t i = t + 1; i < m && fi == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            fi = i;
            break;
          }
      if (fi == m) break;
      d.add_row_multiple(t, fi, Int(1));
      if (u) u->add_row_multiple(t, fi, Int(1));
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

}  // namespace

IntVec SmithForm::invariants() const {
  IntVec out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

SmithForm snf(const IntMatrix& a) {
  SmithForm s{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  snf_inplace(s.D, &s.U, &s.V);
  return s;
}

IntVec smith_invariants(const IntMatrix& a) {
  // reduce to a square nonsingular core first; invariants are unchanged
  IntMatrix h = hnf_basis(a);
  IntMatrix ht = hnf_basis(h.transpose());
  snf_inplace(ht, nullptr, nullptr);
  IntVec out;
  for (std::size_t i = 0; i < std::min(ht.rows(), ht.cols()); ++i)
    if (ht(i, i) != 0) out.push_back(ht(i, i));
  std::sort(out.begin(), out.end());
  return out;
}

HermiteForm hnf(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  auto piv = hnf_inplace(h, &u);
  HermiteForm out;
  out.H = h.block(0, 0, piv.size(), a.cols());
  out.U = std::move(u);
  out.pivots = std::move(piv);
  return out;
}

IntMatrix hnf_basis(const IntMatrix& a) {
  IntMatrix h = a;
  auto piv = hnf_inplace(h, nullptr);
  return h.block(0, 0, piv.size(), a.cols());
}

IntMatrix kernel_basis(const IntMatrix& a) {
  HermiteForm h = hnf(a);
  std::size_t r = h.rank();
  IntMatrix k = h.U.block(r, 0, a.rows() - r, a.rows());
  if (k.rows() == 0) return IntMatrix(0, a.rows());
  return hnf_basis(k);
}

AbelianInvariants invariants_from_diagonal(const IntVec& nonzero, std::size_t ambient) {
  AbelianInvariants out;
  for (const auto& d : nonzero)
    if (abs(d) > 1) out.factors.push_back(abs(d));
  std::sort(out.factors.begin(), out.factors.end());
  out.free_rank = ambient - nonzero.size();
  return out;
}

AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  return invariants_from_diagonal(smith_invariants(a), a.rows());
}

std::size_t rank(const IntMatrix& a) { return hnf_basis(a).rows(); }

Int det(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("det: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int x = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = x;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square()) return false;
  Int d = det(a);
  return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::NotUnimodular, "matrix not square");
  HermiteForm h = hnf(a);
  if (!(h.H.rows() == a.rows() && h.H.is_identity()))
    throw Error(ErrorKind::NotUnimodular, "matrix is not invertible over the integers");
  return h.U;
}

std::optional<IntMatrix> solve_left(const IntMatrix& basis, const IntMatrix& x) {
  if (x.cols() != basis.cols()) throw std::invalid_argument("solve_left: column mismatch");
  HermiteForm h = hnf(basis);
  const std::size_t k = h.rank();
  if (k != basis.rows()) throw std::invalid_argument("solve_left: basis rows are dependent");
  IntMatrix z(x.rows(), k);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    IntVec rem = x.row(r);
    for (std::size_t p = 0; p < k; ++p) {
      std::size_t c = h.pivots[p];
      if (rem[c] == 0) continue;
      if (!mpz_divisible_p(rem[c].get_mpz_t(), h.H(p, c).get_mpz_t())) return std::nullopt;
      Int q = rem[c] / h.H(p, c);
      z(r, p) = q;
      for (std::size_t j = c; j < rem.size(); ++j)
        if (h.H(p, j) != 0) rem[j] -= q * h.H(p, j);
    }
    if (!vec_is_zero(rem)) return std::nullopt;
  }
  return z * h.U.block(0, 0, k, basis.rows());
}

bool span_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return hnf_basis(a) == hnf_basis(b);
}

bool span_contains(const IntMatrix& big, const IntMatrix& x) {
  if (x.rows() == 0) return true;
  IntMatrix h = hnf_basis(big);
  if (h.rows() == 0) return x.is_zero();
  return solve_left(h, x).has_value();
}

IntMatrix span_intersection(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix ha = hnf_basis(a), hb = hnf_basis(b);
  if (ha.rows() == 0 || hb.rows() == 0) return IntMatrix(0, a.cols());
  IntMatrix k = kernel_basis(IntMatrix::vstack(ha, -hb));
  if (k.rows() == 0) return IntMatrix(0, a.cols());
  return hnf_basis(k.block(0, 0, k.rows(), ha.rows()) * ha);
}

IntMatrix saturation(const IntMatrix& a) {
  const std::size_t n = a.cols();
  IntMatrix h = hnf_basis(a);
  if (h.rows() == 0) return IntMatrix(0, n);
  IntMatrix perp = kernel_basis(h.transpose());  // rows v with h * v^T = 0
  if (perp.rows() == 0) return IntMatrix::identity(n);
  return kernel_basis(perp.transpose());
}

AbelianInvariants quotient_invariants(const IntMatrix& big, const IntMatrix& small) {
  IntMatrix b = hnf_basis(big);
  if (b.rows() == 0) return {};
  IntMatrix s = hnf_basis(small);
  if (s.rows() == 0) return AbelianInvariants{{}, b.rows()};
  auto y = solve_left(b, s);
  if (!y) throw std::invalid_argument("quotient_invariants: sublattice not contained");
  return invariants_from_diagonal(smith_invariants(*y), b.rows());
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rat(m(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("rational product: dimension mismatch");
  RatMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0) m(i, j) += x * o(k, j);
    }
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool RatMatrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntMatrix RatMatrix::to_int() const {
  if (!is_integral()) throw std::invalid_argument("rational matrix is not integral");
  IntMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_num();
  return m;
}

Int RatMatrix::common_denominator() const {
  Int d = 1;
  for (const auto& x : a_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  RatMatrix m = *this, inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m(p, k), m(c, k));
        std::swap(inv(p, k), inv(c, k));
      }
    Rat piv = m(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) /= piv;
      inv(c, k) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) -= f * m(c, k);
        inv(i, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

}  // namespace latkit
