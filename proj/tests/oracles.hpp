#pragma once
// Independent brute-force helpers shared by the unit tests.

#include <functional>
#include <random>
#include <vector>

#include "latkit/intmat.hpp"

namespace oracle {

using latkit::Int;
using latkit::IntMatrix;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  IntMatrix t = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && (rng() & 1)) t(0, 0) = -1;
    return t;
  }
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), f(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    t.add_row_multiple(i, j, Int(f(rng)));
  }
  if (rng() & 1) t.swap_rows(0, n - 1);
  return t;
}

// Cofactor-expansion determinant, independent of the library's Bareiss code.
inline Int det_expand(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Int sub = det_expand(m.select_rows(rows).select_cols(cols));
    s += ((j % 2) ? -1 : 1) * m(0, j) * sub;
  }
  return s;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// gcd of all k x k minors
inline Int minor_gcd(const IntMatrix& m, std::size_t k) {
  Int g = 0;
  for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& r) {
    for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& c) {
      Int d = det_expand(m.select_rows(r).select_cols(c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Int> invariants_by_minors(const IntMatrix& m) {
  std::vector<Int> out;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Int g = minor_gcd(m, k);
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Rank over Q via fraction-free elimination on a copy.
inline std::size_t rational_rank(const IntMatrix& a) {
  std::vector<std::vector<latkit::Rat>> m(a.rows(), std::vector<latkit::Rat>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && m[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (m[i][c] == 0) continue;
      latkit::Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < a.cols(); ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
