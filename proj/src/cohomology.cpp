#include "latkit/cohomology.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>

#include "latkit/errors.hpp"

namespace latkit {

const char* resolution_name(Resolution r) {
  return r == Resolution::Bar ? "bar" : "periodic-tensor";
}

IntMatrix DenseMatrix::to_int() const {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

void check_budget(std::size_t rows, std::size_t cols, const CohomologyOptions& opt) {
  if (rows != 0 && cols > opt.max_cells / rows)
    throw Error(ErrorKind::BudgetExceeded, "matrix of " + std::to_string(rows) + " x " +
                                               std::to_string(cols) + " exceeds the cell budget of " +
                                               std::to_string(opt.max_cells));
}

namespace {

std::vector<std::pair<int64_t, int>> factor_small(int64_t n) {
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int64_t inv_mod(int64_t a, int64_t m) {
  int64_t g = m, x = 0, x1 = 1, b = a % m;
  if (b < 0) b += m;
  while (b) {
    int64_t q = g / b, t = g - q * b;
    g = b;
    b = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw Error(ErrorKind::InvalidInput, "not a unit");
  return ((x % m) + m) % m;
}

// valuations v in [1, k) of the Smith diagonal of m over Z/p^k
std::vector<int> local_valuations(const DenseMatrix& src, int64_t p, int k, bool parallel) {
  int64_t q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  if (q > 3037000499LL) throw Error(ErrorKind::Overflow, "modulus too large for the local reduction");
  const std::size_t R = src.rows, C = src.cols;
  std::vector<int64_t> a(src.a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = ((src.a[i] % q) + q) % q;
  std::vector<int64_t> pw(k + 1, 1);
  for (int i = 1; i <= k; ++i) pw[i] = pw[i - 1] * p;
  auto val = [&](int64_t x) {
    if (x == 0) return k;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  std::vector<char> row_used(R, 0), col_used(C, 0);
  std::vector<int> out;
  std::vector<int64_t> prow(C);
  for (int v = 0; v < k; ++v) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t j = 0; j < C; ++j) {
        if (col_used[j]) continue;
        std::size_t piv = R;
        for (std::size_t i = 0; i < R; ++i)
          if (!row_used[i] && a[i * C + j] != 0 && val(a[i * C + j]) == v) {
            piv = i;
            break;
          }
        if (piv == R) continue;
        progress = true;
        row_used[piv] = 1;
        col_used[j] = 1;
        if (v > 0) out.push_back(v);
        int64_t unit = a[piv * C + j] / pw[v];
        int64_t uinv = inv_mod(unit, q);
        std::copy(a.begin() + piv * C, a.begin() + (piv + 1) * C, prow.begin());
#pragma omp parallel for schedule(static) if (parallel)
        for (std::size_t i = 0; i < R; ++i) {
          if (row_used[i]) continue;
          int64_t x = a[i * C + j];
          if (x == 0) continue;
          int64_t f = (x / pw[v]) % q * uinv % q;
          int64_t* r = &a[i * C];
          for (std::size_t c = 0; c < C; ++c) {
            if (prow[c] == 0) continue;
            int64_t y = (r[c] - f * prow[c]) % q;
            r[c] = y < 0 ? y + q : y;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

IntVec torsion_invariants_mod(const DenseMatrix& m, const Int& exponent, bool parallel) {
  if (!exponent.fits_slong_p() || exponent <= 0)
    throw Error(ErrorKind::InvalidInput, "exponent must be a positive machine integer");
  // per prime, the p-parts in descending order
  std::vector<std::vector<Int>> parts;
  std::size_t longest = 0;
  for (auto [p, e] : factor_small(exponent.get_si())) {
    std::vector<int> vs = local_valuations(m, p, e + 1, parallel);
    std::sort(vs.rbegin(), vs.rend());
    std::vector<Int> ps;
    for (int v : vs) {
      Int x = 1;
      for (int t = 0; t < v; ++t) x *= p;
      ps.push_back(x);
    }
    longest = std::max(longest, ps.size());
    parts.push_back(std::move(ps));
  }
  IntVec out(longest, Int(1));
  for (const auto& ps : parts)
    for (std::size_t i = 0; i < ps.size(); ++i) out[i] *= ps[i];
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// rethrows the first exception captured inside an OpenMP region
struct OmpErrors {
  std::exception_ptr first;
  void capture() {
#pragma omp critical(latkit_omp_errors)
    if (!first) first = std::current_exception();
  }
  void rethrow() const {
    if (first) std::rethrow_exception(first);
  }
};

}  // namespace

DenseMatrix bar_coboundary(const GLattice& l, const std::vector<std::size_t>& elems, int n,
                           const CohomologyOptions& opt) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "coboundary degree must be at least 1");
  const FinGroup& g = l.group();
  const std::size_t r = l.rank();
  std::vector<std::size_t> ne;
  std::vector<long> pos(g.order(), -1);
  for (std::size_t e : elems)
    if (e != g.identity()) {
      pos[e] = static_cast<long>(ne.size());
      ne.push_back(e);
    }
  const std::size_t M = ne.size();
  const std::size_t rows = ipow(M, n - 1) * r, cols = ipow(M, n) * r;
  check_budget(rows, cols, opt);
  DenseMatrix d(rows, cols);
  const std::size_t ntup = ipow(M, n);
  OmpErrors errs;
#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
  for (std::size_t s = 0; s < ntup; ++s) {
    try {
      std::vector<std::size_t> t(n);  // local indices, most significant first
      std::size_t x = s;
      for (int i = n - 1; i >= 0; --i) {
        t[i] = x % M;
        x /= M;
      }
      auto index_of = [&](const std::vector<std::size_t>& u) {
        std::size_t id = 0;
        for (std::size_t v : u) id = id * M + v;
        return id;
      };
      std::vector<std::size_t> tau;
      // g_1 acting on f(g_2..g_n)
      tau.assign(t.begin() + 1, t.end());
      const SmallMat& a = l.action(g.inv(ne[t[0]]));
      std::size_t rb = index_of(tau) * r, cb = s * r;
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t c2 = 0; c2 < r; ++c2) d(rb + c, cb + c2) += a(int(c), int(c2));
      for (int i = 1; i < n; ++i) {
        std::size_t h = g.mul(ne[t[i - 1]], ne[t[i]]);
        if (h == g.identity()) continue;
        tau.clear();
        for (int k = 0; k < n; ++k) {
          if (k == i - 1) {
            if (pos[h] < 0) throw Error(ErrorKind::NotASubgroupElement, "element list is not closed");
            tau.push_back(static_cast<std::size_t>(pos[h]));
          } else if (k != i) {
            tau.push_back(t[k]);
          }
        }
        rb = index_of(tau) * r;
        const int64_t sg = (i % 2) ? -1 : 1;
        for (std::size_t c = 0; c < r; ++c) d(rb + c, cb + c) += sg;
      }
      tau.assign(t.begin(), t.end() - 1);
      rb = index_of(tau) * r;
      const int64_t sg = (n % 2) ? -1 : 1;
      for (std::size_t c = 0; c < r; ++c) d(rb + c, cb + c) += sg;
    } catch (...) {
      errs.capture();
    }
  }
  errs.rethrow();
  return d;
}

namespace {

std::vector<std::size_t> all_elements(const FinGroup& g) {
  std::vector<std::size_t> v(g.order());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

void check_degree(int degree) {
  if (degree < 1 || degree > 3) throw Error(ErrorKind::InvalidInput, "degree must be 1, 2 or 3");
}

}  // namespace

CohomologyResult h_n(const GLattice& l, int degree, const CohomologyOptions& opt) {
  check_degree(degree);
  CohomologyResult res;
  res.degree = degree;
  res.resolution_used = Resolution::Bar;
  const FinGroup& g = l.group();
  if (g.order() == 1 || l.rank() == 0) return res;
  DenseMatrix d = bar_coboundary(l, all_elements(g), degree, opt);
  res.group.factors = torsion_invariants_mod(d, Int(static_cast<unsigned long>(g.order())), opt.parallel);
  return res;
}

CohomologyResult h_n(const FinGroup& group, const GLattice& l, int degree, const CohomologyOptions& opt) {
  if (&group != &l.group()) throw Error(ErrorKind::GroupMismatch, "lattice is defined over a different group");
  return h_n(l, degree, opt);
}

ElementaryAbelianData elementary_abelian_basis(const FinGroup& g) {
  ElementaryAbelianData e;
  if (g.order() == 1) return e;
  if (!g.is_abelian()) throw Error(ErrorKind::NotElementaryAbelian, "group is not abelian");
  const std::size_t p = g.element_order(g.order() > 1 ? 1 : 0);
  if (factor_small(static_cast<int64_t>(p)).size() != 1 || factor_small(static_cast<int64_t>(p))[0].second != 1)
    throw Error(ErrorKind::NotElementaryAbelian, "element order is not prime");
  for (std::size_t i = 1; i < g.order(); ++i)
    if (g.element_order(i) != p)
      throw Error(ErrorKind::NotElementaryAbelian, "elements of different orders");
  e.p = static_cast<int>(p);
  std::vector<char> in_span(g.order(), 0);
  in_span[g.identity()] = 1;
  for (std::size_t i = 1; i < g.order(); ++i) {
    if (in_span[i]) continue;
    e.basis.push_back(i);
    for (std::size_t x : g.subgroup_closure(e.basis)) in_span[x] = 1;
  }
  return e;
}

namespace {

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (parts > 0) rec(0, total);
  return out;
}

}  // namespace

DenseMatrix periodic_coboundary(const GLattice& l, const ElementaryAbelianData& e, int n,
                                const CohomologyOptions& opt) {
  const FinGroup& g = l.group();
  const int m = static_cast<int>(e.basis.size());
  const std::size_t r = l.rank();
  auto src = compositions(n - 1, m), dst = compositions(n, m);
  check_budget(src.size() * r, dst.size() * r, opt);
  std::map<std::vector<int>, std::size_t> src_idx;
  for (std::size_t i = 0; i < src.size(); ++i) src_idx[src[i]] = i;
  // left action of (gamma - 1) and of the norm, as right-multiplied matrices
  std::vector<SmallMat> minus_one, norm;
  for (std::size_t gi : e.basis) {
    SmallMat a = l.action(g.inv(gi));
    for (int c = 0; c < a.dim(); ++c) a(c, c) -= 1;
    minus_one.push_back(a);
    SmallMat s(static_cast<int>(r));
    std::size_t x = g.identity();
    for (int k = 0; k < e.p; ++k) {
      const SmallMat& b = l.action(x);
      for (std::size_t i = 0; i < r * r; ++i) s(int(i / r), int(i % r)) += b(int(i / r), int(i % r));
      x = g.mul(x, gi);
    }
    norm.push_back(s);
  }
  DenseMatrix d(src.size() * r, dst.size() * r);
#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel)
  for (std::size_t bi = 0; bi < dst.size(); ++bi) {
    const auto& b = dst[bi];
    int prefix = 0;
    for (int i = 0; i < m; ++i) {
      if (b[i] > 0) {
        std::vector<int> a = b;
        --a[i];
        const std::size_t rb = src_idx.at(a) * r, cb = bi * r;
        const int64_t sg = (prefix % 2) ? -1 : 1;
        const SmallMat& th = (b[i] % 2) ? minus_one[i] : norm[i];
        for (std::size_t c = 0; c < r; ++c)
          for (std::size_t c2 = 0; c2 < r; ++c2) d(rb + c, cb + c2) += sg * th(int(c), int(c2));
      }
      prefix += b[i];
    }
  }
  return d;
}

CohomologyResult periodic_h_n(const GLattice& l, int degree, const CohomologyOptions& opt) {
  check_degree(degree);
  ElementaryAbelianData e = elementary_abelian_basis(l.group());
  CohomologyResult res;
  res.degree = degree;
  res.resolution_used = Resolution::PeriodicTensor;
  if (l.group().order() == 1 || l.rank() == 0) return res;
  DenseMatrix d = periodic_coboundary(l, e, degree, opt);
  res.group.factors =
      torsion_invariants_mod(d, Int(static_cast<unsigned long>(l.group().order())), opt.parallel);
  return res;
}

AbelianInvariants sha2(const GLattice& l, const CohomologyOptions& opt) {
  const FinGroup& g = l.group();
  const std::size_t N = g.order(), r = l.rank();
  AbelianInvariants out;
  if (N == 1 || r == 0) return out;
  const std::size_t M = N - 1;
  // dual lattice acting on the left: g^{-1}.m = m * A(g^{-1})^T
  std::vector<SmallMat> t(N);
  for (std::size_t x = 0; x < N; ++x) t[x] = l.action(g.inv(x)).transpose();

  auto cyc = g.cyclic_subgroups();
  // corestriction images: 1-cycles supported on each cyclic subgroup
  std::vector<IntMatrix> cycles(cyc.size());
  OmpErrors errs;
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    try {
      std::vector<std::size_t> ne;
      for (std::size_t x : cyc[k])
        if (x != g.identity()) ne.push_back(x);
      IntMatrix d1(ne.size() * r, r);
      for (std::size_t j = 0; j < ne.size(); ++j)
        for (std::size_t c = 0; c < r; ++c) {
          for (std::size_t c2 = 0; c2 < r; ++c2) d1(j * r + c, c2) = static_cast<long>(t[ne[j]](int(c), int(c2)));
          d1(j * r + c, c) -= 1;
        }
      IntMatrix z = kernel_basis(d1);
      IntMatrix emb(z.rows(), M * r);
      for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < ne.size(); ++j)
          for (std::size_t c = 0; c < r; ++c) emb(i, (ne[j] - 1) * r + c) = z(i, j * r + c);
      cycles[k] = std::move(emb);
    } catch (...) {
      errs.capture();
    }
  }
  errs.rethrow();

  std::size_t extra = 0;
  for (const auto& z : cycles) extra += z.rows();
  const std::size_t nb = M * M * r;
  check_budget(nb + extra, M * r, opt);
  DenseMatrix m(nb + extra, M * r);
#pragma omp parallel for schedule(dynamic, 8) if (opt.parallel)
  for (std::size_t g1 = 1; g1 < N; ++g1) {
    for (std::size_t g2 = 1; g2 < N; ++g2) {
      const std::size_t h = g.mul(g1, g2);
      for (std::size_t c = 0; c < r; ++c) {
        const std::size_t row = ((g1 - 1) * M + (g2 - 1)) * r + c;
        for (std::size_t c2 = 0; c2 < r; ++c2) m(row, (g2 - 1) * r + c2) += t[g1](int(c), int(c2));
        if (h != g.identity()) m(row, (h - 1) * r + c) -= 1;
        m(row, (g1 - 1) * r + c) += 1;
      }
    }
  }
  std::size_t row = nb;
  for (const auto& z : cycles)
    for (std::size_t i = 0; i < z.rows(); ++i, ++row)
      for (std::size_t j = 0; j < z.cols(); ++j) {
        if (!z(i, j).fits_slong_p()) throw Error(ErrorKind::Overflow, "cycle entry too large");
        m(row, j) = z(i, j).get_si();
      }
  out.factors = torsion_invariants_mod(m, Int(static_cast<unsigned long>(N)), opt.parallel);
  return out;
}

AbelianInvariants sha2_by_restriction(const GLattice& l, const CohomologyOptions& opt) {
  const FinGroup& g = l.group();
  const std::size_t N = g.order(), r = l.rank();
  AbelianInvariants out;
  if (N == 1 || r == 0) return out;
  const std::size_t M = N - 1;

  SmithForm big = snf(bar_coboundary(l, all_elements(g), 2, opt).to_int());
  IntMatrix vinv = inverse_unimodular(big.V);
  std::vector<std::size_t> gens;  // positions i with d_i > 1
  IntVec orders;
  const std::size_t diag = std::min(big.D.rows(), big.D.cols());
  for (std::size_t i = 0; i < diag; ++i)
    if (big.D(i, i) != 0 && abs(big.D(i, i)) != 1) {
      gens.push_back(i);
      orders.push_back(abs(big.D(i, i)));
    }
  if (gens.empty()) return out;

  auto cyc = g.cyclic_subgroups();
  std::vector<IntMatrix> images(cyc.size());  // gens x (H^2(C) coordinates)
  std::vector<IntVec> targets(cyc.size());
  OmpErrors errs;
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    try {
      const auto& el = cyc[k];
      SmithForm sm = snf(bar_coboundary(l, el, 2, opt).to_int());
      std::vector<std::size_t> ne;
      for (std::size_t x : el)
        if (x != g.identity()) ne.push_back(x);
      const std::size_t m = ne.size();
      // restriction of each generator cocycle to pairs inside the subgroup
      IntMatrix res(gens.size(), m * m * r);
      for (std::size_t gi = 0; gi < gens.size(); ++gi)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < r; ++c)
              res(gi, (a * m + b) * r + c) = vinv(gens[gi], ((ne[a] - 1) * M + (ne[b] - 1)) * r + c);
      IntMatrix w = res * sm.V;
      IntVec tg;
      std::vector<std::size_t> cols;
      const std::size_t dg = std::min(sm.D.rows(), sm.D.cols());
      for (std::size_t j = 0; j < dg; ++j)
        if (sm.D(j, j) != 0 && abs(sm.D(j, j)) != 1) {
          cols.push_back(j);
          tg.push_back(abs(sm.D(j, j)));
        }
      images[k] = w.select_cols(cols);
      targets[k] = tg;
    } catch (...) {
      errs.capture();
    }
  }
  errs.rethrow();

  IntMatrix phi(gens.size(), 0);
  IntVec tgt;
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    phi = IntMatrix::hstack(phi, images[k]);
    tgt.insert(tgt.end(), targets[k].begin(), targets[k].end());
  }
  // x with x*phi == 0 modulo the target orders
  IntMatrix rel(tgt.size(), tgt.size());
  for (std::size_t j = 0; j < tgt.size(); ++j) rel(j, j) = tgt[j];
  IntMatrix kb = kernel_basis(IntMatrix::vstack(phi, rel));
  std::vector<std::size_t> first(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) first[i] = i;
  IntMatrix x = kb.select_cols(first);
  IntMatrix dd(gens.size(), gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) dd(i, i) = orders[i];
  return quotient_invariants(IntMatrix::vstack(x, dd), dd);
}

}  // namespace latkit
