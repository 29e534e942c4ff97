#include "latkit/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "latkit/errors.hpp"

namespace latkit {

GLattice j_gamma(GroupPtr group) {
  const std::size_t n = group->order();
  if (n == 1) {
    std::vector<SmallMat> e(group->generators().size(), SmallMat(0));
    return GLattice::from_small(group, e);
  }
  const int r = static_cast<int>(n) - 1;
  std::vector<SmallMat> imgs;
  for (std::size_t s : group->generators()) {
    SmallMat m(r);
    for (std::size_t h = 1; h < n; ++h) {
      std::size_t hs = group->mul(h, s);
      if (hs == group->identity()) {
        // the identity is minus the sum of the other basis vectors
        for (int c = 0; c < r; ++c) m(int(h - 1), c) = -1;
      } else {
        m(int(h - 1), int(hs - 1)) = 1;
      }
    }
    imgs.push_back(m);
  }
  return GLattice::from_small(group, imgs);
}

// ---------------------------------------------------------------------------

void Section2Spec::validate() const {
  if (bd_factors.empty()) throw Error(ErrorKind::InvalidSpec, "at least one B or D factor is required");
  for (const auto& f : bd_factors) {
    if (f.family == Family::B && f.l < 1) throw Error(ErrorKind::InvalidSpec, "B factor needs l >= 1");
    if (f.family == Family::D && f.l < 2) throw Error(ErrorKind::InvalidSpec, "D factor needs l >= 2");
    if (f.family != Family::B && f.family != Family::D)
      throw Error(ErrorKind::InvalidSpec, "coordinate factors must be of type B or D");
  }
  for (int n : a_factors)
    if (n < 2) throw Error(ErrorKind::InvalidSpec, "A factor A_{2n-1} needs n >= 2");
}

bool Section2Spec::hypotheses_hold() const {
  const std::size_t m = bd_factors.size(), mu = a_factors.size();
  if (m < 1 || m + mu < 2) return false;
  if (mu == 0) {
    bool all_small = std::all_of(bd_factors.begin(), bd_factors.end(), [](const BDFactor& f) {
      return (f.family == Family::B && f.l == 1) || (f.family == Family::D && f.l == 2);
    });
    if (all_small) return false;
  }
  return true;
}

int Section2Spec::coordinate_count() const {
  int s = 0;
  for (const auto& f : bd_factors) s += f.l;
  return s;
}

int Section2Spec::rank() const {
  int r = coordinate_count();
  for (int n : a_factors) r += 2 * n - 1;
  return r;
}

std::string Section2Spec::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < bd_factors.size(); ++i)
    os << (i ? "+" : "") << family_name(bd_factors[i].family) << bd_factors[i].l;
  os << ";";
  for (std::size_t i = 0; i < a_factors.size(); ++i) os << (i ? "+" : "") << "A" << 2 * a_factors[i] - 1;
  return os.str();
}

Partition3 partition(const Section2Spec& spec, bool allow_boundary) {
  spec.validate();
  const std::size_t m = spec.bd_factors.size(), mu = spec.a_factors.size();
  Partition3 p;
  p.parts.resize(m);
  std::vector<std::vector<int>> coords(m);
  int off = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (int k = 0; k < spec.bd_factors[i].l; ++k) coords[i].push_back(off++);
  auto is_odd_d = [&](std::size_t i) {
    return spec.bd_factors[i].family == Family::D && spec.bd_factors[i].l >= 3 && spec.bd_factors[i].l % 2;
  };
  auto split_odd = [&](std::size_t i) {
    const auto& c = coords[i];
    p.parts[i][0] = {c[0]};
    p.parts[i][1] = {c[1]};
    p.parts[i][2].assign(c.begin() + 2, c.end());
  };

  if (!spec.hypotheses_hold()) {
    if (!(allow_boundary && mu == 0 && m >= 3))
      throw Error(ErrorKind::HypothesesViolated, "spec " + spec.str() + " violates the hypotheses");
    // every factor is B1 or D2: whole factors go to different parts
    for (std::size_t i = 0; i < m; ++i) p.parts[i][std::min<std::size_t>(i, 2)] = coords[i];
  } else if (mu >= 1) {
    for (std::size_t i = 0; i < m; ++i) {
      if (is_odd_d(i)) split_odd(i);
      else p.parts[i][0] = coords[i];
    }
  } else {
    bool any_odd = false;
    for (std::size_t i = 0; i < m; ++i) any_odd = any_odd || is_odd_d(i);
    std::size_t chosen = m;
    if (!any_odd) {
      for (std::size_t i = 0; i < m && chosen == m; ++i)
        if (spec.bd_factors[i].family == Family::D && spec.bd_factors[i].l >= 4) chosen = i;
      for (std::size_t i = 0; i < m && chosen == m; ++i)
        if (spec.bd_factors[i].family == Family::B && spec.bd_factors[i].l >= 2) chosen = i;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (any_odd && is_odd_d(i)) {
        split_odd(i);
      } else if (i == chosen) {
        const auto& c = coords[i];
        std::size_t first = spec.bd_factors[i].family == Family::D ? 2 : 1;
        p.parts[i][0].assign(c.begin(), c.begin() + first);
        p.parts[i][1].assign(c.begin() + first, c.end());
      } else {
        p.parts[i][2] = coords[i];
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (int k = 0; k < 3; ++k) p.unions[k].insert(p.unions[k].end(), p.parts[i][k].begin(), p.parts[i][k].end());
  for (auto& u : p.unions) std::sort(u.begin(), u.end());
  return p;
}

namespace {

IntMatrix swap_matrix(int dim, int a, int b, int sign = 1) {
  IntMatrix m = IntMatrix::identity(dim);
  m(a, a) = 0;
  m(b, b) = 0;
  m(a, b) = sign;
  m(b, a) = sign;
  return m;
}

}  // namespace

Section2Lattice section2_lattice(const Section2Spec& spec) {
  spec.validate();
  Section2Lattice s;
  s.spec = spec;
  const int ns = spec.coordinate_count();
  int dim = ns;
  for (int n : spec.a_factors) {
    s.a_offsets.push_back(dim);
    dim += 2 * n;
  }
  s.ambient_dim = dim;

  IntMatrix lp(0, dim);
  for (int c = 0; c < ns; ++c) {
    IntVec r(dim, Int(0));
    r[c] = 2;
    lp.append_row(r);
  }
  for (std::size_t t = 0; t < spec.a_factors.size(); ++t)
    for (int k = 0; k + 1 < 2 * spec.a_factors[t]; ++k) {
      IntVec r(dim, Int(0));
      r[s.a_offsets[t] + k] = 2;
      r[s.a_offsets[t] + k + 1] = -2;
      lp.append_row(r);
    }
  s.Lprime_basis = hnf_basis(lp);
  s.v = IntVec(dim, Int(0));
  for (int c = 0; c < ns; ++c) s.v[c] = 1;
  for (std::size_t t = 0; t < spec.a_factors.size(); ++t)
    for (int k = 0; k < 2 * spec.a_factors[t]; ++k) s.v[s.a_offsets[t] + k] = (k % 2) ? -1 : 1;
  IntMatrix gens = lp;
  gens.append_row(s.v);
  s.L_basis = hnf_basis(gens);

  int off = 0;
  for (const auto& f : spec.bd_factors) {
    for (int k = 0; k + 1 < f.l; ++k) s.weyl_generators.push_back(swap_matrix(dim, off + k, off + k + 1));
    if (f.family == Family::B) {
      IntMatrix c = IntMatrix::identity(dim);
      c(off + f.l - 1, off + f.l - 1) = -1;
      s.weyl_generators.push_back(c);
    } else {
      s.weyl_generators.push_back(swap_matrix(dim, off + f.l - 2, off + f.l - 1, -1));
    }
    off += f.l;
  }
  for (std::size_t t = 0; t < spec.a_factors.size(); ++t)
    for (int k = 0; k + 1 < 2 * spec.a_factors[t]; ++k)
      s.weyl_generators.push_back(swap_matrix(dim, s.a_offsets[t] + k, s.a_offsets[t] + k + 1));
  return s;
}

std::size_t Section2Lattice::index_over_Lprime() const {
  Int o = quotient_invariants(L_basis, Lprime_basis).order();
  return o.get_ui();
}

GLattice Section2Lattice::restricted(const std::vector<IntMatrix>& ambient_generators) const {
  std::vector<IntMatrix> imgs;
  for (const auto& g : ambient_generators) {
    auto y = solve_left(L_basis, L_basis * g);
    if (!y) throw Error(ErrorKind::NotInvariant, "matrix does not preserve L");
    imgs.push_back(*y);
  }
  return GLattice(FinGroup::close(ambient_generators), imgs);
}

KleinEmbedding klein_embedding(const Section2Spec& spec, const Partition3& part) {
  spec.validate();
  const int ns = spec.coordinate_count();
  int dim = ns;
  std::vector<int> a_off;
  for (int n : spec.a_factors) {
    a_off.push_back(dim);
    dim += 2 * n;
  }
  if (part.parts.size() != spec.bd_factors.size())
    throw Error(ErrorKind::ParityViolation, "partition does not match the factors");
  KleinEmbedding e;
  for (int k = 0; k < 3; ++k) {
    IntMatrix m = IntMatrix::identity(dim);
    std::vector<char> in_u(ns, 0);
    for (int s : part.unions[k]) in_u[s] = 1;
    int off = 0;
    for (std::size_t i = 0; i < spec.bd_factors.size(); ++i) {
      const auto& f = spec.bd_factors[i];
      int flips = 0;
      for (int c = off; c < off + f.l; ++c)
        if (!in_u[c]) {
          m(c, c) = -1;
          ++flips;
        }
      if (f.family == Family::D && flips % 2)
        throw Error(ErrorKind::ParityViolation,
                    "odd number of sign changes on a D factor in involution " + std::to_string(k + 1));
      off += f.l;
    }
    for (std::size_t t = 0; t < spec.a_factors.size(); ++t) {
      const int n = spec.a_factors[t];
      const bool first = k == 0 || k == 1, rest = k == 0 || k == 2;
      auto swap_in = [&](int a, int b) {
        m(a, a) = 0;
        m(b, b) = 0;
        m(a, b) = 1;
        m(b, a) = 1;
      };
      if (first) swap_in(a_off[t], a_off[t] + 1);
      if (rest)
        for (int lam = 1; lam < n; ++lam) swap_in(a_off[t] + 2 * lam, a_off[t] + 2 * lam + 1);
    }
    e.j[k] = m;
  }
  const IntMatrix id = IntMatrix::identity(dim);
  for (int k = 0; k < 3; ++k) {
    if (e.j[k].is_identity()) throw Error(ErrorKind::ParityViolation, "an involution is trivial");
    if (!(e.j[k] * e.j[k]).is_identity()) throw Error(ErrorKind::ConstructionFailed, "not an involution");
  }
  if (!(e.j[0] * e.j[1] == e.j[2]) || !(e.j[0] * e.j[1] == e.j[1] * e.j[0]))
    throw Error(ErrorKind::ConstructionFailed, "involutions do not form a Klein four-group");
  (void)id;
  return e;
}

Section2Report analyze_section2(const Section2Spec& spec, bool allow_boundary, const CohomologyOptions& opt) {
  Section2Report rep;
  rep.spec = spec;
  rep.part = partition(spec, allow_boundary);
  rep.emb = klein_embedding(spec, rep.part);
  Section2Lattice lat = section2_lattice(spec);
  const int dim = lat.ambient_dim, ns = spec.coordinate_count();
  const std::size_t mu = spec.a_factors.size();
  for (int k = 0; k < 3; ++k) rep.vk[k] = vec_mul(lat.v, rep.emb.j[k]);

  rep.zero_sum = true;
  for (int c = 0; c < dim; ++c)
    if (lat.v[c] + rep.vk[0][c] + rep.vk[1][c] + rep.vk[2][c] != 0) rep.zero_sum = false;

  // v + v_k, doubled
  std::array<IntVec, 3> expect;
  for (int k = 0; k < 3; ++k) {
    expect[k] = IntVec(dim, Int(0));
    for (int s : rep.part.unions[k]) expect[k][s] = 2;
  }
  for (std::size_t t = 0; t < mu; ++t) {
    const int a = lat.a_offsets[t], n = spec.a_factors[t];
    // xi' on the first pair, xi'' on the others
    expect[2][a] = 2;
    expect[2][a + 1] = -2;
    for (int lam = 1; lam < n; ++lam) {
      expect[1][a + 2 * lam] = 2;
      expect[1][a + 2 * lam + 1] = -2;
    }
  }
  rep.sum_formulas = true;
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < dim; ++c)
      if (lat.v[c] + rep.vk[k][c] != expect[k][c]) rep.sum_formulas = false;

  rep.index = lat.index_over_Lprime();

  rep.L0_basis = IntMatrix(0, dim);
  for (int k = 0; k < 3; ++k) rep.L0_basis.append_row(rep.vk[k]);
  if (rank(rep.L0_basis) != 3) throw Error(ErrorKind::ConstructionFailed, "orbit of v has rank below 3");

  std::vector<IntMatrix> gens = {rep.emb.j[0], rep.emb.j[1]};
  GroupPtr gamma = FinGroup::close(gens);
  GLattice jl = j_gamma(gamma);
  std::vector<IntMatrix> l0_imgs;
  for (const auto& g : gens) l0_imgs.push_back(*solve_left(rep.L0_basis, rep.L0_basis * g));
  GLattice l0(gamma, l0_imgs);
  // [g] -> v.g for the nontrivial elements g
  rep.j_to_L0 = IntMatrix(3, 3);
  for (std::size_t g = 1; g < gamma->order(); ++g) {
    IntVec img = vec_mul(lat.v, gamma->element(g).to_int());
    auto y = solve_left(rep.L0_basis, IntMatrix::row_vector(img));
    if (!y) throw Error(ErrorKind::ConstructionFailed, "orbit vector outside L0");
    rep.j_to_L0.set_row(g - 1, y->row(0));
  }
  rep.L0_isomorphic = is_unimodular(rep.j_to_L0) && is_equivariant(jl, l0, rep.j_to_L0);

  // pair sums over the A coordinates, skipping the first pair
  IntMatrix phi(dim, 0);
  for (std::size_t t = 0; t < mu; ++t)
    for (int lam = 1; lam < spec.a_factors[t]; ++lam) {
      IntMatrix col(dim, 1);
      col(lat.a_offsets[t] + 2 * lam, 0) = 1;
      col(lat.a_offsets[t] + 2 * lam + 1, 0) = 1;
      phi = IntMatrix::hstack(phi, col);
    }
  if (phi.cols() == 0) {
    rep.L1_basis = lat.L_basis;
  } else {
    IntMatrix img = lat.L_basis * phi;  // doubled, so every entry is even
    rep.L1_basis = hnf_basis(kernel_basis(img) * lat.L_basis);
  }

  std::vector<int> skip;
  if (mu >= 1) {
    skip.push_back(rep.part.unions[0].front());
  } else {
    for (int k = 0; k < 3; ++k) skip.push_back(rep.part.unions[k].front());
  }
  for (int s = 0; s < ns; ++s)
    if (std::find(skip.begin(), skip.end(), s) == skip.end()) {
      IntVec x(dim, Int(0));
      x[s] = 2;
      rep.complements.push_back(x);
    }
  for (std::size_t t = 0; t < mu; ++t)
    for (int lam = 0; lam < spec.a_factors[t]; ++lam) {
      if (t == 0 && lam < 2) continue;
      IntVec x(dim, Int(0));
      x[lat.a_offsets[t] + 2 * lam] = 2;
      x[lat.a_offsets[t] + 2 * lam + 1] = -2;
      rep.complements.push_back(x);
    }
  IntMatrix sum = rep.L0_basis;
  for (const auto& x : rep.complements) sum.append_row(x);
  rep.decomposition_ok = span_equal(sum, rep.L1_basis);
  for (const auto& x : rep.complements)
    for (const auto& g : gens) {
      IntMatrix xr = IntMatrix::row_vector(x);
      if (!span_contains(xr, xr * g)) rep.decomposition_ok = false;
    }
  std::size_t expected_rank = static_cast<std::size_t>(ns);
  if (mu >= 1)
    for (int n : spec.a_factors) expected_rank += static_cast<std::size_t>(2 * n - 1 - (n - 1));
  rep.rank_count_ok = rep.L1_basis.rows() == expected_rank && 3 + rep.complements.size() == expected_rank;

  rep.sha2 = sha2(lat.restricted(gens), opt);
  return rep;
}

std::vector<Section2Spec> section2_grid(int max_rank) {
  struct Opt {
    bool bd;
    BDFactor f;
    int n;
    int rank;
  };
  std::vector<Opt> opts;
  for (int l = 1; l <= max_rank; ++l) opts.push_back({true, {Family::B, l}, 0, l});
  for (int l = 2; l <= max_rank; ++l) opts.push_back({true, {Family::D, l}, 0, l});
  for (int n = 2; 2 * n - 1 <= max_rank; ++n) opts.push_back({false, {}, n, 2 * n - 1});
  std::vector<Section2Spec> out;
  Section2Spec cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    if (!cur.bd_factors.empty() && cur.hypotheses_hold()) out.push_back(cur);
    for (std::size_t i = start; i < opts.size(); ++i) {
      if (opts[i].rank > left) continue;
      if (opts[i].bd) cur.bd_factors.push_back(opts[i].f);
      else cur.a_factors.push_back(opts[i].n);
      rec(i, left - opts[i].rank);
      if (opts[i].bd) cur.bd_factors.pop_back();
      else cur.a_factors.pop_back();
    }
  };
  rec(0, max_rank);
  return out;
}

// ---------------------------------------------------------------------------

void LnuSpec::validate() const {
  if (n.empty()) throw Error(ErrorKind::InvalidSpec, "empty factor list");
  if (nu.size() != n.size()) throw Error(ErrorKind::InvalidSpec, "nu must have one entry per factor");
  int c = 0;
  for (int x : n) {
    if (x < 2) throw Error(ErrorKind::InvalidSpec, "each n_i must be at least 2");
    c = std::gcd(c, x);
  }
  if (c <= 1) throw Error(ErrorKind::InvalidSpec, "gcd of the n_i must exceed 1");
  if (d <= 1 || c % d) throw Error(ErrorKind::InvalidSpec, "d must be a divisor > 1 of the gcd");
  if (nu[0] != 1) throw Error(ErrorKind::InvalidSpec, "nu_1 must be 1");
  for (int x : nu)
    if (x < 1 || x >= d || std::gcd(x, d) != 1)
      throw Error(ErrorKind::InvalidSpec, "each nu_i must be a unit in [1, d)");
}

std::string LnuSpec::str() const {
  std::ostringstream os;
  os << "n=(";
  for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  os << ") d=" << d << " nu=(";
  for (std::size_t i = 0; i < nu.size(); ++i) os << (i ? "," : "") << nu[i];
  os << ")";
  return os.str();
}

namespace {

std::vector<DynkinType> lnu_types(const LnuSpec& spec) {
  std::vector<DynkinType> t;
  for (int x : spec.n) t.push_back(DynkinType::make(Family::A, x - 1));
  return t;
}

}  // namespace

IntVec w_nu(const LnuSpec& spec) {
  spec.validate();
  IntVec w;
  for (std::size_t i = 0; i < spec.n.size(); ++i) {
    const int n = spec.n[i];
    RootFactor f = build_factor(DynkinType::make(Family::A, n - 1));
    IntVec acc(n - 1, Int(0));
    for (int k = 1; k < n; ++k)
      for (int c = 0; c < n - 1; ++c) acc[c] += Int(n - k) * f.cartan(k - 1, c);
    for (auto& x : acc) {
      x *= spec.nu[i];
      if (x % spec.d != 0) throw Error(ErrorKind::ConstructionFailed, "generator is not a weight");
      x /= spec.d;
    }
    w.insert(w.end(), acc.begin(), acc.end());
  }
  return w;
}

IntermediateLattice l_nu(const LnuSpec& spec) {
  spec.validate();
  IntVec res;
  for (std::size_t i = 0; i < spec.n.size(); ++i)
    res.push_back(Int(spec.nu[i]) * (spec.n[i] / spec.d) % spec.n[i]);
  IntermediateLattice l = intermediate(lnu_types(spec), {res});
  IntMatrix gen = l.Q();
  gen.append_row(w_nu(spec));
  if (!span_equal(gen, l.basis))
    throw Error(ErrorKind::ConstructionFailed, "generator and preimage descriptions differ");
  return l;
}

QuotientCheck verify_lnu_quotient(const LnuSpec& spec) {
  spec.validate();
  LnuSpec one = spec;
  std::fill(one.nu.begin(), one.nu.end(), 1);
  IntermediateLattice lv = l_nu(spec), l1 = l_nu(one);
  // T scales block i by nu_i
  auto scale = [&](const IntMatrix& m) {
    IntMatrix out = m;
    for (std::size_t i = 0; i < spec.n.size(); ++i)
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (int c = 0; c < spec.n[i] - 1; ++c) out(r, lv.offsets[i] + c) *= spec.nu[i];
    return out;
  };
  IntMatrix tl1 = scale(l1.basis), q = lv.Q(), tq = scale(q);
  QuotientCheck qc;
  if (!span_contains(lv.basis, tl1)) throw Error(ErrorKind::ConstructionFailed, "T L_1 is not inside L_nu");
  qc.lhs = quotient_invariants(lv.basis, tl1);
  qc.rhs = quotient_invariants(q, tq);
  IntVec diag;
  for (std::size_t i = 1; i < spec.n.size(); ++i)
    for (int k = 0; k < spec.n[i] - 1; ++k) diag.push_back(spec.nu[i]);
  IntMatrix dm(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) dm(i, i) = diag[i];
  qc.expected = cokernel_invariants(dm);
  qc.natural_iso = span_equal(IntMatrix::vstack(q, tl1), lv.basis) &&
                   span_equal(span_intersection(q, tl1), tq);
  // nu_i alpha_{k,i} and w_nu, without the last root of the first block
  IntMatrix bp(0, lv.total_rank);
  for (std::size_t i = 0; i < spec.n.size(); ++i)
    for (int k = 0; k < spec.n[i] - 1; ++k) {
      if (i == 0 && k == spec.n[0] - 2) continue;
      IntVec row = q.row(lv.offsets[i] + k);
      for (auto& x : row) x *= spec.nu[i];
      bp.append_row(row);
    }
  bp.append_row(w_nu(spec));
  qc.basis_generates = bp.rows() == lv.total_rank && span_equal(bp, tl1);
  return qc;
}

BigLatticeCheck lambda_and_N(const LnuSpec& spec) {
  spec.validate();
  const int d = spec.d;
  const int r = static_cast<int>(spec.n.size());
  int n = 0;
  std::vector<int> off;
  for (int x : spec.n) {
    off.push_back(n);
    n += x;
  }
  BigLatticeCheck bc;
  // coordinates are ambient coordinates times d
  auto root = [&](int a) {
    IntVec x(n, Int(0));
    x[a] = d;
    x[a + 1] = -d;
    return x;
  };
  auto weight_sum = [&](int start, int len) {
    // d * (1/d) sum_k (len - k) alpha_k over the block
    IntVec x(n, Int(0));
    for (int k = 1; k < len; ++k) {
      x[start + k - 1] += len - k;
      x[start + k] -= len - k;
    }
    return x;
  };
  IntMatrix lam(0, n);
  for (int j = 0; j + 1 < n; ++j) lam.append_row(root(j));
  lam.append_row(weight_sum(0, n));
  bc.Lambda = hnf_basis(lam);

  IntMatrix l1(0, n);
  IntVec w(n, Int(0));
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k + 1 < spec.n[i]; ++k) l1.append_row(root(off[i] + k));
    IntVec wi = weight_sum(off[i], spec.n[i]);
    for (int c = 0; c < n; ++c) w[c] += wi[c];
  }
  l1.append_row(w);
  bc.phi_L = hnf_basis(l1);

  IntMatrix psi(n, r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < spec.n[i]; ++k) psi(off[i] + k, i) = 1;
  IntMatrix k = kernel_basis(bc.Lambda * psi);
  bc.N = k.rows() ? hnf_basis(k * bc.Lambda) : IntMatrix(0, n);
  bc.phi_equals_N = span_equal(bc.phi_L, bc.N);
  bc.quotient_rank = bc.Lambda.rows() - bc.N.rows();
  bc.quotient_free = quotient_invariants(bc.Lambda, bc.N).factors.empty();
  bc.trivial_action = true;
  for (int i = 0; i < r; ++i)
    for (int a = 0; a + 1 < spec.n[i]; ++a) {
      IntMatrix s = swap_matrix(n, off[i] + a, off[i] + a + 1);
      if (!span_contains(bc.N, bc.Lambda * s - bc.Lambda)) bc.trivial_action = false;
    }
  return bc;
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

ElementarySubgroup elementary_abelian_subgroup(const std::vector<int>& n, int p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  for (int x : n)
    if (x % p) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " does not divide every n_i");
  ElementarySubgroup es;
  es.p = p;
  int total = 0;
  for (int x : n) total += x;
  int off = 0, poff = 0;
  int prank = 0;
  for (int x : n) prank += x - 1;
  for (int x : n) {
    RootFactor f = build_factor(DynkinType::make(Family::A, x - 1));
    for (int c = 0; c < x / p; ++c) {
      IntMatrix amb = IntMatrix::identity(total), loc = IntMatrix::identity(x);
      for (int k = 0; k < p; ++k) {
        int a = c * p + k;
        amb(off + a, off + a) = 0;
        loc(a, a) = 0;
      }
      for (int k = 0; k < p; ++k) {
        int a = c * p + k, b = c * p + (k + 1) % p;
        amb(off + a, off + b) = 1;
        loc(a, b) = 1;
      }
      es.ambient.push_back(amb);
      IntMatrix wloc = ambient_to_weight(f, loc);
      IntMatrix wm = IntMatrix::identity(prank);
      for (int i = 0; i < x - 1; ++i)
        for (int j = 0; j < x - 1; ++j) wm(poff + i, poff + j) = wloc(i, j);
      es.weight.push_back(wm);
    }
    off += x;
    poff += x - 1;
  }
  return es;
}

std::vector<LnuSpec> lnu_grid(int max_total) {
  std::vector<LnuSpec> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int minv, int left) {
    if (!cur.empty()) {
      int c = 0;
      for (int x : cur) c = std::gcd(c, x);
      for (int d = 2; d <= c; ++d) {
        if (c % d) continue;
        std::vector<int> units;
        for (int u = 1; u < d; ++u)
          if (std::gcd(u, d) == 1) units.push_back(u);
        std::vector<int> nu(cur.size(), 1);
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (i == cur.size()) {
            out.push_back(LnuSpec{cur, d, nu});
            return;
          }
          for (int u : units) {
            nu[i] = u;
            fill(i + 1);
          }
        };
        fill(1);
      }
    }
    for (int x = minv; x <= left; ++x) {
      cur.push_back(x);
      rec(x, left - x);
      cur.pop_back();
    }
  };
  rec(2, max_total);
  return out;
}

}  // namespace latkit
