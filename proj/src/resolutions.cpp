#include "latkit/resolutions.hpp"

#include <functional>

#include "latkit/errors.hpp"

namespace latkit {

const char* shape_name(ResolutionShape s) { return s == ResolutionShape::Left ? "left" : "right"; }

namespace {

std::vector<IntMatrix> images_of(const GLattice& l, const std::vector<std::size_t>& elems) {
  std::vector<IntMatrix> out;
  for (std::size_t e : elems) out.push_back(l.action_int(e));
  return out;
}

bool is_permutation_basis(const GLattice& l, const IntMatrix& basis) {
  try {
    verify_permutation_basis(l, basis);
    return true;
  } catch (const Error&) {
    return false;
  }
}

PositiveResolution verified(PositiveResolution r) {
  auto c = check_resolution(r);
  if (!c.ok()) throw Error(ErrorKind::ConstructionFailed, r.method + ": " + c.failure);
  return r;
}

}  // namespace

ResolutionCheck check_resolution(const PositiveResolution& r) {
  ResolutionCheck c;
  const ExactSeq& s = r.seq;
  auto fail = [&](const char* what) {
    if (c.failure.empty()) c.failure = what;
  };
  c.same_group = s.left.group_ptr() == s.mid.group_ptr() && s.mid.group_ptr() == s.right.group_ptr();
  if (!c.same_group) {
    fail("terms are not over the same group");
    return c;
  }
  const std::size_t a = s.left.rank(), b = s.mid.rank(), d = s.right.rank();
  if (s.iota.rows() != a || s.iota.cols() != b || s.pi.rows() != b || s.pi.cols() != d) {
    fail("map shapes do not match the terms");
    return c;
  }
  c.equivariant = is_equivariant(s.left, s.mid, s.iota) && is_equivariant(s.mid, s.right, s.pi);
  if (!c.equivariant) fail("maps are not equivariant");
  c.injective = rank(s.iota) == a;
  if (!c.injective) fail("iota is not injective");
  c.saturated = c.injective && cokernel_invariants(s.iota.transpose()).factors.empty();
  if (!c.saturated) fail("image of iota is not saturated");
  bool composite_zero = true;
  IntMatrix comp = s.iota * s.pi;
  for (std::size_t i = 0; i < comp.rows(); ++i)
    for (std::size_t j = 0; j < comp.cols(); ++j)
      if (comp(i, j) != 0) composite_zero = false;
  c.exact_middle = composite_zero && span_equal(s.iota, kernel_basis(s.pi));
  if (!c.exact_middle) fail("image of iota differs from kernel of pi");
  c.surjective = cokernel_invariants(s.pi.transpose()).trivial();
  if (!c.surjective) fail("pi is not surjective");
  c.permutation_witnesses = is_permutation_basis(s.mid, r.mid_basis) && is_permutation_basis(r.outer(), r.outer_basis);
  if (!c.permutation_witnesses) fail("permutation witness rejected");
  return c;
}

PositiveResolution dual_resolution(const PositiveResolution& r) {
  PositiveResolution d;
  d.shape = r.shape == ResolutionShape::Left ? ResolutionShape::Right : ResolutionShape::Left;
  d.seq.left = dual(r.seq.right);
  d.seq.mid = dual(r.seq.mid);
  d.seq.right = dual(r.seq.left);
  d.seq.iota = r.seq.pi.transpose();
  d.seq.pi = r.seq.iota.transpose();
  // a permutation basis B of M gives the dual basis (B^-1)^T of M^dual
  d.mid_basis = inverse_unimodular(r.mid_basis).transpose();
  d.outer_basis = inverse_unimodular(r.outer_basis).transpose();
  d.method = r.method + "/dual";
  return verified(d);
}

PositiveResolution pull_back(const PositiveResolution& r, GroupPtr group,
                             const std::vector<std::size_t>& image_of_generator) {
  if (image_of_generator.size() != group->generators().size())
    throw Error(ErrorKind::InvalidInput, "one image per generator is required");
  PositiveResolution p = r;
  p.seq.left = GLattice(group, images_of(r.seq.left, image_of_generator));
  p.seq.mid = GLattice(group, images_of(r.seq.mid, image_of_generator));
  p.seq.right = GLattice(group, images_of(r.seq.right, image_of_generator));
  return verified(p);
}

PositiveResolution sign_perm_resolution(const GLattice& l, const IntMatrix& basis) {
  GLattice nb = change_basis(l, basis);
  auto w = is_sign_permutation(nb);
  if (!w) throw Error(ErrorKind::NotPermutationInThisBasis, "action is not by signed permutations in this basis");
  const int r = l.rank();
  const auto& gens = l.group().generators();
  std::vector<IntMatrix> mid, right;
  for (std::size_t g : gens) {
    IntMatrix m(2 * r, 2 * r), q(r, r);
    for (int i = 0; i < r; ++i) {
      int j = w->perm[g][i];
      int flip = w->sign[g][i] > 0 ? 0 : 1;
      m(2 * i, 2 * j + flip) = 1;
      m(2 * i + 1, 2 * j + 1 - flip) = 1;
      q(i, j) = 1;
    }
    mid.push_back(m);
    right.push_back(q);
  }
  IntMatrix iota(r, 2 * r), pi(2 * r, r);
  for (int i = 0; i < r; ++i) {
    iota(i, 2 * i) = 1;
    iota(i, 2 * i + 1) = -1;
    pi(2 * i, i) = 1;
    pi(2 * i + 1, i) = 1;
  }
  PositiveResolution res;
  res.shape = ResolutionShape::Left;
  res.seq.left = l;
  res.seq.mid = GLattice(l.group_ptr(), mid);
  res.seq.right = GLattice(l.group_ptr(), right);
  res.seq.iota = inverse_unimodular(basis) * iota;
  res.seq.pi = pi;
  res.mid_basis = IntMatrix::identity(2 * r);
  res.outer_basis = IntMatrix::identity(r);
  res.method = "sign_perm";
  return verified(res);
}

PositiveResolution sign_perm_resolution(const GLattice& l) {
  return sign_perm_resolution(l, IntMatrix::identity(l.rank()));
}

PositiveResolution pgl_odd_outer_resolution(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidParameter, "n must be at least 3");
  if (n % 2 == 0) throw Error(ErrorKind::EvenN, "the construction needs n odd");
  const int m = 2 * n + 1;
  // s_i = i, t_i = n + i, u = 2n
  auto perm_matrix = [&](const std::vector<int>& sigma, bool swap) {
    IntMatrix a(m, m);
    for (int i = 0; i < n; ++i) {
      a(i, (swap ? n : 0) + sigma[i]) = 1;
      a(n + i, (swap ? 0 : n) + sigma[i]) = 1;
    }
    a(2 * n, 2 * n) = 1;
    return a;
  };
  std::vector<int> id(n), tr(n), cyc(n);
  for (int i = 0; i < n; ++i) {
    id[i] = tr[i] = i;
    cyc[i] = (i + 1) % n;
  }
  std::swap(tr[0], tr[1]);
  std::vector<std::pair<std::vector<int>, bool>> gdata = {{tr, false}, {cyc, false}, {id, true}};
  std::vector<IntMatrix> mgens;
  for (const auto& [s, sw] : gdata) mgens.push_back(perm_matrix(s, sw));
  GroupPtr group = FinGroup::close(mgens);

  // weight lattice on e_1..e_{n-1}, with e_n = -(e_1 + ... + e_{n-1})
  auto e_row = [&](int j) {
    IntVec v(n - 1, Int(0));
    if (j < n - 1) v[j] = 1;
    else
      for (auto& x : v) x = -1;
    return v;
  };
  std::vector<IntMatrix> pgens;
  for (const auto& [s, sw] : gdata) {
    IntMatrix a(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
      IntVec v = e_row(s[i]);
      for (int c = 0; c < n - 1; ++c) a(i, c) = sw ? Int(-v[c]) : v[c];
    }
    pgens.push_back(a);
  }
  GLattice M(group, mgens), P(group, pgens);
  IntMatrix pi(m, n - 1);
  for (int i = 0; i < n; ++i) {
    IntVec v = e_row(i);
    for (int c = 0; c < n - 1; ++c) {
      pi(i, c) = v[c];
      pi(n + i, c) = -v[c];
    }
  }
  // kernel basis: rho~_i = s_i + t_i + u, sigma~ = sum s + h u, tau~ = sum t + h u
  const int h = (n - 1) / 2;
  IntMatrix kb(n + 2, m);
  for (int i = 0; i < n; ++i) {
    kb(i, i) = 1;
    kb(i, n + i) = 1;
    kb(i, 2 * n) = 1;
    kb(n, i) = 1;
    kb(n + 1, n + i) = 1;
  }
  kb(n, 2 * n) = h;
  kb(n + 1, 2 * n) = h;
  std::vector<IntMatrix> kgens;
  for (const auto& g : mgens) {
    auto y = solve_left(kb, kb * g);
    if (!y) throw Error(ErrorKind::ConstructionFailed, "kernel basis is not invariant");
    kgens.push_back(*y);
  }
  PositiveResolution r;
  r.shape = ResolutionShape::Right;
  r.seq.left = GLattice(group, kgens);
  r.seq.mid = M;
  r.seq.right = P;
  r.seq.iota = kb;
  r.seq.pi = pi;
  r.mid_basis = IntMatrix::identity(m);
  r.outer_basis = IntMatrix::identity(n + 2);
  r.method = "pgl_odd_outer";
  return verified(r);
}

PositiveResolution pgl_odd_outer_root_resolution(int n) { return dual_resolution(pgl_odd_outer_resolution(n)); }

namespace {

// unimodular 2x2 matrices with entries in [-3, 3], in a fixed order
const std::vector<IntMatrix>& short_bases() {
  static const std::vector<IntMatrix> all = [] {
    std::vector<IntMatrix> out;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c)
          for (int d = -3; d <= 3; ++d)
            if (a * d - b * c == 1 || a * d - b * c == -1) out.push_back(IntMatrix{{a, b}, {c, d}});
    return out;
  }();
  return all;
}

bool signed_perm(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int nz = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      if (abs(m(i, j)) != 1) return false;
      ++nz;
    }
    if (nz != 1) return false;
  }
  return true;
}

}  // namespace

PositiveResolution rank_le2_resolution(const GLattice& l) {
  if (l.rank() < 1 || l.rank() > 2) throw Error(ErrorKind::InvalidParameter, "rank must be 1 or 2");
  if (l.rank() == 1 && l.acts_trivially()) {
    // 0 -> Z -> Z^2 -> Z -> 0 with trivial action
    std::vector<IntMatrix> mid(l.group().generators().size(), IntMatrix::identity(2));
    std::vector<IntMatrix> right(l.group().generators().size(), IntMatrix::identity(1));
    PositiveResolution r;
    r.seq.left = l;
    r.seq.mid = GLattice(l.group_ptr(), mid);
    r.seq.right = GLattice(l.group_ptr(), right);
    r.seq.iota = IntMatrix{{1, 0}};
    r.seq.pi = IntMatrix{{0}, {1}};
    r.mid_basis = IntMatrix::identity(2);
    r.outer_basis = IntMatrix::identity(1);
    r.method = "trivial";
    return verified(r);
  }
  if (l.rank() == 1) return sign_perm_resolution(l);

  const auto gens = l.generator_actions();
  for (const auto& b : short_bases()) {
    IntMatrix bi = inverse_unimodular(b);
    bool ok = true;
    for (const auto& g : gens) ok = ok && signed_perm(b * g * bi);
    if (ok) {
      auto r = sign_perm_resolution(l, b);
      r.method = "rank_le2/square";
      return r;
    }
  }
  // hexagonal case: conjugate into the root lattice of A2 under S3 x S2
  const PositiveResolution hex = pgl_odd_outer_root_resolution(3);
  const GLattice& q = hex.seq.left;
  for (const auto& b : short_bases()) {
    IntMatrix bi = inverse_unimodular(b);
    std::vector<std::size_t> img;
    for (const auto& g : gens) {
      auto e = q.group().order();
      std::size_t found = e;
      IntMatrix c = b * g * bi;
      for (std::size_t k = 0; k < e && found == e; ++k)
        if (q.action_int(k) == c) found = k;
      if (found == e) break;
      img.push_back(found);
    }
    if (img.size() != gens.size()) continue;
    PositiveResolution r = pull_back(hex, l.group_ptr(), img);
    r.seq.left = l;
    r.seq.iota = bi * r.seq.iota;
    r.method = "rank_le2/hexagon";
    return verified(r);
  }
  throw Error(ErrorKind::ConstructionFailed, "no short conjugating basis found");
}

namespace {

bool same_span(const IntermediateLattice& l, const IntMatrix& rows) { return span_equal(l.basis, rows); }

// rows: images of the L basis in some coordinate system; returns an L-coordinate
// basis mapping onto the standard basis there, when the map is unimodular
std::optional<IntMatrix> standard_basis_from(const IntermediateLattice& l, const RatMatrix& to_ambient,
                                             const IntMatrix& p_map) {
  RatMatrix e = RatMatrix(l.basis * p_map) * to_ambient;
  if (!e.is_integral()) return std::nullopt;
  IntMatrix ei = e.to_int();
  if (ei.rows() != ei.cols() || !is_unimodular(ei)) return std::nullopt;
  return inverse_unimodular(ei);
}

IntMatrix node_perm(int n, const std::vector<int>& images) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, images[i]) = 1;
  return m;
}

}  // namespace

PositiveResolution block_resolution(const IntermediateLattice& block, std::size_t cap) {
  GLattice l = block.lattice(cap);
  const auto& fs = block.factors;
  if (fs.size() == 2 && fs[0].rank == 1 && fs[1].rank == 1) {
    IntMatrix pair = IntMatrix{{1, 1}, {1, -1}};
    if (!span_equal(block.basis, pair))
      throw Error(ErrorKind::NotOnPositiveList, "pair of rank-one factors without the diagonal residue");
    IntMatrix b(0, 2);
    for (std::size_t i = 0; i < 2; ++i) b.append_row(solve_left(block.basis, IntMatrix::row_vector(pair.row(i)))->row(0));
    auto r = sign_perm_resolution(l, b);
    r.method = "so4_pair";
    return r;
  }
  if (fs.size() != 1) throw Error(ErrorKind::NotOnPositiveList, "blocks are single factors or rank-one pairs");
  const RootFactor& f = fs[0];
  const int n = f.rank;
  const Family fam = f.type.family;
  const bool is_q = same_span(block, f.Q_basis), is_p = same_span(block, f.P_basis);

  const bool d3_root = fam == Family::D && n == 3 && is_q;
  if ((fam == Family::A && is_q && n >= 2) || d3_root) {
    // Q embedded in Z^{n+1} as the zero-sum vectors, then the coordinate sum
    RatMatrix weights = f.weights_ambient;
    if (d3_root) weights = RatMatrix(node_perm(3, {1, 0, 2})) * build_factor(DynkinType::make(Family::A, 3)).weights_ambient;
    RatMatrix amb = RatMatrix(block.basis) * weights;
    IntMatrix iota = amb.to_int();
    IntMatrix ext = iota;
    ext.append_row(IntVec(n + 1, Int(1)));
    auto exti = RatMatrix(ext).inverse();
    std::vector<IntMatrix> mid, right;
    for (const auto& g : l.generator_actions()) {
      IntMatrix img = g * iota;
      img.append_row(IntVec(n + 1, Int(1)));
      RatMatrix pg = *exti * RatMatrix(img);
      if (!pg.is_integral()) throw Error(ErrorKind::ConstructionFailed, "coordinate action is not integral");
      mid.push_back(pg.to_int());
      right.push_back(IntMatrix::identity(1));
    }
    PositiveResolution r;
    r.seq.left = l;
    r.seq.mid = GLattice(l.group_ptr(), mid);
    r.seq.right = GLattice(l.group_ptr(), right);
    r.seq.iota = iota;
    r.seq.pi = IntMatrix(n + 1, 1);
    for (int i = 0; i <= n; ++i) r.seq.pi(i, 0) = 1;
    r.mid_basis = IntMatrix::identity(n + 1);
    r.outer_basis = IntMatrix::identity(1);
    r.method = "augmentation";
    return verified(r);
  }

  // lattices equal to Z^n in the coordinates of a B, C or D realization
  std::vector<std::pair<RatMatrix, IntMatrix>> coords;
  const IntMatrix id = IntMatrix::identity(n);
  if ((fam == Family::B && is_q) || (fam == Family::C && is_p) || (fam == Family::D && n >= 4) ||
      (fam == Family::D && n == 3 && !is_q))
    coords.push_back({f.weights_ambient, id});
  if (fam == Family::D && n == 4) {
    // triality images of the coordinate lattice
    coords.push_back({f.weights_ambient, node_perm(4, {2, 1, 0, 3})});
    coords.push_back({f.weights_ambient, node_perm(4, {3, 1, 2, 0})});
  }
  if (fam == Family::A && n == 3) {
    // A3 = D3 with the middle node first
    RootFactor d3 = build_factor(DynkinType::make(Family::D, 3));
    coords.push_back({d3.weights_ambient, node_perm(3, {1, 0, 2})});
  }
  for (const auto& [amb, pm] : coords) {
    auto b = standard_basis_from(block, amb, pm);
    if (!b) continue;
    auto r = sign_perm_resolution(l, *b);
    r.method = "sign_perm/" + f.type.name();
    return r;
  }
  if (n <= 2) return rank_le2_resolution(l);
  throw Error(ErrorKind::NotOnPositiveList, f.type.name() + " with this residue is not on the positive list");
}

}  // namespace latkit
