#include "latkit/glattice.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "latkit/errors.hpp"

namespace latkit {

SmallMat SmallMat::identity(int n) {
  SmallMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

SmallMat SmallMat::from_int(const IntMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::InvalidInput, "group matrix is not square");
  SmallMat s(static_cast<int>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) throw Error(ErrorKind::Overflow, "matrix entry too large");
      s(static_cast<int>(i), static_cast<int>(j)) = m(i, j).get_si();
    }
  return s;
}

SmallMat SmallMat::permutation(const std::vector<int>& images) {
  SmallMat m(static_cast<int>(images.size()));
  for (std::size_t i = 0; i < images.size(); ++i) m(static_cast<int>(i), images[i]) = 1;
  return m;
}

SmallMat SmallMat::operator*(const SmallMat& o) const {
  if (n_ != o.n_) throw Error(ErrorKind::InvalidInput, "matrix size mismatch");
  SmallMat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      __int128 s = 0;
      for (int k = 0; k < n_; ++k) s += static_cast<__int128>((*this)(i, k)) * o(k, j);
      if (s > std::numeric_limits<int64_t>::max() || s < std::numeric_limits<int64_t>::min())
        throw Error(ErrorKind::Overflow, "group matrix product overflow");
      r(i, j) = static_cast<int64_t>(s);
    }
  return r;
}

SmallMat SmallMat::transpose() const {
  SmallMat t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool SmallMat::is_identity() const { return *this == identity(n_); }

IntMatrix SmallMat::to_int() const {
  IntMatrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

std::size_t SmallMat::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int64_t v : a_) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {
constexpr std::size_t kTableLimit = 2048;
}

std::shared_ptr<const FinGroup> FinGroup::close(const std::vector<IntMatrix>& gens, std::size_t cap) {
  std::vector<SmallMat> s;
  for (const auto& g : gens) {
    if (!g.is_square()) throw Error(ErrorKind::InvalidInput, "generator is not square");
    if (!is_unimodular(g)) throw Error(ErrorKind::NotUnimodular, "generator " + g.str());
    s.push_back(SmallMat::from_int(g));
  }
  return close_small(s, cap);
}

std::shared_ptr<const FinGroup> FinGroup::trivial(int n) {
  return close_small({SmallMat::identity(n)});
}

std::shared_ptr<const FinGroup> FinGroup::close_small(const std::vector<SmallMat>& gens, std::size_t cap) {
  if (gens.empty()) throw Error(ErrorKind::InvalidInput, "no generators (pass the identity for the trivial group)");
  auto g = std::shared_ptr<FinGroup>(new FinGroup());
  g->dim_ = gens.front().dim();
  for (const auto& x : gens)
    if (x.dim() != g->dim_) throw Error(ErrorKind::InvalidInput, "generators of different sizes");
  SmallMat id = SmallMat::identity(g->dim_);
  g->elems_.push_back(id);
  g->parent_.push_back(0);
  g->via_.push_back(0);
  g->index_.emplace(id, 0);
  std::vector<std::size_t> gen_index(gens.size());
  for (std::size_t i = 0; i < g->elems_.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      SmallMat y = g->elems_[i] * gens[k];
      auto it = g->index_.find(y);
      if (it != g->index_.end()) continue;
      if (g->elems_.size() >= cap)
        throw Error(ErrorKind::GroupTooLarge, "closure exceeds " + std::to_string(cap) + " elements");
      g->index_.emplace(y, g->elems_.size());
      g->elems_.push_back(std::move(y));
      g->parent_.push_back(i);
      g->via_.push_back(k);
    }
  }
  for (const auto& x : gens) g->gens_.push_back(g->index_.at(x));
  g->finish();
  return g;
}

void FinGroup::finish() {
  const std::size_t n = elems_.size();
  if (n <= kTableLimit) {
    table_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table_[i * n + j] = static_cast<uint32_t>(index_.at(elems_[i] * elems_[j]));
  }
  inv_.assign(n, 0);
  ord_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 1, x = i;
    while (x != 0) {
      x = mul(x, i);
      ++k;
    }
    ord_[i] = k;
    inv_[i] = k == 1 ? 0 : power(i, k - 1);
  }
}

std::size_t FinGroup::mul(std::size_t i, std::size_t j) const {
  const std::size_t n = elems_.size();
  if (!table_.empty()) return table_[i * n + j];
  auto it = index_.find(elems_[i] * elems_[j]);
  if (it == index_.end()) throw Error(ErrorKind::InvalidInput, "group not closed");
  return it->second;
}

std::optional<std::size_t> FinGroup::index_of(const SmallMat& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinGroup::power(std::size_t i, std::size_t k) const {
  std::size_t x = 0;
  for (std::size_t t = 0; t < k; ++t) x = mul(x, i);
  return x;
}

bool FinGroup::is_abelian() const {
  for (std::size_t a : gens_)
    for (std::size_t b : gens_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::size_t> FinGroup::subgroup_closure(const std::vector<std::size_t>& gens) const {
  std::vector<char> seen(order(), 0);
  std::vector<std::size_t> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t g : gens) {
      std::size_t y = mul(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> FinGroup::cyclic_subgroups() const {
  std::vector<std::vector<std::size_t>> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t g = 1; g < order(); ++g) {
    auto h = subgroup_closure({g});
    if (seen.insert(h).second) out.push_back(std::move(h));
  }
  return out;
}

std::vector<std::size_t> FinGroup::cyclic_subgroup_generators() const {
  std::vector<std::size_t> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t g = 1; g < order(); ++g)
    if (seen.insert(subgroup_closure({g})).second) out.push_back(g);
  return out;
}

std::vector<std::vector<std::size_t>> FinGroup::all_subgroups() const {
  auto cyc = cyclic_subgroups();
  std::set<std::vector<std::size_t>> found;
  std::vector<std::vector<std::size_t>> out;
  auto add = [&](std::vector<std::size_t> h) {
    if (found.insert(h).second) out.push_back(std::move(h));
  };
  add({0});
  for (const auto& c : cyc) add(c);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& c : cyc) {
      if (std::includes(out[i].begin(), out[i].end(), c.begin(), c.end())) continue;
      std::vector<std::size_t> gens = out[i];
      gens.insert(gens.end(), c.begin(), c.end());
      add(subgroup_closure(gens));
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

GLattice::GLattice(GroupPtr group, const std::vector<IntMatrix>& generator_images) {
  std::vector<SmallMat> s;
  for (const auto& m : generator_images) s.push_back(SmallMat::from_int(m));
  *this = from_small(std::move(group), s);
}

GLattice GLattice::from_small(GroupPtr group, const std::vector<SmallMat>& images) {
  if (images.size() != group->generators().size())
    throw Error(ErrorKind::InvalidInput, "need one action matrix per group generator");
  GLattice l;
  l.group_ = group;
  l.rank_ = images.empty() ? 0 : images.front().dim();
  for (const auto& m : images)
    if (m.dim() != l.rank_) throw Error(ErrorKind::InvalidInput, "action matrices of different sizes");
  const FinGroup& g = *group;
  l.act_.resize(g.order());
  l.act_[0] = SmallMat::identity(l.rank_);
  for (std::size_t i = 1; i < g.order(); ++i) l.act_[i] = l.act_[g.parent(i)] * images[g.via(i)];
  // the tree extension is a homomorphism iff it respects right multiplication by generators
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t k = 0; k < images.size(); ++k)
      if (l.act_[i] * images[k] != l.act_[g.mul(i, g.generators()[k])])
        throw Error(ErrorKind::InvalidInput, "generator images do not define a homomorphism");
  return l;
}

GLattice GLattice::natural(GroupPtr group) {
  std::vector<SmallMat> imgs;
  for (std::size_t k : group->generators()) imgs.push_back(group->element(k));
  return from_small(group, imgs);
}

GLattice GLattice::trivial(GroupPtr group, int rank) {
  std::vector<SmallMat> imgs(group->generators().size(), SmallMat::identity(rank));
  return from_small(group, imgs);
}

std::vector<IntMatrix> GLattice::generator_actions() const {
  std::vector<IntMatrix> out;
  for (std::size_t k : group_->generators()) out.push_back(act_[k].to_int());
  return out;
}

bool GLattice::acts_trivially() const {
  for (std::size_t k : group_->generators())
    if (!act_[k].is_identity()) return false;
  return true;
}

bool GLattice::check_homomorphism() const {
  const FinGroup& g = *group_;
  if (!act_[0].is_identity()) return false;
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j)
      if (act_[i] * act_[j] != act_[g.mul(i, j)]) return false;
  return true;
}

namespace {

SmallMat block_diag(const SmallMat& a, const SmallMat& b) {
  SmallMat m(a.dim() + b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b(i, j);
  return m;
}

// x * A for a row vector of small entries
IntMatrix conj_basis(const IntMatrix& basis, const IntMatrix& basis_inv, const IntMatrix& a) {
  return basis * a * basis_inv;
}

}  // namespace

GLattice direct_sum(const GLattice& a, const GLattice& b, SumMode mode) {
  if (mode == SumMode::SameGroup) {
    if (a.group_ptr() != b.group_ptr())
      throw Error(ErrorKind::GroupMismatch, "same-group direct sum needs one group");
    std::vector<SmallMat> imgs;
    for (std::size_t k : a.group().generators()) imgs.push_back(block_diag(a.action(k), b.action(k)));
    return GLattice::from_small(a.group_ptr(), imgs);
  }
  const FinGroup& ga = a.group();
  const FinGroup& gb = b.group();
  std::vector<SmallMat> gens, imgs;
  for (std::size_t k : ga.generators()) {
    gens.push_back(block_diag(ga.element(k), SmallMat::identity(gb.dim())));
    imgs.push_back(block_diag(a.action(k), SmallMat::identity(b.rank())));
  }
  for (std::size_t k : gb.generators()) {
    gens.push_back(block_diag(SmallMat::identity(ga.dim()), gb.element(k)));
    imgs.push_back(block_diag(SmallMat::identity(a.rank()), b.action(k)));
  }
  auto g = FinGroup::close_small(gens);
  // closure may merge equal generators; rebuild images in generator order
  std::vector<SmallMat> ordered;
  for (std::size_t i = 0; i < g->generators().size(); ++i) ordered.push_back(imgs[i]);
  return GLattice::from_small(g, ordered);
}

GLattice dual(const GLattice& l) {
  std::vector<SmallMat> imgs;
  const FinGroup& g = l.group();
  for (std::size_t k : g.generators()) imgs.push_back(l.action(g.inv(k)).transpose());
  return GLattice::from_small(l.group_ptr(), imgs);
}

GLattice restrict_to(const GLattice& l, const std::vector<std::size_t>& subgroup_generators) {
  const FinGroup& g = l.group();
  std::vector<SmallMat> gens, imgs;
  for (std::size_t s : subgroup_generators) {
    if (s >= g.order()) throw Error(ErrorKind::NotASubgroupElement, "element index out of range");
    gens.push_back(g.element(s));
    imgs.push_back(l.action(s));
  }
  if (gens.empty()) {
    gens.push_back(SmallMat::identity(g.dim()));
    imgs.push_back(SmallMat::identity(l.rank()));
  }
  auto sub = FinGroup::close_small(gens);
  return GLattice::from_small(sub, imgs);
}

GLattice restrict_to_matrices(const GLattice& l, const std::vector<IntMatrix>& subgroup_generators) {
  std::vector<std::size_t> idx;
  for (const auto& m : subgroup_generators) {
    auto i = l.group().index_of(SmallMat::from_int(m));
    if (!i) throw Error(ErrorKind::NotASubgroupElement, "matrix is not an element of the group: " + m.str());
    idx.push_back(*i);
  }
  return restrict_to(l, idx);
}

GLattice invariant_sublattice(const GLattice& l, const IntMatrix& rows) {
  if (rows.cols() != static_cast<std::size_t>(l.rank()))
    throw Error(ErrorKind::InvalidInput, "sublattice rows have the wrong length");
  if (rank(rows) != rows.rows()) throw Error(ErrorKind::InvalidInput, "sublattice rows are dependent");
  std::vector<IntMatrix> imgs;
  for (std::size_t k : l.group().generators()) {
    auto y = solve_left(rows, rows * l.action_int(k));
    if (!y) throw Error(ErrorKind::NotInvariant, "generator moves the span outside itself");
    imgs.push_back(*y);
  }
  if (rows.rows() == 0) {
    std::vector<SmallMat> e(l.group().generators().size(), SmallMat(0));
    return GLattice::from_small(l.group_ptr(), e);
  }
  return GLattice(l.group_ptr(), imgs);
}

GLattice change_basis(const GLattice& l, const IntMatrix& basis) {
  IntMatrix inv = inverse_unimodular(basis);
  std::vector<IntMatrix> imgs;
  for (std::size_t k : l.group().generators()) imgs.push_back(conj_basis(basis, inv, l.action_int(k)));
  return GLattice(l.group_ptr(), imgs);
}

GLattice regular_lattice(GroupPtr group) { return coset_lattice(group, {0}); }

GLattice coset_lattice(GroupPtr group, const std::vector<std::size_t>& subgroup) {
  const FinGroup& g = *group;
  // right cosets H x; label each element by its coset
  std::vector<int> label(g.order(), -1);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (label[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (std::size_t h : subgroup) label[g.mul(h, x)] = c;
  }
  std::vector<SmallMat> imgs;
  for (std::size_t k : g.generators()) {
    std::vector<int> p(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) p[c] = label[g.mul(reps[c], k)];
    imgs.push_back(SmallMat::permutation(p));
  }
  return GLattice::from_small(group, imgs);
}

namespace {

std::optional<std::vector<int>> as_permutation(const SmallMat& m) {
  std::vector<int> p(m.dim(), -1);
  std::vector<char> hit(m.dim(), 0);
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      int64_t v = m(i, j);
      if (v == 0) continue;
      if (v != 1 || p[i] >= 0) return std::nullopt;
      p[i] = j;
    }
    if (p[i] < 0 || hit[p[i]]) return std::nullopt;
    hit[p[i]] = 1;
  }
  return p;
}

}  // namespace

PermutationWitness verify_permutation_basis(const GLattice& l, const IntMatrix& basis) {
  if (basis.rows() != static_cast<std::size_t>(l.rank()) || !is_unimodular(basis))
    throw Error(ErrorKind::NotPermutationInThisBasis, "basis is not a unimodular change of basis");
  GLattice nb = change_basis(l, basis);
  PermutationWitness w{basis, {}};
  for (std::size_t g = 0; g < l.group().order(); ++g) {
    auto p = as_permutation(nb.action(g));
    if (!p) throw Error(ErrorKind::NotPermutationInThisBasis, "some element is not a permutation in this basis");
    w.perm.push_back(*p);
  }
  return w;
}

std::optional<SignedPermWitness> is_sign_permutation(const GLattice& l) {
  SignedPermWitness w;
  for (std::size_t g = 0; g < l.group().order(); ++g) {
    const SmallMat& m = l.action(g);
    std::vector<int> p(m.dim(), -1), s(m.dim(), 0);
    std::vector<char> hit(m.dim(), 0);
    for (int i = 0; i < m.dim(); ++i) {
      for (int j = 0; j < m.dim(); ++j) {
        int64_t v = m(i, j);
        if (v == 0) continue;
        if ((v != 1 && v != -1) || p[i] >= 0) return std::nullopt;
        p[i] = j;
        s[i] = static_cast<int>(v);
      }
      if (p[i] < 0 || hit[p[i]]) return std::nullopt;
      hit[p[i]] = 1;
    }
    w.perm.push_back(p);
    w.sign.push_back(s);
  }
  return w;
}

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& m) {
  if (m.rows() != static_cast<std::size_t>(source.rank()) || m.cols() != static_cast<std::size_t>(target.rank()))
    return false;
  for (std::size_t k : source.group().generators())
    if (m * target.action_int(k) != source.action_int(k) * m) return false;
  return true;
}

EquivariantMap::EquivariantMap(GLattice source, GLattice target, IntMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (src_.group_ptr() != tgt_.group_ptr() && src_.group().order() != tgt_.group().order())
    throw Error(ErrorKind::GroupMismatch, "map between lattices over different groups");
  if (src_.group_ptr() != tgt_.group_ptr()) {
    for (std::size_t g = 0; g < src_.group().order(); ++g)
      if (src_.group().element(g) != tgt_.group().element(g))
        throw Error(ErrorKind::GroupMismatch, "map between lattices over different groups");
  }
  if (!is_equivariant(src_, tgt_, m_)) throw Error(ErrorKind::NotEquivariant, "matrix does not commute with the action");
}

IntMatrix kernel_rows(const EquivariantMap& f) { return kernel_basis(f.matrix()); }

GLattice kernel_lattice(const EquivariantMap& f) {
  return invariant_sublattice(f.source(), kernel_rows(f));
}

IntMatrix image_rows(const EquivariantMap& f) { return hnf_basis(f.matrix()); }

GLattice image_lattice(const EquivariantMap& f) {
  return invariant_sublattice(f.target(), image_rows(f));
}

QuotientReport quotient_invariants(const EquivariantMap& f) {
  IntMatrix img = image_rows(f);
  return quotient_invariants(f.target(), img);
}

QuotientReport quotient_invariants(const GLattice& l, const IntMatrix& sub_rows) {
  QuotientReport r;
  IntMatrix full = IntMatrix::identity(l.rank());
  r.structure = latkit::quotient_invariants(full, sub_rows);
  r.trivial_action = true;
  for (std::size_t k : l.group().generators()) {
    IntMatrix moved = l.action_int(k) - full;
    if (!span_contains(sub_rows, moved)) {
      r.trivial_action = false;
      break;
    }
  }
  return r;
}

}  // namespace latkit
