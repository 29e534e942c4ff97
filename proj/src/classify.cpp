#include "latkit/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "latkit/constructions.hpp"
#include "latkit/errors.hpp"

namespace latkit {

std::string LatticeSpec::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << factors[i].name();
  os << "] S=<";
  for (std::size_t k = 0; k < S.size(); ++k) {
    os << (k ? "," : "") << "(";
    for (std::size_t i = 0; i < S[k].size(); ++i) os << (i ? "," : "") << S[k][i];
    os << ")";
  }
  os << ">";
  return os.str();
}

const char* factor_lattice_name(FactorLattice k) {
  switch (k) {
    case FactorLattice::Q: return "root";
    case FactorLattice::P: return "weight";
    case FactorLattice::Coordinate: return "coordinate";
    case FactorLattice::Middle: return "middle";
    case FactorLattice::HalfSpin: return "half_spin";
    case FactorLattice::Other: return "other";
  }
  return "?";
}

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::PositiveDecomposition: return "positive_decomposition";
    case CertKind::NegativeSha: return "negative_sha";
    case CertKind::NegativeByReduction: return "negative_by_reduction";
    case CertKind::CitedLeaf: return "cited_leaf";
  }
  return "?";
}

bool Certificate::machine_verified() const {
  switch (kind) {
    case CertKind::PositiveDecomposition:
    case CertKind::NegativeSha: return true;
    case CertKind::NegativeByReduction: return child && child->machine_verified();
    case CertKind::CitedLeaf: return false;
  }
  return false;
}

Normalized normalize(const LatticeSpec& input) {
  if (input.factors.empty()) throw Error(ErrorKind::InvalidInput, "factor list is empty");
  Normalized out;
  std::vector<std::size_t> comps;
  for (const auto& t : input.factors) comps.push_back(build_factor(t).components.size());
  const std::size_t width = std::accumulate(comps.begin(), comps.end(), std::size_t(0));
  for (const auto& s : input.S)
    if (s.size() != width)
      throw Error(ErrorKind::InvalidResidue, "residue tuple has " + std::to_string(s.size()) + " entries, expected " +
                                                 std::to_string(width));
  const DynkinType a1 = DynkinType::make(Family::A, 1);
  for (const auto& t : input.factors) {
    std::vector<std::size_t> idx;
    if (t.family == Family::D && t.n == 2) {
      idx = {out.spec.factors.size(), out.spec.factors.size() + 1};
      out.spec.factors.push_back(a1);
      out.spec.factors.push_back(a1);
    } else {
      idx = {out.spec.factors.size()};
      out.spec.factors.push_back(t);
    }
    out.from_input.push_back(idx);
  }
  for (const auto& s : input.S) {
    IntVec r;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < input.factors.size(); ++i) {
      const auto& t = input.factors[i];
      if (t.family == Family::D && t.n == 2) {
        // a * (w1 + w2) + b * w1 on the two A1 weights
        Int a = s[pos], b = s[pos + 1];
        Int x = (a + b) % 2, y = a % 2;
        if (x < 0) x += 2;
        if (y < 0) y += 2;
        r.push_back(x);
        r.push_back(y);
      } else {
        for (std::size_t c = 0; c < comps[i]; ++c) r.push_back(s[pos + c]);
      }
      pos += comps[i];
    }
    out.spec.S.push_back(r);
  }
  return out;
}

namespace {

std::vector<std::size_t> coords_of(const IntermediateLattice& l, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> cols;
  for (std::size_t a : subset)
    for (int c = 0; c < l.factors[a].rank; ++c) cols.push_back(l.offsets[a] + c);
  return cols;
}

std::vector<std::size_t> all_but(std::size_t m, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m; ++i)
    if (i != skip) out.push_back(i);
  return out;
}

bool is_split(const IntermediateLattice& l, const std::vector<std::size_t>& subset) {
  std::vector<char> keep(l.total_rank, 0);
  for (std::size_t c : coords_of(l, subset)) keep[c] = 1;
  IntMatrix proj = l.basis;
  for (std::size_t r = 0; r < proj.rows(); ++r)
    for (std::size_t c = 0; c < proj.cols(); ++c)
      if (!keep[c]) proj(r, c) = 0;
  return span_contains(l.basis, proj);
}

// minimal nonempty sets A with L = (L meet P_A) + (L meet P_A'), in factor order
std::vector<std::vector<std::size_t>> split_atoms(const IntermediateLattice& l) {
  const std::size_t m = l.factors.size();
  std::vector<std::size_t> remaining(m);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<std::size_t>> atoms;
  while (!remaining.empty()) {
    const std::size_t first = remaining.front();
    std::vector<std::size_t> rest(remaining.begin() + 1, remaining.end());
    std::vector<std::size_t> found;
    for (std::size_t k = 0; k <= rest.size() && found.empty(); ++k) {
      if (k == rest.size()) {
        found = remaining;
        break;
      }
      std::vector<char> pick(rest.size(), 0);
      std::fill(pick.begin(), pick.begin() + k, 1);
      do {
        std::vector<std::size_t> a = {first};
        for (std::size_t t = 0; t < rest.size(); ++t)
          if (pick[t]) a.push_back(rest[t]);
        std::sort(a.begin(), a.end());
        if (is_split(l, a)) {
          found = a;
          break;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    atoms.push_back(found);
    std::vector<std::size_t> next;
    for (std::size_t x : remaining)
      if (std::find(found.begin(), found.end(), x) == found.end()) next.push_back(x);
    remaining = next;
  }
  return atoms;
}

IntMatrix node_perm(int n, const std::vector<int>& images) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, images[i]) = 1;
  return m;
}

bool is_rank_one(const RootFactor& f) { return f.rank == 1; }

}  // namespace

LatticeSpec spec_of(const IntermediateLattice& l) {
  LatticeSpec s;
  for (const auto& f : l.factors) s.factors.push_back(f.type);
  s.S = l.S_generators;
  return s;
}

IntermediateLattice sublattice(const IntermediateLattice& l, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw Error(ErrorKind::InvalidInput, "empty factor subset");
  const auto cols = coords_of(l, subset);
  IntMatrix pa(cols.size(), l.total_rank);
  for (std::size_t k = 0; k < cols.size(); ++k) pa(k, cols[k]) = 1;
  IntMatrix proj = span_intersection(l.basis, pa).select_cols(cols);
  std::vector<RootFactor> fs;
  for (std::size_t a : subset) fs.push_back(l.factors[a]);
  IntermediateLattice base = intermediate(fs, {});
  std::vector<IntVec> gens;
  for (std::size_t r = 0; r < proj.rows(); ++r) {
    IntVec res = base.residue_of(proj.row(r));
    if (!vec_is_zero(res)) gens.push_back(res);
  }
  IntermediateLattice out = intermediate(fs, gens);
  if (!span_equal(out.basis, proj)) throw Error(ErrorKind::ConstructionFailed, "sublattice residues do not match");
  return out;
}

FactorLattice factor_lattice(const RootFactor& f, const IntMatrix& basis) {
  if (span_equal(basis, f.Q_basis)) return FactorLattice::Q;
  if (span_equal(basis, f.P_basis)) return FactorLattice::P;
  auto with = [&](const IntVec& r) { return span_equal(basis, intermediate({f}, {r}).basis); };
  if (f.type.family == Family::D && f.coordinate_residue && with(*f.coordinate_residue))
    return FactorLattice::Coordinate;
  if (f.type == DynkinType::make(Family::A, 3) && with(IntVec{Int(2)})) return FactorLattice::Middle;
  if (f.type == DynkinType::make(Family::D, 4) && (with(IntVec{Int(0), Int(1)}) || with(IntVec{Int(1), Int(1)})))
    return FactorLattice::HalfSpin;
  return FactorLattice::Other;
}

bool on_positive_list(const DynkinType& t, FactorLattice k) {
  const int n = t.rank();
  switch (t.family) {
    case Family::A:
      if (n <= 2) return true;
      return k == FactorLattice::Q || (n == 3 && k == FactorLattice::Middle);
    case Family::B: return n <= 2 || k == FactorLattice::Q;
    case Family::C: return n <= 2 || k == FactorLattice::P;
    case Family::D:
      if (n == 2) return k != FactorLattice::Other;
      if (n == 3) return k == FactorLattice::Q || k == FactorLattice::Coordinate;
      if (n == 4) return k == FactorLattice::Coordinate || k == FactorLattice::HalfSpin;
      return k == FactorLattice::Coordinate;
    case Family::G2: return true;
  }
  return false;
}

PairMatching pair_matching(const IntermediateLattice& l) {
  PairMatching pm;
  const std::size_t m = l.factors.size();
  std::vector<char> root(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (is_rank_one(l.factors[i])) root[i] = sublattice(l, {i}).basis == l.factors[i].Q_basis ||
                                              span_equal(sublattice(l, {i}).basis, l.factors[i].Q_basis);
  std::vector<int> used(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!root[i] || !root[j]) continue;
      IntermediateLattice s = sublattice(l, {i, j});
      if (span_equal(s.basis, s.Q())) continue;
      pm.pairs.push_back({i, j});
      if (++used[i] > 1 || ++used[j] > 1) pm.consistent = false;
    }
  return pm;
}

namespace {

struct Ctx {
  const ClassifyOptions& opt;
};

Certificate base_cert(const IntermediateLattice& l, CertKind k) {
  Certificate c;
  c.kind = k;
  c.lattice = spec_of(l);
  return c;
}

Certificate reduction(const IntermediateLattice& l, const std::string& step, const std::vector<std::size_t>& subset,
                      Certificate child) {
  Certificate c = base_cert(l, CertKind::NegativeByReduction);
  c.step = step;
  c.subset = subset;
  c.child = std::make_shared<Certificate>(std::move(child));
  return c;
}

Certificate cited(const IntermediateLattice& l, const std::string& reason) {
  Certificate c = base_cert(l, CertKind::CitedLeaf);
  c.reason = reason;
  return c;
}

std::optional<Certificate> sha_witness(const IntermediateLattice& l, const std::vector<IntMatrix>& gens,
                                       const std::string& source, const ClassifyOptions& opt) {
  Certificate c = base_cert(l, CertKind::NegativeSha);
  for (const auto& g : gens) {
    auto w = l.weyl_word(g);
    if (!w) throw Error(ErrorKind::ConstructionFailed, "witness subgroup is not inside the Weyl group");
    c.words.push_back(*w);
  }
  c.subgroup = gens;
  c.sha2 = sha2(l.restricted(gens, opt.max_group_order), opt.cohomology);
  c.witness = source;
  if (c.sha2.trivial()) return std::nullopt;
  return c;
}

// Klein four subgroups of W, tried in element order
std::optional<Certificate> klein_search(const IntermediateLattice& l, const ClassifyOptions& opt,
                                        std::vector<std::string>& notes) {
  GroupPtr w;
  try {
    w = l.weyl_group(std::min<std::size_t>(opt.max_group_order, 5000));
  } catch (const Error& e) {
    notes.push_back("Klein search skipped: " + std::string(e.what()));
    return std::nullopt;
  }
  std::vector<std::size_t> inv;
  for (std::size_t g = 1; g < w->order(); ++g)
    if (w->element_order(g) == 2) inv.push_back(g);
  std::set<std::array<std::size_t, 3>> seen;
  std::size_t tried = 0;
  for (std::size_t x = 0; x < inv.size(); ++x)
    for (std::size_t y = x + 1; y < inv.size(); ++y) {
      std::size_t a = inv[x], b = inv[y];
      if (w->mul(a, b) != w->mul(b, a)) continue;
      std::array<std::size_t, 3> key = {a, b, w->mul(a, b)};
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;
      if (++tried > opt.klein_search_limit) {
        notes.push_back("Klein search stopped after " + std::to_string(opt.klein_search_limit) + " subgroups");
        return std::nullopt;
      }
      try {
        auto c = sha_witness(l, {w->element(a).to_int(), w->element(b).to_int()}, "klein_search", opt);
        if (c) return c;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
      }
    }
  notes.push_back("no Klein subgroup with nonzero Sha^2 (" + std::to_string(tried) + " tried)");
  return std::nullopt;
}

Certificate negative_simple(const IntermediateLattice& l, const ClassifyOptions& opt) {
  std::vector<std::string> notes;
  if (auto c = klein_search(l, opt, notes)) return *c;
  Certificate c = cited(l, "simple_factor_not_on_list");
  c.notes = notes;
  return c;
}

Certificate positive_block(const IntermediateLattice& l, const ClassifyOptions& opt) {
  Certificate c = base_cert(l, CertKind::PositiveDecomposition);
  BlockCert b;
  b.kind = l.factors.size() == 2 ? BlockKind::So4Pair : BlockKind::Simple;
  for (std::size_t i = 0; i < l.factors.size(); ++i) b.indices.push_back(i);
  b.resolution = block_resolution(l, opt.max_group_order);
  c.blocks.push_back(std::move(b));
  return c;
}

// A block of the index-two sublattice, with the realization used for the involutions
struct OVBlock {
  bool bd = true;
  Family family = Family::B;  // B or D when bd
  int size = 0;               // l, or n for A_{2n-1}
  std::vector<std::size_t> factors;
  RootFactor target;
  IntMatrix pm;  // source P coordinates -> target P coordinates
};

std::optional<OVBlock> ov_block(const IntermediateLattice& l, const std::vector<std::size_t>& idx) {
  OVBlock b;
  b.factors = idx;
  if (idx.size() == 2) {
    b.family = Family::D;
    b.size = 2;
    b.target = build_factor(DynkinType::make(Family::D, 2));
    b.pm = IntMatrix::identity(2);
    return b;
  }
  const RootFactor& f = l.factors[idx[0]];
  FactorLattice k = factor_lattice(f, sublattice(l, idx).basis);
  const Family fam = f.type.family;
  const int n = f.rank;
  auto set = [&](bool bd, Family tf, int size, const DynkinType& t, IntMatrix pm) {
    b.bd = bd;
    b.family = tf;
    b.size = size;
    b.target = build_factor(t);
    b.pm = std::move(pm);
    return b;
  };
  if (n == 1 && k == FactorLattice::Q) return set(true, Family::B, 1, DynkinType::make(Family::B, 1), IntMatrix::identity(1));
  if (fam == Family::B && k == FactorLattice::Q) return set(true, Family::B, n, f.type, IntMatrix::identity(n));
  if (fam == Family::C && n == 2 && k == FactorLattice::Q)
    return set(true, Family::B, 2, DynkinType::make(Family::B, 2), node_perm(2, {1, 0}));
  if (fam == Family::D && n >= 3 && k == FactorLattice::Coordinate)
    return set(true, Family::D, n, f.type, IntMatrix::identity(n));
  if (fam == Family::D && n == 4 && k == FactorLattice::HalfSpin) {
    bool third = span_equal(sublattice(l, idx).basis, intermediate({f}, {IntVec{Int(0), Int(1)}}).basis);
    return set(true, Family::D, 4, f.type, third ? node_perm(4, {2, 1, 0, 3}) : node_perm(4, {3, 1, 2, 0}));
  }
  if (fam == Family::A && n == 3 && k == FactorLattice::Middle)
    return set(true, Family::D, 3, DynkinType::make(Family::D, 3), node_perm(3, {1, 0, 2}));
  if (fam == Family::A && n % 2 == 1 && n >= 3 && k == FactorLattice::Q)
    return set(false, Family::A, (n + 1) / 2, f.type, IntMatrix::identity(n));
  if (fam == Family::D && n == 3 && k == FactorLattice::Q)
    return set(false, Family::A, 2, DynkinType::make(Family::A, 3), node_perm(3, {1, 0, 2}));
  return std::nullopt;
}

bool first_factor_candidate(const RootFactor& f, FactorLattice k) {
  const Family fam = f.type.family;
  if (f.rank == 1) return k == FactorLattice::Q;
  if (fam == Family::B) return k == FactorLattice::Q;
  if (fam == Family::C && f.rank == 2) return k == FactorLattice::Q;
  if (fam == Family::D) return k == FactorLattice::Coordinate || k == FactorLattice::HalfSpin;
  if (fam == Family::A && f.rank == 3) return k == FactorLattice::Middle;
  return false;
}

// involutions from the one-vector construction, on P coordinates of l
std::optional<Certificate> one_vector_witness(const IntermediateLattice& l, std::vector<OVBlock> blocks,
                                              const ClassifyOptions& opt, std::vector<std::string>& notes) {
  std::stable_partition(blocks.begin(), blocks.end(), [](const OVBlock& b) { return b.bd; });
  Section2Spec spec;
  for (const auto& b : blocks) {
    if (b.bd) spec.bd_factors.push_back({b.family, b.size});
    else spec.a_factors.push_back(b.size);
  }
  bool all_small = spec.a_factors.empty();
  for (const auto& f : spec.bd_factors) all_small = all_small && f.l <= 2 && (f.family == Family::D || f.l == 1);
  const bool boundary = !spec.hypotheses_hold() && all_small && spec.bd_factors.size() >= 3;
  if (!spec.hypotheses_hold() && !boundary) {
    notes.push_back("one-vector form " + spec.str() + " is outside the construction's range");
    return std::nullopt;
  }
  Partition3 part = partition(spec, boundary);
  KleinEmbedding emb = klein_embedding(spec, part);
  std::vector<IntMatrix> gens;
  for (int k = 0; k < 2; ++k) {
    IntMatrix jp = IntMatrix::identity(l.total_rank);
    std::size_t pos = 0;
    for (const auto& b : blocks) {
      const std::size_t w = b.bd ? b.size : 2 * b.size;
      std::vector<std::size_t> r(w);
      std::iota(r.begin(), r.end(), pos);
      IntMatrix amb = emb.j[k].select_rows(r).select_cols(r);
      IntMatrix x = b.pm * ambient_to_weight(b.target, amb) * b.pm.transpose();
      std::vector<std::size_t> pc;
      for (std::size_t f : b.factors)
        for (int c = 0; c < l.factors[f].rank; ++c) pc.push_back(l.offsets[f] + c);
      for (std::size_t i = 0; i < pc.size(); ++i)
        for (std::size_t j = 0; j < pc.size(); ++j) jp(pc[i], pc[j]) = x(i, j);
      pos += w;
    }
    gens.push_back(jp);
  }
  auto c = sha_witness(l, gens, "one_vector", opt);
  if (c) {
    c->notes.push_back("one-vector form " + spec.str() + (boundary ? " (boundary partition)" : ""));
    return c;
  }
  notes.push_back("one-vector involutions give trivial Sha^2");
  return std::nullopt;
}

int smallest_prime(int d) {
  for (int p = 2; p * p <= d; ++p)
    if (d % p == 0) return p;
  return d;
}

Certificate classify_rec(const IntermediateLattice& l, const ClassifyOptions& opt);

Certificate type_a_branch(const IntermediateLattice& l, const ClassifyOptions& opt) {
  const std::size_t m = l.factors.size();
  for (std::size_t i = 0; i < m && m > 1; ++i) {
    auto sub_idx = all_but(m, i);
    IntermediateLattice sub = sublattice(l, sub_idx);
    if (span_equal(sub.basis, sub.Q())) continue;
    Certificate child = classify_rec(sub, opt);
    if (child.positive()) throw Error(ErrorKind::ConstructionFailed, "type A reduction reached a positive piece");
    return reduction(l, "intersection", sub_idx, std::move(child));
  }
  // S is cyclic and meets no coordinate subgroup
  std::vector<std::string> notes;
  const Int index = quotient_invariants(l.basis, l.Q()).order();
  notes.push_back("cyclic subgroup of order " + index.get_str() + " meeting every factor trivially");
  bool all_a = true;
  std::vector<int> ns;
  for (const auto& f : l.factors) {
    all_a = all_a && f.type.family == Family::A;
    ns.push_back(f.rank + 1);
  }
  if (all_a && index > 1) {
    const int p = smallest_prime(static_cast<int>(index.get_si()));
    try {
      ElementarySubgroup es = elementary_abelian_subgroup(ns, p);
      auto c = sha_witness(l, es.weight, "elementary_abelian", opt);
      if (c) return *c;
      notes.push_back("Sha^2 on the elementary abelian " + std::to_string(p) + "-subgroup of block cycles is trivial");
    } catch (const Error& e) {
      notes.push_back(std::string("elementary abelian attempt: ") + e.what());
    }
  }
  Certificate c = cited(l, "cyclic_diagonal_type_A");
  c.notes = notes;
  return c;
}

Certificate classify_rec(const IntermediateLattice& l, const ClassifyOptions& opt) {
  const std::size_t m = l.factors.size();
  std::vector<FactorLattice> kinds;
  for (std::size_t i = 0; i < m; ++i) kinds.push_back(factor_lattice(l.factors[i], sublattice(l, {i}).basis));

  for (std::size_t i = 0; i < m; ++i) {
    if (on_positive_list(l.factors[i].type, kinds[i])) continue;
    if (m == 1) return negative_simple(l, opt);
    return reduction(l, "intersection", {i}, negative_simple(sublattice(l, {i}), opt));
  }

  auto atoms = split_atoms(l);
  if (atoms.size() > 1) {
    Certificate pos = base_cert(l, CertKind::PositiveDecomposition);
    for (const auto& a : atoms) {
      Certificate c = classify_rec(sublattice(l, a), opt);
      if (!c.positive()) return reduction(l, "split", a, std::move(c));
      for (auto& b : c.blocks) {
        for (auto& x : b.indices) x = a[x];
        pos.blocks.push_back(std::move(b));
      }
    }
    return pos;
  }

  if (m == 1) return positive_block(l, opt);
  if (m == 2 && is_rank_one(l.factors[0]) && is_rank_one(l.factors[1])) return positive_block(l, opt);

  std::size_t first = m;
  for (std::size_t i = 0; i < m && first == m; ++i)
    if (first_factor_candidate(l.factors[i], kinds[i])) first = i;
  if (first == m) return type_a_branch(l, opt);

  auto rest = all_but(m, first);
  Certificate child = classify_rec(sublattice(l, rest), opt);
  if (!child.positive()) return reduction(l, "kernel_of_projection", rest, std::move(child));

  // L is generated by the index-two sublattice and one vector
  std::vector<OVBlock> blocks;
  std::vector<std::vector<std::size_t>> groups = {{first}};
  for (const auto& b : child.blocks) {
    std::vector<std::size_t> g;
    for (std::size_t x : b.indices) g.push_back(rest[x]);
    groups.push_back(g);
  }
  std::sort(groups.begin(), groups.end());
  for (const auto& g : groups) {
    auto b = ov_block(l, g);
    if (!b) throw Error(ErrorKind::ConstructionFailed, "unexpected block in an unsplittable lattice");
    blocks.push_back(*b);
  }
  std::vector<std::string> notes;
  if (auto c = one_vector_witness(l, blocks, opt, notes)) return *c;
  bool all_rank_one = std::all_of(l.factors.begin(), l.factors.end(), is_rank_one);
  if (all_rank_one) {
    // the Weyl group is (Z/2)^m here; try it whole
    try {
      std::vector<IntMatrix> gens = l.weyl_generators;
      if (auto c = sha_witness(l, gens, "weyl_group", opt)) return *c;
      notes.push_back("Sha^2 of the full Weyl group is trivial");
    } catch (const Error& e) {
      notes.push_back(std::string("Weyl group attempt: ") + e.what());
    }
    Certificate c = cited(l, "rank_one_factors");
    c.notes = notes;
    return c;
  }
  throw Error(ErrorKind::ConstructionFailed, "no witness for an unsplittable lattice in one-vector form");
}

}  // namespace

Certificate classify_lattice(const IntermediateLattice& l, const ClassifyOptions& opt) { return classify_rec(l, opt); }

Verdict classify(const LatticeSpec& input, const ClassifyOptions& opt) {
  Normalized n = normalize(input);
  Verdict v;
  v.input = input;
  v.certificate = classify_rec(n.spec.build(), opt);
  v.quasi_permutation = v.certificate.positive();
  return v;
}

// ---------------------------------------------------------------------------

namespace {

bool same_lattice(const IntermediateLattice& a, const IntermediateLattice& b) {
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (!(a.factors[i].type == b.factors[i].type)) return false;
  return span_equal(a.basis, b.basis);
}

bool unsplittable(const IntermediateLattice& l) { return split_atoms(l).size() == 1; }

bool check_cited(const IntermediateLattice& l, const std::string& reason, std::vector<std::string>& log) {
  const std::size_t m = l.factors.size();
  if (reason == "simple_factor_not_on_list") {
    bool ok = m == 1 && !on_positive_list(l.factors[0].type, factor_lattice(l.factors[0], l.basis));
    if (!ok) log.push_back("cited leaf: lattice is not a single factor off the positive list");
    return ok;
  }
  if (reason == "cyclic_diagonal_type_A") {
    bool ok = !span_equal(l.basis, l.Q());
    for (std::size_t i = 0; i < m; ++i) {
      const auto& f = l.factors[i];
      bool type_ok = (f.type.family == Family::A && f.rank >= 2) || (f.type.family == Family::D && f.rank == 3);
      IntermediateLattice own = sublattice(l, {i});
      ok = ok && type_ok && span_equal(own.basis, own.Q());
      if (m > 1) {
        IntermediateLattice rest = sublattice(l, all_but(m, i));
        ok = ok && span_equal(rest.basis, rest.Q());
      }
    }
    if (!ok) log.push_back("cited leaf: lattice is not a cyclic diagonal over type A factors");
    return ok;
  }
  if (reason == "rank_one_factors") {
    bool ok = m >= 3 && std::all_of(l.factors.begin(), l.factors.end(), is_rank_one) && unsplittable(l);
    if (!ok) log.push_back("cited leaf: lattice is not an unsplittable sum of three or more rank-one factors");
    return ok;
  }
  log.push_back("cited leaf: unknown reason '" + reason + "'");
  return false;
}

bool verify_rec(const Certificate& c, const ClassifyOptions& opt, std::vector<std::string>& log, int depth) {
  IntermediateLattice l;
  try {
    l = c.lattice.build();
  } catch (const Error& e) {
    log.push_back(std::string("lattice does not build: ") + e.what());
    return false;
  }
  const std::string at = std::string(static_cast<std::size_t>(depth) * 2, ' ') + c.lattice.str() + ": ";
  const std::size_t m = l.factors.size();
  switch (c.kind) {
    case CertKind::PositiveDecomposition: {
      std::vector<int> seen(m, 0);
      IntMatrix sum(0, l.total_rank);
      for (const auto& b : c.blocks) {
        if (b.indices.empty()) {
          log.push_back(at + "empty block");
          return false;
        }
        for (std::size_t i : b.indices) {
          if (i >= m || seen[i]++) {
            log.push_back(at + "blocks do not partition the factors");
            return false;
          }
        }
        IntermediateLattice sub = sublattice(l, b.indices);
        const auto cols = coords_of(l, b.indices);
        for (std::size_t r = 0; r < sub.basis.rows(); ++r) {
          IntVec row(l.total_rank, Int(0));
          for (std::size_t k = 0; k < cols.size(); ++k) row[cols[k]] = sub.basis(r, k);
          sum.append_row(row);
        }
        if (b.kind == BlockKind::So4Pair) {
          bool ok = b.indices.size() == 2 && is_rank_one(sub.factors[0]) && is_rank_one(sub.factors[1]) &&
                    span_equal(sub.basis, IntMatrix{{1, 1}, {1, -1}});
          if (!ok) {
            log.push_back(at + "pair block is not the diagonal lattice of two rank-one factors");
            return false;
          }
        } else if (b.indices.size() != 1 ||
                   !on_positive_list(sub.factors[0].type, factor_lattice(sub.factors[0], sub.basis))) {
          log.push_back(at + "simple block is not on the positive list");
          return false;
        }
        auto rc = check_resolution(b.resolution);
        if (!rc.ok()) {
          log.push_back(at + "block resolution fails: " + rc.failure);
          return false;
        }
        const GLattice& rl = b.resolution.lattice();
        const auto& gens = rl.group().generators();
        bool match = gens.size() == sub.weyl_generators.size() && rl.rank() == static_cast<int>(sub.basis.rows());
        GLattice want = sub.lattice(opt.max_group_order);
        for (std::size_t k = 0; match && k < gens.size(); ++k)
          match = rl.group().element(gens[k]).to_int() == sub.weyl_generators[k] &&
                  rl.action_int(gens[k]) == want.action_int(want.group().generators()[k]);
        if (!match) {
          log.push_back(at + "resolution is not over the block lattice");
          return false;
        }
      }
      if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) {
        log.push_back(at + "blocks do not cover the factors");
        return false;
      }
      if (!span_equal(sum, l.basis)) {
        log.push_back(at + "lattice is not the sum of its blocks");
        return false;
      }
      log.push_back(at + "positive decomposition verified (" + std::to_string(c.blocks.size()) + " blocks)");
      return true;
    }
    case CertKind::NegativeSha: {
      if (c.subgroup.empty() || c.words.size() != c.subgroup.size()) {
        log.push_back(at + "missing subgroup or words");
        return false;
      }
      for (std::size_t k = 0; k < c.subgroup.size(); ++k) {
        const auto& w = c.words[k];
        for (int x : w)
          if (x < 0 || static_cast<std::size_t>(x) >= l.weyl_generators.size()) {
            log.push_back(at + "Weyl word out of range");
            return false;
          }
        if (l.word_matrix(w) != c.subgroup[k]) {
          log.push_back(at + "subgroup generator differs from its Weyl word");
          return false;
        }
      }
      AbelianInvariants s = sha2(l.restricted(c.subgroup, opt.max_group_order), opt.cohomology);
      if (s.trivial() || !(s == c.sha2)) {
        log.push_back(at + "recomputed Sha^2 " + s.str() + " does not match " + c.sha2.str());
        return false;
      }
      log.push_back(at + "Sha^2 = " + s.str() + " recomputed on a subgroup of order " +
                    std::to_string(FinGroup::close(c.subgroup)->order()));
      return true;
    }
    case CertKind::NegativeByReduction: {
      if (!c.child || c.subset.empty()) {
        log.push_back(at + "reduction without child");
        return false;
      }
      std::set<std::size_t> uniq(c.subset.begin(), c.subset.end());
      if (uniq.size() != c.subset.size() || *uniq.rbegin() >= m || (uniq.size() == m && m > 1)) {
        log.push_back(at + "reduction subset is not a proper subset of the factors");
        return false;
      }
      if (c.child->positive()) {
        log.push_back(at + "reduction child is positive");
        return false;
      }
      IntermediateLattice sub = sublattice(l, c.subset);
      IntermediateLattice claimed;
      try {
        claimed = c.child->lattice.build();
      } catch (const Error& e) {
        log.push_back(at + "child lattice does not build");
        return false;
      }
      if (!same_lattice(sub, claimed)) {
        log.push_back(at + "child lattice is not the intersection with the chosen factors");
        return false;
      }
      if (c.step == "split" && !is_split(l, c.subset)) {
        log.push_back(at + "claimed split does not hold");
        return false;
      }
      log.push_back(at + "reduction '" + c.step + "' replayed");
      return verify_rec(*c.child, opt, log, depth + 1);
    }
    case CertKind::CitedLeaf: {
      bool ok = check_cited(l, c.reason, log);
      if (ok) log.push_back(at + "cited leaf '" + c.reason + "' (not machine-verified)");
      return ok;
    }
  }
  return false;
}

}  // namespace

VerifyReport verify_certificate(const Certificate& c, const ClassifyOptions& opt) {
  VerifyReport r;
  try {
    r.ok = verify_rec(c, opt, r.log, 0);
  } catch (const Error& e) {
    r.ok = false;
    r.log.push_back(std::string("verification error: ") + e.what());
  }
  return r;
}

VerifyReport verify_verdict(const Verdict& v, const ClassifyOptions& opt) {
  VerifyReport r;
  try {
    Normalized n = normalize(v.input);
    if (!same_lattice(n.spec.build(), v.certificate.lattice.build())) {
      r.ok = false;
      r.log.push_back("certificate lattice differs from the normalized input");
      return r;
    }
  } catch (const Error& e) {
    r.ok = false;
    r.log.push_back(std::string("input does not build: ") + e.what());
    return r;
  }
  if (v.quasi_permutation != v.certificate.positive()) {
    r.ok = false;
    r.log.push_back("status disagrees with the certificate kind");
    return r;
  }
  VerifyReport inner = verify_certificate(v.certificate, opt);
  r.ok = inner.ok;
  r.log.insert(r.log.end(), inner.log.begin(), inner.log.end());
  return r;
}

}  // namespace latkit
