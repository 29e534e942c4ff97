#include "latkit/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "latkit/errors.hpp"

namespace latkit {

DynkinType DynkinType::make(Family f, int n) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = n >= 1; break;
    case Family::B: ok = n >= 1; break;
    case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 2; break;
    case Family::G2: ok = n == 2; break;
  }
  if (!ok) throw Error(ErrorKind::InvalidRank, family_name(f) + " with parameter " + std::to_string(n));
  return DynkinType{f, n};
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::G2: return "G2";
  }
  return "?";
}

std::string DynkinType::name() const {
  return family == Family::G2 ? "G2" : family_name(family) + std::to_string(n);
}

Family parse_family(const std::string& s) {
  std::string u;
  for (char c : s) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (u == "A") return Family::A;
  if (u == "B") return Family::B;
  if (u == "C") return Family::C;
  if (u == "D") return Family::D;
  if (u == "G2" || u == "G") return Family::G2;
  if (!u.empty() && (u[0] == 'E' || u[0] == 'F'))
    throw Error(ErrorKind::UnsupportedType,
                "family " + s + " is outside A, B, C, D, G2 and has no quasi-permutation intermediate lattice");
  throw Error(ErrorKind::InvalidInput, "unknown Dynkin family '" + s + "'");
}

DynkinType parse_dynkin(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty Dynkin type");
  std::string up;
  for (char c : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "G2") return DynkinType::make(Family::G2, 2);
  std::size_t k = 0;
  while (k < up.size() && std::isalpha(static_cast<unsigned char>(up[k]))) ++k;
  Family f = parse_family(up.substr(0, k));
  if (k == up.size()) throw Error(ErrorKind::InvalidInput, "missing rank in '" + s + "'");
  int n = 0;
  try {
    n = std::stoi(up.substr(k));
  } catch (...) {
    throw Error(ErrorKind::InvalidInput, "bad rank in '" + s + "'");
  }
  return DynkinType::make(f, n);
}

namespace {

IntMatrix simple_roots(const DynkinType& t, int& dim) {
  const int k = t.rank();
  IntMatrix r;
  switch (t.family) {
    case Family::A:
      dim = k + 1;
      r = IntMatrix(k, dim);
      for (int i = 0; i < k; ++i) {
        r(i, i) = 1;
        r(i, i + 1) = -1;
      }
      break;
    case Family::B:
    case Family::C:
      dim = k;
      r = IntMatrix(k, dim);
      for (int i = 0; i + 1 < k; ++i) {
        r(i, i) = 1;
        r(i, i + 1) = -1;
      }
      r(k - 1, k - 1) = t.family == Family::B ? 1 : 2;
      break;
    case Family::D:
      dim = k;
      r = IntMatrix(k, dim);
      for (int i = 0; i + 1 < k; ++i) {
        r(i, i) = 1;
        r(i, i + 1) = -1;
      }
      r(k - 1, k - 2) = 1;
      r(k - 1, k - 1) = 1;
      break;
    case Family::G2:
      dim = 3;
      r = IntMatrix{{1, -1, 0}, {-2, 1, 1}};
      break;
  }
  return r;
}

Int dot(const IntMatrix& m, std::size_t i, std::size_t j) {
  Int s = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) s += m(i, c) * m(j, c);
  return s;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

}  // namespace

std::size_t RootFactor::weyl_order() const {
  const int k = type.rank();
  switch (type.family) {
    case Family::A: return factorial(k + 1);
    case Family::B:
    case Family::C: return (std::size_t{1} << k) * factorial(k);
    case Family::D: return (std::size_t{1} << (k - 1)) * factorial(k);
    case Family::G2: return 12;
  }
  return 0;
}

int RootFactor::f_order() const {
  int o = 1;
  for (const auto& c : components) o *= c.order;
  return o;
}

RootFactor build_factor(const DynkinType& t0) {
  DynkinType t = DynkinType::make(t0.family, t0.n);
  RootFactor f;
  f.type = t;
  f.rank = t.rank();
  int dim = 0;
  IntMatrix roots = simple_roots(t, dim);
  f.ambient_dim = dim;
  f.roots_ambient = RatMatrix(roots);
  const int k = f.rank;

  f.cartan = IntMatrix(k, k);
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l) {
      Int num = 2 * dot(roots, j, l), den = dot(roots, l, l);
      f.cartan(j, l) = num / den;
    }
  f.Q_basis = f.cartan;
  f.P_basis = IntMatrix::identity(k);
  f.weights_ambient = *RatMatrix(f.cartan).inverse() * f.roots_ambient;

  for (int j = 0; j < k; ++j) {
    IntMatrix s = IntMatrix::identity(k);
    for (int l = 0; l < k; ++l) s(j, l) -= f.cartan(j, l);
    f.weyl_generators.push_back(s);
  }
  for (int j = 0; j < k; ++j) {
    if (t.family == Family::G2 && j == 1) {
      // reflection in the long root, written as -(swap of coordinates 2,3) on R^3
      f.weyl_ambient.push_back(IntMatrix{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}});
      continue;
    }
    Int aa = dot(roots, j, j);
    IntMatrix s = IntMatrix::identity(dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Int v = 2 * roots(j, a) * roots(j, b);
        s(a, b) -= v / aa;
      }
    f.weyl_ambient.push_back(s);
  }

  f.fundamental_group = cokernel_invariants(f.cartan.transpose());
  auto unit = [k](int i) {
    IntVec v(k, Int(0));
    v[i] = 1;
    return v;
  };
  switch (t.family) {
    case Family::A:
      f.components.push_back({k + 1, unit(0)});
      break;
    case Family::B:
      f.components.push_back({2, unit(k - 1)});
      break;
    case Family::C:
      f.components.push_back({2, unit(0)});
      break;
    case Family::D:
    case Family::G2:
      break;
  }
  if (t.family == Family::D) {
    // weights_ambient is square for D; coordinates of e_1 in the weight basis
    RatMatrix winv = *f.weights_ambient.inverse();
    RatMatrix e1(1, dim);
    e1(0, 0) = 1;
    IntVec vec = (e1 * winv).to_int().row(0);
    if (k % 2 == 1) {
      f.components.push_back({4, unit(k - 2)});
      f.coordinate_residue = IntVec{2};
    } else {
      f.components.push_back({2, vec});
      f.components.push_back({2, unit(k - 2)});
      f.coordinate_residue = IntVec{1, 0};
    }
  }
  return f;
}

bool weyl_trivial_on_F(const RootFactor& f) {
  for (const auto& s : f.weyl_generators)
    for (const auto& c : f.components) {
      IntMatrix l = IntMatrix::row_vector(c.lift);
      if (!span_contains(f.Q_basis, l * s - l)) return false;
    }
  return true;
}

IntMatrix IntermediateLattice::Q() const {
  IntMatrix q(total_rank, total_rank);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& c = factors[i].cartan;
    for (std::size_t a = 0; a < c.rows(); ++a)
      for (std::size_t b = 0; b < c.cols(); ++b) q(offsets[i] + a, offsets[i] + b) = c(a, b);
  }
  return q;
}

std::vector<int> IntermediateLattice::component_orders() const {
  std::vector<int> out;
  for (const auto& f : factors)
    for (const auto& c : f.components) out.push_back(c.order);
  return out;
}

IntVec IntermediateLattice::lift_of(const IntVec& residues) const {
  IntVec v(total_rank, Int(0));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& comps = factors[i].components;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const Int& r = residues[residue_offsets[i] + c];
      for (int a = 0; a < factors[i].rank; ++a) v[offsets[i] + a] += r * comps[c].lift[a];
    }
  }
  return v;
}

IntVec IntermediateLattice::residue_of(const IntVec& p) const {
  IntVec out(residue_offsets.empty() ? 0 : component_orders().size(), Int(0));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const RootFactor& f = factors[i];
    IntVec pi(p.begin() + offsets[i], p.begin() + offsets[i] + f.rank);
    const auto& comps = f.components;
    // brute force over F_i, which is tiny
    std::vector<int> r(comps.size(), 0);
    bool found = false;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (found) return;
      if (c == comps.size()) {
        IntVec d = pi;
        for (std::size_t t = 0; t < comps.size(); ++t)
          for (int a = 0; a < f.rank; ++a) d[a] -= r[t] * comps[t].lift[a];
        if (span_contains(f.Q_basis, IntMatrix::row_vector(d))) {
          found = true;
          for (std::size_t t = 0; t < comps.size(); ++t) out[residue_offsets[i] + t] = r[t];
        }
        return;
      }
      for (int v = 0; v < comps[c].order && !found; ++v) {
        r[c] = v;
        rec(c + 1);
      }
    };
    rec(0);
    if (!found) throw Error(ErrorKind::InvalidInput, "vector is not in the weight lattice");
  }
  return out;
}

std::vector<IntMatrix> IntermediateLattice::action_generators() const {
  std::vector<IntMatrix> out;
  for (const auto& s : weyl_generators) {
    auto y = solve_left(basis, basis * s);
    if (!y) throw Error(ErrorKind::NotInvariant, "Weyl generator does not preserve the lattice");
    out.push_back(*y);
  }
  return out;
}

GroupPtr IntermediateLattice::weyl_group(std::size_t cap) const {
  return FinGroup::close(weyl_generators, cap);
}

GLattice IntermediateLattice::lattice(std::size_t cap) const {
  return GLattice(weyl_group(cap), action_generators());
}

IntermediateLattice intermediate(const std::vector<RootFactor>& factors,
                                 const std::vector<IntVec>& S_generators) {
  if (factors.empty()) throw Error(ErrorKind::InvalidInput, "no factors");
  IntermediateLattice l;
  l.factors = factors;
  std::size_t off = 0, roff = 0;
  for (const auto& f : factors) {
    l.offsets.push_back(off);
    l.residue_offsets.push_back(roff);
    off += f.rank;
    roff += f.components.size();
  }
  l.total_rank = off;
  std::vector<int> orders = l.component_orders();
  for (const auto& g : S_generators) {
    if (g.size() != orders.size())
      throw Error(ErrorKind::InvalidResidue, "residue tuple has " + std::to_string(g.size()) +
                                                 " entries, expected " + std::to_string(orders.size()));
    IntVec red(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
      Int r;
      mpz_fdiv_r_ui(r.get_mpz_t(), g[c].get_mpz_t(), static_cast<unsigned long>(orders[c]));
      red[c] = r;
    }
    l.S_generators.push_back(red);
  }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (const auto& s : factors[i].weyl_generators) {
      IntMatrix b = IntMatrix::identity(l.total_rank);
      for (int a = 0; a < factors[i].rank; ++a)
        for (int c = 0; c < factors[i].rank; ++c) b(l.offsets[i] + a, l.offsets[i] + c) = s(a, c);
      l.weyl_generators.push_back(b);
    }
  IntMatrix gens = l.Q();
  for (const auto& g : l.S_generators) gens.append_row(l.lift_of(g));
  l.basis = hnf_basis(gens);
  return l;
}

IntermediateLattice intermediate(const std::vector<DynkinType>& types,
                                 const std::vector<IntVec>& S_generators) {
  std::vector<RootFactor> fs;
  for (const auto& t : types) fs.push_back(build_factor(t));
  return intermediate(fs, S_generators);
}

bool quotient_matches_S(const IntermediateLattice& l) {
  AbelianInvariants lq = quotient_invariants(l.basis, l.Q());
  std::vector<int> orders = l.component_orders();
  const std::size_t m = orders.size();
  if (m == 0) return lq.trivial();
  IntMatrix rel(m, m);
  for (std::size_t c = 0; c < m; ++c) rel(c, c) = orders[c];
  IntMatrix gens = rel;
  for (const auto& g : l.S_generators) gens.append_row(g);
  AbelianInvariants s = quotient_invariants(gens, rel);
  return s == lq;
}

CharGroup parse_char_group(const std::string& s) {
  std::string u;
  for (char c : s) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (u == "SO") return CharGroup::SO;
  if (u == "SP") return CharGroup::Sp;
  if (u == "PGL") return CharGroup::PGL;
  if (u == "SL") return CharGroup::SL;
  if (u == "G2") return CharGroup::G2;
  throw Error(ErrorKind::InvalidInput, "unknown group name '" + s + "'");
}

IntermediateLattice char_lattice(CharGroup g, int param) {
  auto bad = [&](const std::string& why) { return Error(ErrorKind::InvalidParameter, why); };
  switch (g) {
    case CharGroup::SO: {
      if (param < 3) throw bad("SO(n) needs n >= 3");
      if (param % 2 == 1) return intermediate({DynkinType::make(Family::B, (param - 1) / 2)}, {});
      int n = param / 2;
      if (n == 2) {
        return intermediate({DynkinType::make(Family::A, 1), DynkinType::make(Family::A, 1)},
                            {IntVec{1, 1}});
      }
      RootFactor f = build_factor(DynkinType::make(Family::D, n));
      return intermediate(std::vector<RootFactor>{f}, {*f.coordinate_residue});
    }
    case CharGroup::Sp: {
      if (param < 2 || param % 2) throw bad("Sp(2n) needs an even parameter >= 2");
      int n = param / 2;
      if (n == 1) return intermediate({DynkinType::make(Family::A, 1)}, {IntVec{1}});
      return intermediate({DynkinType::make(Family::C, n)}, {IntVec{1}});
    }
    case CharGroup::PGL:
      if (param < 2) throw bad("PGL(n) needs n >= 2");
      return intermediate({DynkinType::make(Family::A, param - 1)}, {});
    case CharGroup::SL:
      if (param < 2) throw bad("SL(n) needs n >= 2");
      return intermediate({DynkinType::make(Family::A, param - 1)}, {IntVec{1}});
    case CharGroup::G2:
      return intermediate({DynkinType::make(Family::G2, 2)}, {});
  }
  throw bad("unknown group");
}

}  // namespace latkit

namespace latkit {

IntMatrix ambient_to_weight(const RootFactor& f, const IntMatrix& ambient) {
  const RatMatrix& om = f.weights_ambient;
  RatMatrix omt = om.transpose();
  auto gram_inv = (om * omt).inverse();
  if (!gram_inv) throw Error(ErrorKind::InvalidInput, "weights are dependent");
  RatMatrix x = om * RatMatrix(ambient) * omt * *gram_inv;
  if (!(x * om == om * RatMatrix(ambient)))
    throw Error(ErrorKind::InvalidInput, "ambient map does not preserve the weight span");
  if (!x.is_integral()) throw Error(ErrorKind::InvalidInput, "ambient map is not integral on P");
  return x.to_int();
}

GLattice IntermediateLattice::restricted(const std::vector<IntMatrix>& p_generators,
                                         std::size_t cap) const {
  std::vector<IntMatrix> gens = p_generators;
  if (gens.empty()) gens.push_back(IntMatrix::identity(total_rank));
  std::vector<IntMatrix> imgs;
  for (const auto& g : gens) {
    auto y = solve_left(basis, basis * g);
    if (!y) throw Error(ErrorKind::NotInvariant, "matrix does not preserve the lattice");
    imgs.push_back(*y);
  }
  return GLattice(FinGroup::close(gens, cap), imgs);
}

std::optional<std::vector<int>> IntermediateLattice::weyl_word(const IntMatrix& x) const {
  if (x.rows() != total_rank || x.cols() != total_rank) return std::nullopt;
  // descend rho*x to the dominant chamber, recording the reflections used
  IntMatrix cur = x;
  IntVec rho(total_rank, Int(1));
  std::vector<int> word;
  const std::size_t max_steps = 1u << 20;
  for (std::size_t step = 0; step < max_steps; ++step) {
    IntVec y = vec_mul(rho, cur);
    int j = -1;
    for (std::size_t k = 0; k < total_rank; ++k)
      if (y[k] < 0) {
        j = static_cast<int>(k);
        break;
      }
    if (j < 0) break;
    cur = cur * weyl_generators[j];
    word.push_back(j);
  }
  if (!cur.is_identity()) return std::nullopt;
  std::reverse(word.begin(), word.end());
  return word;
}

IntMatrix IntermediateLattice::word_matrix(const std::vector<int>& word) const {
  IntMatrix m = IntMatrix::identity(total_rank);
  for (int j : word) {
    if (j < 0 || static_cast<std::size_t>(j) >= weyl_generators.size())
      throw Error(ErrorKind::InvalidInput, "reflection index out of range");
    m = m * weyl_generators[j];
  }
  return m;
}

}  // namespace latkit
