#include "latkit/checks.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "latkit/constructions.hpp"
#include "latkit/errors.hpp"
#include "latkit/resolutions.hpp"

namespace latkit {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
  std::string group;
  std::vector<CheckResult>& out;

  void operator()(const std::string& name, const std::function<bool(std::string&)>& body) {
    CheckResult r;
    r.group = group;
    r.name = name;
    const auto t0 = Clock::now();
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("threw ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
};

DynkinType T(Family f, int n) { return DynkinType::make(f, n); }

IntermediateLattice lat(std::vector<DynkinType> ts, std::vector<std::vector<int>> s) {
  std::vector<IntVec> gens;
  for (const auto& r : s) {
    IntVec v;
    for (int x : r) v.push_back(Int(x));
    gens.push_back(v);
  }
  return intermediate(ts, gens);
}

Int index_of(const IntMatrix& big, const IntMatrix& small) { return quotient_invariants(big, small).order(); }

void rootdata_checks(Runner& run) {
  run("fundamental group of D3 is cyclic of order 4", [](std::string& d) {
    auto f = build_factor(T(Family::D, 3));
    d = f.fundamental_group.str();
    return d == "[4]";
  });
  run("A2 has [P:Q] = 3 and |W| = 6", [](std::string& d) {
    auto l = lat({T(Family::A, 2)}, {});
    Int idx = index_of(l.P(), l.Q());
    std::size_t w = l.weyl_group()->order();
    d = "index " + idx.get_str() + ", |W| " + std::to_string(w);
    return idx == 3 && w == 6;
  });
  run("X(SO6) sits with index 2 over Q and under P", [](std::string& d) {
    auto l = char_lattice(CharGroup::SO, 6);
    Int up = index_of(l.P(), l.basis), down = index_of(l.basis, l.Q());
    d = "[P:L] = " + up.get_str() + ", [L:Q] = " + down.get_str();
    return up == 2 && down == 2;
  });
  run("X(SO4) is the diagonal lattice of two A1", [](std::string& d) {
    auto so4 = char_lattice(CharGroup::SO, 4);
    LatticeSpec s = spec_of(so4);
    auto n = normalize(s).spec.build();
    auto pair = lat({T(Family::A, 1), T(Family::A, 1)}, {{1, 1}});
    d = s.str();
    return span_equal(n.basis, pair.basis);
  });
  run("X(SO7) is Q(B3) with a signed-permutation resolution", [](std::string& d) {
    auto l = char_lattice(CharGroup::SO, 7);
    auto r = block_resolution(l);
    d = r.method;
    return l.factors[0].type == T(Family::B, 3) && span_equal(l.basis, l.Q()) && check_resolution(r).ok() &&
           r.method.rfind("sign_perm", 0) == 0;
  });
}

void jgamma_checks(Runner& run) {
  auto klein = [] {
    IntMatrix a = IntMatrix::identity(2), b = IntMatrix::identity(2);
    a(0, 0) = -1;
    b(1, 1) = -1;
    return FinGroup::close({a, b});
  };
  run("norm quotient of the Klein group has rank 3", [&](std::string& d) {
    auto j = j_gamma(klein());
    d = "rank " + std::to_string(j.rank());
    return j.rank() == 3;
  });
  run("Sha^2 of the Klein norm quotient is Z/2", [&](std::string& d) {
    auto j = j_gamma(klein());
    auto a = sha2(j), b = sha2_by_restriction(j);
    d = a.str() + " (duality), " + b.str() + " (restriction)";
    return a.str() == "[2]" && a == b;
  });
}

void section2_checks(Runner& run) {
  run("B2 with B1: rank 3 and [L:L'] = 2", [](std::string& d) {
    Section2Spec s{{{Family::B, 2}, {Family::B, 1}}, {}};
    auto l = section2_lattice(s);
    d = "rank " + std::to_string(l.L_basis.rows()) + ", index " + std::to_string(l.index_over_Lprime());
    return l.L_basis.rows() == 3 && l.index_over_Lprime() == 2;
  });
  run("B1 with A3: rank 4 and [L:L'] = 2", [](std::string& d) {
    Section2Spec s{{{Family::B, 1}}, {2}};
    auto l = section2_lattice(s);
    d = "rank " + std::to_string(l.L_basis.rows()) + ", index " + std::to_string(l.index_over_Lprime());
    return l.L_basis.rows() == 4 && l.index_over_Lprime() == 2;
  });
  run("D3 with B1: D3 splits 1+1+1 and every part is used", [](std::string& d) {
    Section2Spec s{{{Family::D, 3}, {Family::B, 1}}, {}};
    auto p = partition(s);
    std::ostringstream os;
    bool ok = true;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
      os << (i ? " | " : "");
      for (int k = 0; k < 3; ++k) os << (k ? "," : "") << p.parts[i][k].size();
    }
    for (int k = 0; k < 3; ++k) {
      ok = ok && !p.unions[k].empty();
      ok = ok && p.parts[0][k].size() == 1;
    }
    ok = ok && p.parts[1][2].size() == 1;
    d = "split " + os.str();
    return ok;
  });
  run("B2 with one A factor: B2 stays in the first part", [](std::string& d) {
    Section2Spec s{{{Family::B, 2}}, {2}};
    auto p = partition(s);
    d = "first part " + std::to_string(p.parts[0][0].size()) + " of 2";
    return p.parts[0][0].size() == 2 && !p.unions[0].empty();
  });
  run("Klein involutions multiply correctly", [](std::string& d) {
    Section2Spec s{{{Family::B, 2}, {Family::B, 1}}, {}};
    auto e = klein_embedding(s, partition(s));
    const auto& j = e.j;
    bool ok = !(j[0] == j[1]) && !(j[1] == j[2]) && !(j[0] == j[2]);
    for (int k = 0; k < 3; ++k) ok = ok && (j[k] * j[k]).is_identity();
    ok = ok && j[0] * j[1] == j[2] && j[1] * j[0] == j[2];
    d = ok ? "distinct commuting involutions" : "product rule fails";
    return ok;
  });
  const auto grid = section2_grid(6);
  run("one-vector grid up to coordinate rank 6", [&](std::string& d) {
    std::size_t good = 0;
    std::string bad;
    for (const auto& s : grid) {
      auto r = analyze_section2(s);
      bool ok = r.index == 2 && r.zero_sum && r.sum_formulas && r.L0_isomorphic && r.decomposition_ok &&
                r.rank_count_ok && r.sha2.str() == "[2]";
      if (ok) ++good;
      else if (bad.empty()) bad = s.str();
    }
    d = std::to_string(good) + "/" + std::to_string(grid.size()) + " specs" + (bad.empty() ? "" : ", first failure " + bad);
    return good == grid.size() && grid.size() >= 10;
  });
}

void lnu_checks(Runner& run) {
  run("r = 1, n = 3, d = 3 gives the weight lattice of A2", [](std::string& d) {
    LnuSpec s{{3}, 3, {1}};
    auto w = w_nu(s);
    auto l = l_nu(s);
    d = "w = (" + w[0].get_str() + "," + w[1].get_str() + ")";
    return w == IntVec{Int(1), Int(0)} && span_equal(l.basis, l.P());
  });
  run("n = (2,2), d = 2: Lambda/N is free of rank 1 with trivial action", [](std::string& d) {
    auto c = lambda_and_N(LnuSpec{{2, 2}, 2, {1, 1}});
    d = "rank " + std::to_string(c.quotient_rank);
    return c.ok(2);
  });
  run("n = (3,3), d = 3: phi(L) = N", [](std::string& d) {
    auto c = lambda_and_N(LnuSpec{{3, 3}, 3, {1, 2}});
    d = c.phi_equals_N ? "HNF equal" : "HNF differ";
    return c.phi_equals_N;
  });
  run("n = (3,3), p = 3: elementary abelian subgroup of order 9", [](std::string& d) {
    auto e = elementary_abelian_subgroup({3, 3}, 3);
    auto g = FinGroup::close(e.weight);
    d = "order " + std::to_string(g->order());
    return g->order() == 9;
  });
  const auto grid = lnu_grid(8);
  run("cyclic family grid up to total size 8", [&](std::string& d) {
    std::size_t good = 0;
    std::string bad;
    for (const auto& s : grid) {
      auto l = l_nu(s);
      auto q = verify_lnu_quotient(s);
      auto big = lambda_and_N(s);
      bool ok = index_of(l.basis, l.Q()) == s.d && q.ok() && big.ok(s.n.size());
      if (ok) ++good;
      else if (bad.empty()) bad = s.str();
    }
    d = std::to_string(good) + "/" + std::to_string(grid.size()) + " specs" + (bad.empty() ? "" : ", first failure " + bad);
    return good == grid.size();
  });
}

void resolution_checks(Runner& run) {
  for (int n : {3, 5, 7}) {
    run("weight lattice of A" + std::to_string(n - 1) + " with outer action", [n](std::string& d) {
      auto r = pgl_odd_outer_resolution(n);
      auto dr = dual_resolution(r);
      auto c = check_resolution(r), dc = check_resolution(dr);
      d = "M rank " + std::to_string(r.seq.mid.rank()) + ", M' rank " + std::to_string(r.outer().rank()) +
          ", dual " + (dc.ok() ? "verifies" : dc.failure);
      return c.ok() && dc.ok() && r.seq.mid.rank() == 2 * n + 1 && r.outer().rank() == n + 2 &&
             dr.lattice().rank() == n - 1;
    });
  }
  run("even n is rejected", [](std::string& d) {
    try {
      pgl_odd_outer_resolution(4);
    } catch (const Error& e) {
      d = e.what();
      return e.kind() == ErrorKind::EvenN;
    }
    return false;
  });
  for (int n = 1; n <= 4; ++n)
    run("Q(B" + std::to_string(n) + ") by signed permutations", [n](std::string& d) {
      auto r = block_resolution(lat({T(Family::B, n)}, {}));
      d = r.method;
      return check_resolution(r).ok() && r.method.rfind("sign_perm", 0) == 0;
    });
  for (int n = 2; n <= 4; ++n)
    run("X(SO" + std::to_string(2 * n) + ") by signed permutations", [n](std::string& d) {
      auto n_spec = normalize(spec_of(char_lattice(CharGroup::SO, 2 * n))).spec;
      auto r = block_resolution(n_spec.build());
      d = r.method;
      return check_resolution(r).ok() && (r.method.rfind("sign_perm", 0) == 0 || r.method == "so4_pair");
    });
  run("Q(A2) by augmentation", [](std::string& d) {
    auto r = block_resolution(lat({T(Family::A, 2)}, {}));
    d = r.method;
    return check_resolution(r).ok();
  });
}

void rank2_checks(Runner& run) {
  const std::vector<std::pair<std::string, IntermediateLattice>> cases = {
      {"Q(G2)", lat({T(Family::G2, 2)}, {})},
      {"P(A2)", lat({T(Family::A, 2)}, {{1}})},
      {"P(B2)", lat({T(Family::B, 2)}, {{1}})},
      {"Q(C2)", lat({T(Family::C, 2)}, {})},
  };
  for (const auto& [name, l] : cases)
    run(name + " of rank two", [&l = l](std::string& d) {
      auto r = rank_le2_resolution(l.lattice());
      d = r.method;
      return check_resolution(r).ok();
    });
  run("square symmetry group", [](std::string& d) {
    auto g = FinGroup::close({IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, 1}}});
    auto r = rank_le2_resolution(GLattice::natural(g));
    d = "order " + std::to_string(g->order()) + ", " + r.method;
    return g->order() == 8 && check_resolution(r).ok();
  });
}

void classify_checks(Runner& run, const ClassifyOptions& opt) {
  auto spec = [](std::vector<DynkinType> ts, std::vector<std::vector<int>> s) { return spec_of(lat(ts, s)); };
  run("two A1 glued diagonally: one SO4 block", [&](std::string& d) {
    auto v = classify(spec({T(Family::A, 1), T(Family::A, 1)}, {{1, 1}}), opt);
    d = v.quasi_permutation ? "quasi-permutation" : "not quasi-permutation";
    return v.quasi_permutation && v.certificate.blocks.size() == 1 &&
           v.certificate.blocks[0].kind == BlockKind::So4Pair && verify_verdict(v, opt).ok;
  });
  run("two A2 glued diagonally are not quasi-permutation", [&](std::string& d) {
    auto v = classify(spec({T(Family::A, 2), T(Family::A, 2)}, {{1, 1}}), opt);
    d = cert_kind_name(v.certificate.kind);
    return !v.quasi_permutation && verify_verdict(v, opt).ok;
  });
  run("G2 is quasi-permutation", [&](std::string& d) {
    auto v = classify(spec({T(Family::G2, 2)}, {}), opt);
    d = v.certificate.blocks.empty() ? "" : v.certificate.blocks[0].resolution.method;
    return v.quasi_permutation && verify_verdict(v, opt).ok;
  });
  run("SO4 subgroup gives one pair", [](std::string& d) {
    auto pm = pair_matching(lat({T(Family::A, 1), T(Family::A, 1)}, {{1, 1}}));
    d = std::to_string(pm.pairs.size()) + " pair(s)";
    return pm.pairs.size() == 1 && pm.consistent;
  });
  run("B2 with B1 certificate has Sha^2 = Z/2", [&](std::string& d) {
    auto v = classify(spec({T(Family::B, 2), T(Family::B, 1)}, {{1, 1}}), opt);
    d = v.certificate.sha2.str();
    return v.certificate.kind == CertKind::NegativeSha && d == "[2]" && verify_verdict(v, opt).ok;
  });
}

}  // namespace

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> g = {"rootdata", "jgamma", "section2", "lnu", "resolutions", "rank2", "classify"};
  return g;
}

std::vector<CheckResult> run_checks(const std::string& filter, const ClassifyOptions& opt) {
  std::vector<CheckResult> out;
  for (const auto& g : check_groups()) {
    if (!filter.empty() && g.find(filter) == std::string::npos) continue;
    Runner run{g, out};
    if (g == "rootdata") rootdata_checks(run);
    if (g == "jgamma") jgamma_checks(run);
    if (g == "section2") section2_checks(run);
    if (g == "lnu") lnu_checks(run);
    if (g == "resolutions") resolution_checks(run);
    if (g == "rank2") rank2_checks(run);
    if (g == "classify") classify_checks(run, opt);
  }
  return out;
}

}  // namespace latkit
