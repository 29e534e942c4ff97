// Command-line front end: classification, cohomology, constructions and check replay.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "latkit/checks.hpp"
#include "latkit/constructions.hpp"
#include "latkit/errors.hpp"
#include "latkit/json_io.hpp"

using namespace latkit;

namespace {

enum Exit { kOk = 0, kInputError = 1, kBudget = 2, kNegative = 3 };

struct Global {
  std::size_t max_group_order = kDefaultGroupCap;
  std::size_t max_cells = kDefaultMaxCells;
  unsigned seed = 0;
  bool json = false;

  ClassifyOptions options() const {
    ClassifyOptions o;
    o.max_group_order = max_group_order;
    o.cohomology.max_cells = max_cells;
    return o;
  }
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// write to a temporary file next to the target, then rename
void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

GroupPtr cyclic_group(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "group order must be positive");
  IntMatrix c(n, n);
  for (int i = 0; i < n; ++i) c(i, (i + 1) % n) = 1;
  return FinGroup::close({c});
}

// (Z/p)^m acting by disjoint p-cycles
GroupPtr elementary_group(int p, int m, std::size_t cap) {
  if (p < 2 || m < 1) throw Error(ErrorKind::InvalidParameter, "need p >= 2 and m >= 1");
  std::vector<IntMatrix> gens;
  for (int k = 0; k < m; ++k) {
    IntMatrix g = IntMatrix::identity(p * m);
    for (int i = 0; i < p; ++i) {
      g(k * p + i, k * p + i) = 0;
      g(k * p + i, k * p + (i + 1) % p) = 1;
    }
    gens.push_back(g);
  }
  return FinGroup::close(gens, cap);
}

// where a lattice for sha2 / cohomology comes from
struct Source {
  std::string kind;  // jgamma | regular | lattice
  int p = 2, m = 2, order = 4;
  std::string input;

  GLattice build(const Global& g) const {
    if (kind == "jgamma") return j_gamma(elementary_group(p, m, g.max_group_order));
    if (kind == "regular") {
      if (static_cast<std::size_t>(order) > g.max_group_order)
        throw Error(ErrorKind::GroupTooLarge, "order " + std::to_string(order) + " exceeds --max-group-order");
      return regular_lattice(cyclic_group(order));
    }
    Json doc = parse_document(read_input(input));
    LatticeSpec s = normalize(spec_from_json(doc)).spec;
    IntermediateLattice l = s.build();
    if (doc.contains("gamma")) {
      std::vector<IntMatrix> gens;
      for (std::size_t k = 0; k < doc["gamma"].size(); ++k)
        gens.push_back(matrix_from_json(doc["gamma"][k], "/gamma/" + std::to_string(k)));
      for (const auto& x : gens)
        if (!l.weyl_word(x)) throw Error(ErrorKind::InvalidInput, "/gamma: matrix is not in the Weyl group");
      return l.restricted(gens, g.max_group_order);
    }
    return l.lattice(g.max_group_order);
  }
};

void add_sources(CLI::App* parent, Source& src) {
  auto* jg = parent->add_subcommand("jgamma", "norm quotient of Z[(Z/p)^m]");
  jg->add_option("--p", src.p, "prime")->default_val(2);
  jg->add_option("--m", src.m, "rank of the elementary abelian group")->default_val(2);
  jg->callback([&src] { src.kind = "jgamma"; });
  auto* rg = parent->add_subcommand("regular", "regular lattice of a cyclic group");
  rg->add_option("--order", src.order, "group order")->default_val(4);
  rg->callback([&src] { src.kind = "regular"; });
  auto* lt = parent->add_subcommand("lattice", "intermediate lattice from a group-spec document");
  lt->add_option("input", src.input, "document path, '-' for stdin")->default_val("-");
  lt->callback([&src] { src.kind = "lattice"; });
  parent->require_subcommand(1);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

int cmd_classify(const Global& g, const std::string& input, const std::string& inline_spec, const std::string& out) {
  Json doc = parse_document(inline_spec.empty() ? read_input(input) : inline_spec);
  Verdict v = classify(spec_from_json(doc), g.options());
  Json result = verdict_to_json(v);
  if (g.json || !out.empty()) {
    write_output(out, result.dump(2) + "\n");
  }
  if (!g.json) {
    std::ostream& os = out.empty() ? std::cout : std::cerr;
    os << v.certificate.lattice.str() << ": " << result["status"].get<std::string>() << "\n";
    const Certificate* c = &v.certificate;
    int depth = 1;
    while (c) {
      os << std::string(2 * depth, ' ') << cert_kind_name(c->kind);
      if (c->kind == CertKind::NegativeSha) os << " via " << c->witness << ", Sha^2 = " << c->sha2.str();
      if (c->kind == CertKind::NegativeByReduction) os << " (" << c->step << ")";
      if (c->kind == CertKind::CitedLeaf) os << " (" << c->reason << ", not machine-verified)";
      for (const auto& b : c->blocks) {
        std::vector<std::string> idx;
        for (auto i : b.indices) idx.push_back(std::to_string(i));
        os << "\n" << std::string(2 * depth + 2, ' ') << (b.kind == BlockKind::So4Pair ? "so4_pair" : "simple") << " ["
           << join(idx, ",") << "] " << b.resolution.method;
      }
      os << "\n";
      for (const auto& n : c->notes) os << std::string(2 * depth + 2, ' ') << "note: " << n << "\n";
      c = c->child.get();
      ++depth;
    }
  }
  return v.quasi_permutation ? kOk : kNegative;
}

int cmd_verify(const Global& g, const std::string& input) {
  Json doc = parse_document(read_input(input));
  Verdict v = verdict_from_json(doc, g.options());
  VerifyReport r = verify_verdict(v, g.options());
  if (verdict_to_json(v) != doc) {
    r.ok = false;
    r.log.push_back("document is not in canonical form (re-serialization differs)");
  }
  if (g.json) {
    std::cout << Json{{"ok", r.ok}, {"machine_verified", v.certificate.machine_verified()}, {"log", r.log}}.dump(2)
              << "\n";
  } else {
    for (const auto& line : r.log) std::cout << line << "\n";
    std::cout << (r.ok ? "certificate accepted" : "certificate rejected")
              << (r.ok && !v.certificate.machine_verified() ? " (contains a cited leaf)" : "") << "\n";
  }
  return r.ok ? kOk : kNegative;
}

int cmd_sha2(const Global& g, const Source& src) {
  GLattice l = src.build(g);
  CohomologyOptions opt;
  opt.max_cells = g.max_cells;
  AbelianInvariants s = sha2(l, opt);
  if (g.json) std::cout << Json{{"group_order", l.group().order()}, {"rank", l.rank()}, {"sha2", invariants_to_json(s)}}.dump(2) << "\n";
  else std::cout << "Sha^2 = " << s.str() << "  (group order " << l.group().order() << ", rank " << l.rank() << ")\n";
  return kOk;
}

int cmd_cohomology(const Global& g, const Source& src, int degree, const std::string& method) {
  GLattice l = src.build(g);
  CohomologyOptions opt;
  opt.max_cells = g.max_cells;
  CohomologyResult r;
  if (method == "periodic") r = periodic_h_n(l, degree, opt);
  else if (method == "bar") r = h_n(l, degree, opt);
  else throw Error(ErrorKind::InvalidInput, "unknown method '" + method + "'");
  if (g.json)
    std::cout << Json{{"degree", degree}, {"resolution", resolution_name(r.resolution_used)}, {"group", invariants_to_json(r.group)}}.dump(2)
              << "\n";
  else std::cout << "H^" << degree << " = " << r.group.str() << "  (" << resolution_name(r.resolution_used) << ")\n";
  return kOk;
}

Section2Spec parse_section2(const std::string& bd, const std::string& a) {
  Section2Spec s;
  std::stringstream ss(bd);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    DynkinType t = parse_dynkin(tok);
    if (t.family != Family::B && t.family != Family::D)
      throw Error(ErrorKind::InvalidSpec, "one-vector factors are of type B or D, got " + tok);
    s.bd_factors.push_back({t.family, t.n});
  }
  s.a_factors = int_list(a);
  s.validate();
  return s;
}

int cmd_construct_section2(const Global& g, const std::string& bd, const std::string& a, bool boundary) {
  Section2Spec s = parse_section2(bd, a);
  CohomologyOptions opt;
  opt.max_cells = g.max_cells;
  Section2Report r = analyze_section2(s, boundary, opt);
  Section2Lattice l = section2_lattice(s);
  if (g.json) {
    Json j{{"spec", s.str()},
           {"rank", s.rank()},
           {"L_basis_doubled", matrix_to_json(l.L_basis)},
           {"v_doubled", matrix_to_json(IntMatrix::row_vector(l.v))},
           {"involutions", Json::array({matrix_to_json(r.emb.j[0]), matrix_to_json(r.emb.j[1]), matrix_to_json(r.emb.j[2])})},
           {"index", r.index},
           {"zero_sum", r.zero_sum},
           {"sum_formulas", r.sum_formulas},
           {"L0_isomorphic", r.L0_isomorphic},
           {"decomposition_ok", r.decomposition_ok},
           {"rank_count_ok", r.rank_count_ok},
           {"sha2", invariants_to_json(r.sha2)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << s.str() << ": rank " << s.rank() << ", [L:L'] = " << r.index << "\n"
              << "  v + v1 + v2 + v3 = 0: " << (r.zero_sum ? "yes" : "no") << "\n"
              << "  sums v + v_k: " << (r.sum_formulas ? "ok" : "fail") << "\n"
              << "  L0 isomorphic to the norm quotient: " << (r.L0_isomorphic ? "yes" : "no") << "\n"
              << "  decomposition of L1: " << (r.decomposition_ok ? "ok" : "fail") << ", rank count "
              << (r.rank_count_ok ? "ok" : "fail") << "\n"
              << "  Sha^2 = " << r.sha2.str() << "\n";
  }
  return r.sha2.trivial() ? kNegative : kOk;
}

int cmd_construct_lnu(const Global& g, const std::string& n, int d, const std::string& nu) {
  LnuSpec s{int_list(n), d, int_list(nu)};
  s.validate();
  IntermediateLattice l = l_nu(s);
  QuotientCheck q = verify_lnu_quotient(s);
  BigLatticeCheck b = lambda_and_N(s);
  const Int idx = quotient_invariants(l.basis, l.Q()).order();
  if (g.json) {
    std::cout << Json{{"spec", s.str()},
                      {"w", matrix_to_json(IntMatrix::row_vector(w_nu(s)))},
                      {"basis", matrix_to_json(l.basis)},
                      {"index_over_Q", int_to_json(idx)},
                      {"quotient", invariants_to_json(q.lhs)},
                      {"quotient_expected", invariants_to_json(q.expected)},
                      {"quotient_ok", q.ok()},
                      {"phi_equals_N", b.phi_equals_N},
                      {"lambda_over_N_rank", b.quotient_rank},
                      {"lambda_ok", b.ok(s.n.size())}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << s.str() << ": [L:Q] = " << idx.get_str() << "\n"
              << "  L/TL1 = " << q.lhs.str() << ", Q/TQ = " << q.rhs.str() << ", expected " << q.expected.str()
              << (q.ok() ? " (ok)" : " (fail)") << "\n"
              << "  phi(L) = N: " << (b.phi_equals_N ? "yes" : "no") << ", rank(Lambda/N) = " << b.quotient_rank
              << (b.ok(s.n.size()) ? " (ok)" : " (fail)") << "\n";
  }
  return q.ok() && b.ok(s.n.size()) ? kOk : kNegative;
}

int cmd_construct_jgamma(const Global& g, int p, int m) {
  GLattice j = j_gamma(elementary_group(p, m, g.max_group_order));
  if (g.json) {
    Json gens = Json::array();
    for (const auto& x : j.generator_actions()) gens.push_back(matrix_to_json(x));
    std::cout << Json{{"group_order", j.group().order()}, {"rank", j.rank()}, {"generators", gens}}.dump(2) << "\n";
  } else {
    std::cout << "norm quotient of (Z/" << p << ")^" << m << ": rank " << j.rank() << "\n";
    for (const auto& x : j.generator_actions()) std::cout << x.str() << "\n";
  }
  return kOk;
}

int cmd_construct_rootdatum(const Global& g, const std::string& type) {
  RootFactor f = build_factor(parse_dynkin(type));
  if (g.json) {
    Json comps = Json::array();
    for (const auto& c : f.components)
      comps.push_back(Json{{"order", c.order}, {"lift", matrix_to_json(IntMatrix::row_vector(c.lift))[0]}});
    Json j{{"type", f.type.name()},
           {"rank", f.rank},
           {"cartan", matrix_to_json(f.cartan)},
           {"weyl_order", f.weyl_order()},
           {"fundamental_group", invariants_to_json(f.fundamental_group)},
           {"components", comps}};
    if (f.coordinate_residue) j["coordinate_residue"] = matrix_to_json(IntMatrix::row_vector(*f.coordinate_residue))[0];
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << f.type.name() << ": rank " << f.rank << ", |W| = " << f.weyl_order()
              << ", P/Q = " << f.fundamental_group.str() << "\nCartan matrix (rows = simple roots in weight coordinates)\n"
              << f.cartan.str() << "\n";
  }
  return kOk;
}

int cmd_demo(const Global& g, const std::string& filter) {
  auto results = run_checks(filter, g.options());
  bool all = !results.empty();
  for (const auto& r : results) all = all && r.pass;
  if (g.json) {
    Json arr = Json::array();
    for (const auto& r : results)
      arr.push_back(Json{{"group", r.group}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    std::cout << Json{{"pass", all}, {"checks", arr}}.dump(2) << "\n";
  } else {
    for (const auto& r : results)
      std::printf("%s  %-9s %s: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.group.c_str(), r.name.c_str(),
                  r.detail.c_str(), r.seconds);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass;
    std::printf("%zu/%zu checks passed\n", passed, results.size());
  }
  return all ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-permutation tests for character lattices of semisimple groups"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--max-group-order", g.max_group_order, "cap on closed group orders")->default_val(kDefaultGroupCap);
  app.add_option("--max-cells", g.max_cells, "cap on dense cochain matrix cells")->default_val(kDefaultMaxCells);
  app.add_option("--seed", g.seed, "seed for randomized runs (results are deterministic)")->default_val(0);
  app.fallthrough();

  std::function<int()> action;

  std::string input = "-", inline_spec, out;
  auto* cl = app.add_subcommand("classify", "decide quasi-permutation and emit a certificate");
  cl->add_option("input", input, "group-spec document, '-' for stdin");
  cl->add_option("--spec", inline_spec, "group-spec document given inline");
  cl->add_option("--out", out, "write the verdict document to a file");
  cl->callback([&] { action = [&] { return cmd_classify(g, input, inline_spec, out); }; });

  std::string vin = "-";
  auto* ve = app.add_subcommand("verify", "check a verdict document");
  ve->add_option("input", vin, "verdict document, '-' for stdin");
  ve->callback([&] { action = [&] { return cmd_verify(g, vin); }; });

  Source sha_src;
  auto* sh = app.add_subcommand("sha2", "Sha^2 of a lattice");
  add_sources(sh, sha_src);
  sh->callback([&] { action = [&] { return cmd_sha2(g, sha_src); }; });

  Source co_src;
  int degree = 2;
  std::string method = "bar";
  auto* co = app.add_subcommand("cohomology", "H^n of a lattice");
  co->add_option("--degree", degree, "1, 2 or 3")->default_val(2);
  co->add_option("--method", method, "bar or periodic")->default_val("bar");
  add_sources(co, co_src);
  co->callback([&] { action = [&] { return cmd_cohomology(g, co_src, degree, method); }; });

  auto* cs = app.add_subcommand("construct", "explicit constructions");
  cs->require_subcommand(1);
  std::string bd, afac;
  bool boundary = false;
  auto* s2 = cs->add_subcommand("section2", "index-two lattice with one extra vector, Klein subgroup and Sha^2");
  s2->add_option("--bd", bd, "B/D factors, e.g. B2,D3")->default_val("");
  s2->add_option("--a", afac, "n for each A_{2n-1} factor, e.g. 2,3")->default_val("");
  s2->add_flag("--boundary", boundary, "allow three or more B1/D2 factors without A factors");
  s2->callback([&] { action = [&] { return cmd_construct_section2(g, bd, afac, boundary); }; });
  std::string ln_n = "3", ln_nu = "1";
  int ln_d = 3;
  auto* ln = cs->add_subcommand("lnu", "cyclic family over products of type A");
  ln->add_option("--n", ln_n, "sizes n_i, e.g. 3,3")->default_val("3");
  ln->add_option("--d", ln_d, "order of the cyclic group")->default_val(3);
  ln->add_option("--nu", ln_nu, "exponents nu_i, e.g. 1,2")->default_val("1");
  ln->callback([&] { action = [&] { return cmd_construct_lnu(g, ln_n, ln_d, ln_nu); }; });
  int jp = 2, jm = 2;
  auto* jg = cs->add_subcommand("jgamma", "norm quotient of Z[(Z/p)^m]");
  jg->add_option("--p", jp)->default_val(2);
  jg->add_option("--m", jm)->default_val(2);
  jg->callback([&] { action = [&] { return cmd_construct_jgamma(g, jp, jm); }; });
  std::string rtype = "A2";
  auto* rd = cs->add_subcommand("rootdatum", "root datum of a simple type");
  rd->add_option("--type", rtype, "e.g. B3, D4, G2")->default_val("A2");
  rd->callback([&] { action = [&] { return cmd_construct_rootdatum(g, rtype); }; });

  std::string filter;
  auto* dp = app.add_subcommand("demo-paper", "replay the reference checks");
  dp->add_option("--filter", filter, "only groups whose name contains this string");
  dp->callback([&] { action = [&] { return cmd_demo(g, filter); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::GroupTooLarge) return kBudget;
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
