#include "doctest.h"
#include "latkit/constructions.hpp"
#include "latkit/errors.hpp"
#include "test_groups.hpp"

using namespace latkit;

namespace {

Section2Spec spec(std::vector<BDFactor> bd, std::vector<int> a = {}) { return Section2Spec{bd, a}; }

IntVec iv(std::initializer_list<long> v) {
  IntVec out;
  for (long x : v) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("norm quotient is the cokernel of the norm map") {
  for (const auto& g : testgroups::small_groups()) {
    GLattice j = j_gamma(g), reg = regular_lattice(g);
    const std::size_t n = g->order();
    CHECK(j.rank() + 1 == n);
    // projection Z[G] -> J sending the identity to minus the sum
    IntMatrix pr(n, n - 1);
    for (std::size_t c = 0; c + 1 < n; ++c) pr(0, c) = -1;
    for (std::size_t h = 1; h < n; ++h) pr(h, h - 1) = 1;
    CHECK(is_equivariant(reg, j, pr));
    CHECK(is_equivariant(j, testgroups::regular_mod_norm(g), IntMatrix::identity(n - 1)));
  }
}

TEST_CASE("Klein four norm quotient") {
  GLattice j = j_gamma(testgroups::klein());
  CHECK(j.rank() == 3);
  CHECK(sha2(j).factors == iv({2}));
  CHECK(sha2_by_restriction(j).factors == iv({2}));
}

TEST_CASE("partition cases") {
  CHECK_THROWS_AS(partition(spec({{Family::D, 3}})), Error);
  CHECK_THROWS_AS(partition(spec({{Family::B, 1}, {Family::D, 2}})), Error);

  auto p = partition(spec({{Family::D, 3}, {Family::B, 1}}));
  CHECK(p.unions[0] == std::vector<int>{0});
  CHECK(p.unions[1] == std::vector<int>{1});
  CHECK(p.unions[2] == std::vector<int>{2, 3});

  p = partition(spec({{Family::B, 2}}, {2}));
  CHECK(p.unions[0] == std::vector<int>{0, 1});
  CHECK(p.unions[1].empty());

  p = partition(spec({{Family::D, 4}, {Family::B, 1}}));
  CHECK(p.unions[0] == std::vector<int>{0, 1});
  CHECK(p.unions[1] == std::vector<int>{2, 3});
  CHECK(p.unions[2] == std::vector<int>{4});

  p = partition(spec({{Family::B, 1}, {Family::B, 3}}));
  CHECK(p.unions[0] == std::vector<int>{1});
  CHECK(p.unions[1] == std::vector<int>{2, 3});
  CHECK(p.unions[2] == std::vector<int>{0});

  CHECK_THROWS_AS(partition(spec({{Family::B, 1}, {Family::B, 1}, {Family::B, 1}})), Error);
  p = partition(spec({{Family::B, 1}, {Family::B, 1}, {Family::B, 1}}), true);
  CHECK(p.unions[2] == std::vector<int>{2});
}

TEST_CASE("one-vector lattice basics") {
  Section2Lattice s = section2_lattice(spec({{Family::B, 2}}, {2}));
  CHECK(s.ambient_dim == 6);
  CHECK(s.L_basis.rows() == 5);
  CHECK(s.index_over_Lprime() == 2);
  for (const auto& w : s.weyl_generators) CHECK(span_equal(s.L_basis * w, s.L_basis));
}

TEST_CASE("one-vector family reports") {
  for (const auto& sp : {spec({{Family::B, 1}}, {2}), spec({{Family::D, 3}, {Family::B, 1}}),
                         spec({{Family::D, 4}, {Family::B, 1}}), spec({{Family::B, 2}, {Family::D, 3}}, {2})}) {
    CAPTURE(sp.str());
    auto r = analyze_section2(sp);
    CHECK(r.zero_sum);
    CHECK(r.sum_formulas);
    CHECK(r.index == 2);
    CHECK(r.L0_isomorphic);
    CHECK(r.decomposition_ok);
    CHECK(r.rank_count_ok);
    CHECK(r.sha2.factors == iv({2}));
  }
  // the restriction path agrees on a small case
  auto sp = spec({{Family::D, 3}, {Family::B, 1}});
  auto part = partition(sp);
  auto emb = klein_embedding(sp, part);
  auto l = section2_lattice(sp).restricted({emb.j[0], emb.j[1]});
  CHECK(sha2_by_restriction(l).factors == iv({2}));
}

TEST_CASE("boundary partition keeps the checks") {
  auto r = analyze_section2(spec({{Family::B, 1}, {Family::B, 1}, {Family::B, 1}}), true);
  CHECK(r.zero_sum);
  CHECK(r.L0_isomorphic);
  CHECK(r.decomposition_ok);
  CHECK(r.sha2.factors == iv({2}));
}

TEST_CASE("grid size") {
  auto g = section2_grid(6);
  CHECK(g.size() >= 10);
  for (const auto& s : g) {
    CHECK(s.hypotheses_hold());
    CHECK(s.rank() <= 6);
  }
}

TEST_CASE("cyclic family generator") {
  LnuSpec a{{3}, 3, {1}};
  CHECK(w_nu(a) == iv({1, 0}));
  IntermediateLattice l = l_nu(a);
  CHECK(l.basis.rows() == 2);
  CHECK(span_equal(l.basis, l.P()));

  LnuSpec b{{3, 3}, 3, {1, 2}};
  auto q = verify_lnu_quotient(b);
  CHECK(q.expected.factors == iv({2, 2}));
  CHECK(q.ok());
  CHECK(quotient_invariants(l_nu(b).basis, l_nu(b).Q()).order() == 3);

  CHECK_THROWS_AS(l_nu(LnuSpec{{3, 4}, 2, {1, 1}}), Error);
  CHECK_THROWS_AS(l_nu(LnuSpec{{4, 4}, 4, {1, 2}}), Error);
}

TEST_CASE("big lattice and its block zero-sum part") {
  for (const auto& s : {LnuSpec{{2, 2}, 2, {1, 1}}, LnuSpec{{3, 3}, 3, {1, 2}}, LnuSpec{{2, 2, 2}, 2, {1, 1, 1}}}) {
    CAPTURE(s.str());
    auto bc = lambda_and_N(s);
    CHECK(bc.ok(s.n.size()));
  }
}

TEST_CASE("cyclic family grid") {
  auto g = lnu_grid(8);
  CHECK(g.size() > 10);
  for (const auto& s : g) {
    CAPTURE(s.str());
    CHECK(verify_lnu_quotient(s).ok());
    CHECK(lambda_and_N(s).ok(s.n.size()));
  }
}

TEST_CASE("elementary abelian subgroup of block permutations") {
  auto e = elementary_abelian_subgroup({3, 3}, 3);
  REQUIRE(e.weight.size() == 2);
  auto l = l_nu(LnuSpec{{3, 3}, 3, {1, 2}});
  for (const auto& w : e.weight) {
    CHECK(!w.is_identity());
    CHECK((w * w * w).is_identity());
    CHECK(span_equal(l.basis * w, l.basis));
    CHECK(l.weyl_word(w).has_value());
  }
  CHECK(FinGroup::close(e.weight)->order() == 9);
  CHECK(elementary_abelian_subgroup({4, 2}, 2).weight.size() == 3);
  CHECK_THROWS_AS(elementary_abelian_subgroup({3, 3}, 2), Error);
  CHECK_THROWS_AS(elementary_abelian_subgroup({4}, 4), Error);
}

TEST_CASE("Weyl words") {
  auto l = intermediate(std::vector<DynkinType>{DynkinType::make(Family::A, 2), DynkinType::make(Family::B, 2)}, {});
  auto w = l.weyl_group();
  for (std::size_t g = 0; g < w->order(); ++g) {
    IntMatrix x = w->element(g).to_int();
    auto word = l.weyl_word(x);
    REQUIRE(word.has_value());
    CHECK(l.word_matrix(*word) == x);
  }
  IntMatrix neg = IntMatrix::identity(4).scaled(-1);
  neg(2, 2) = 1;
  neg(3, 3) = 1;
  CHECK(!l.weyl_word(neg).has_value());
}
