#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/glattice.hpp"
#include "test_groups.hpp"

using namespace latkit;

TEST_CASE("close_group basics") {
  auto g = FinGroup::close({IntMatrix{{-1}}});
  CHECK(g->order() == 2);
  // W(B2) on coordinates: swap and sign change
  auto b2 = FinGroup::close({IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, 0}, {0, -1}}});
  CHECK(b2->order() == 8);
  // W(G2) = S3 x {+-1} on the zero-sum plane, written on R^3
  auto g2 = FinGroup::close({IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}},
                             IntMatrix{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}});
  CHECK(g2->order() == 12);
  CHECK_THROWS_AS(FinGroup::close({IntMatrix{{2}}}), Error);
  try {
    FinGroup::close({IntMatrix{{1, 1}, {0, 1}}}, 50);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroupTooLarge);
  }
}

TEST_CASE("group bookkeeping") {
  for (const auto& g : testgroups::small_groups()) {
    for (std::size_t i = 0; i < g->order(); ++i) {
      CHECK(g->mul(i, g->inv(i)) == 0);
      CHECK(g->power(i, g->element_order(i)) == 0);
    }
    std::size_t total = 1;
    for (const auto& c : g->cyclic_subgroups()) CHECK(g->order() % c.size() == 0);
    (void)total;
  }
}

TEST_CASE("all subgroups of small groups") {
  CHECK(testgroups::klein()->all_subgroups().size() == 5);
  CHECK(testgroups::symmetric(3)->all_subgroups().size() == 6);
  CHECK(testgroups::dihedral(4)->all_subgroups().size() == 10);
  CHECK(testgroups::elementary_abelian(2, 3)->all_subgroups().size() == 16);
}

TEST_CASE("direct sums") {
  auto triv = FinGroup::trivial();
  GLattice z = GLattice::trivial(triv, 1);
  GLattice zz = direct_sum(z, z);
  CHECK(zz.rank() == 2);
  CHECK(zz.acts_trivially());
  auto g = FinGroup::close({IntMatrix{{-1}}});
  GLattice sign = GLattice::natural(g);
  GLattice prod = direct_sum(sign, sign, SumMode::ProductGroup);
  CHECK(prod.rank() == 2);
  CHECK(prod.group().order() == 4);
  GLattice other = GLattice::natural(FinGroup::close({IntMatrix{{-1}}}));
  CHECK_THROWS_AS(direct_sum(sign, other), Error);
}

TEST_CASE("dual") {
  for (const auto& g : testgroups::small_groups()) {
    GLattice l = GLattice::natural(g);
    GLattice dd = dual(dual(l));
    for (std::size_t i = 0; i < g->order(); ++i) CHECK(dd.action(i) == l.action(i));
    GLattice r = regular_lattice(g);
    GLattice rd = dual(r);
    for (std::size_t i = 0; i < g->order(); ++i) CHECK(rd.action(i) == r.action(i));
  }
  auto s = FinGroup::close({IntMatrix{{-1}}});
  GLattice sign = GLattice::natural(s);
  CHECK(dual(sign).action(1) == sign.action(1));
}

TEST_CASE("restrict") {
  auto g = testgroups::symmetric(3);
  GLattice r = regular_lattice(g);
  GLattice t = restrict_to(r, {});
  CHECK(t.group().order() == 1);
  CHECK(t.acts_trivially());
  // Z[S3] restricted to a transposition: three free orbits of size 2
  std::size_t tr = 0;
  for (std::size_t i = 1; i < g->order(); ++i)
    if (g->element_order(i) == 2) {
      tr = i;
      break;
    }
  GLattice h = restrict_to(r, {tr});
  CHECK(h.group().order() == 2);
  auto w = is_sign_permutation(h);
  REQUIRE(w.has_value());
  int fixed = 0;
  for (int i = 0; i < h.rank(); ++i)
    if (w->perm[1][i] == i) ++fixed;
  CHECK(fixed == 0);
  CHECK_THROWS_AS(restrict_to_matrices(r, {IntMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), Error);
}

TEST_CASE("invariant sublattice") {
  auto g = FinGroup::close({IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, -1}}});
  GLattice l = GLattice::natural(g);
  GLattice full = invariant_sublattice(l, IntMatrix::identity(2));
  CHECK(full.rank() == 2);
  GLattice diag = invariant_sublattice(l, IntMatrix{{1, 1}});
  CHECK(diag.rank() == 1);
  auto sg = FinGroup::close({IntMatrix{{1, 0}, {0, -1}}});
  GLattice signs = GLattice::natural(sg);
  try {
    invariant_sublattice(signs, IntMatrix{{1, 1}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvariant);
  }
}

TEST_CASE("permutation witnesses") {
  for (const auto& g : testgroups::small_groups()) {
    if (g->order() > 24) continue;
    GLattice r = regular_lattice(g);
    CHECK(r.check_homomorphism());
    PermutationWitness w = verify_permutation_basis(r, IntMatrix::identity(r.rank()));
    CHECK(w.perm.size() == g->order());
  }
  auto s = FinGroup::close({IntMatrix{{-1}}});
  GLattice sign = GLattice::natural(s);
  CHECK_THROWS_AS(verify_permutation_basis(sign, IntMatrix::identity(1)), Error);
  CHECK(is_sign_permutation(sign).has_value());
  CHECK(is_sign_permutation(GLattice::trivial(s, 2)).has_value());
}

TEST_CASE("equivariant maps") {
  auto g = testgroups::symmetric(3);
  GLattice r = regular_lattice(g);
  GLattice z = GLattice::trivial(g, 1);
  IntMatrix aug(r.rank(), 1);
  for (int i = 0; i < r.rank(); ++i) aug(i, 0) = 1;
  EquivariantMap f(r, z, aug);
  GLattice k = kernel_lattice(f);
  GLattice im = image_lattice(f);
  CHECK(k.rank() + im.rank() == r.rank());
  QuotientReport q = quotient_invariants(f);
  CHECK(q.structure.trivial());
  EquivariantMap id(r, r, IntMatrix::identity(r.rank()));
  CHECK(kernel_lattice(id).rank() == 0);
  IntMatrix bad(r.rank(), 1);
  bad(0, 0) = 1;
  CHECK_THROWS_AS(EquivariantMap(r, z, bad), Error);
  // 2Z inside Z with trivial action
  QuotientReport q2 = quotient_invariants(z, IntMatrix{{2}});
  CHECK(q2.structure.factors == IntVec{2});
  CHECK(q2.trivial_action);
}

TEST_CASE("homomorphism property of constructed lattices") {
  for (const auto& g : testgroups::small_groups()) {
    CHECK(GLattice::natural(g).check_homomorphism());
    CHECK(dual(GLattice::natural(g)).check_homomorphism());
    auto subs = g->all_subgroups();
    for (const auto& h : subs) CHECK(coset_lattice(g, h).check_homomorphism());
  }
}
