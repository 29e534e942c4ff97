#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/resolutions.hpp"
#include "test_groups.hpp"

using namespace latkit;

namespace {

IntermediateLattice simple(Family f, int n, std::vector<IntVec> s = {}) {
  return intermediate(std::vector<DynkinType>{DynkinType::make(f, n)}, s);
}

IntVec iv(std::initializer_list<long> v) {
  IntVec out;
  for (long x : v) out.push_back(x);
  return out;
}

void check_ok(const PositiveResolution& r) {
  auto c = check_resolution(r);
  CAPTURE(r.method);
  CAPTURE(c.failure);
  CHECK(c.ok());
}

}  // namespace

TEST_CASE("sign lattice of rank one") {
  auto r = block_resolution(simple(Family::B, 1));
  check_ok(r);
  CHECK(r.shape == ResolutionShape::Left);
  CHECK(r.seq.mid.rank() == 2);
  CHECK(r.seq.right.rank() == 1);
  CHECK(r.seq.iota == IntMatrix{{1, -1}});
}

TEST_CASE("signed permutation resolutions") {
  for (int n = 1; n <= 4; ++n) {
    auto r = block_resolution(simple(Family::B, n));
    check_ok(r);
    CHECK(r.seq.mid.rank() == 2 * n);
  }
  for (int n = 3; n <= 4; ++n) {
    auto d = simple(Family::D, n);
    auto so = intermediate(d.factors, {*d.factors[0].coordinate_residue});
    auto r = block_resolution(so);
    check_ok(r);
    CHECK(r.method.rfind("sign_perm", 0) == 0);
  }
  check_ok(block_resolution(simple(Family::C, 3, {iv({1})})));
}

TEST_CASE("pair of rank-one factors") {
  auto a1 = DynkinType::make(Family::A, 1);
  auto so4 = intermediate(std::vector<DynkinType>{a1, a1}, {iv({1, 1})});
  auto r = block_resolution(so4);
  check_ok(r);
  CHECK(r.method == "so4_pair");
  CHECK_THROWS_AS(block_resolution(intermediate(std::vector<DynkinType>{a1, a1}, {})), Error);
}

TEST_CASE("odd outer resolution of the weight lattice") {
  for (int n : {3, 5, 7}) {
    auto r = pgl_odd_outer_resolution(n);
    check_ok(r);
    CHECK(r.shape == ResolutionShape::Right);
    CHECK(r.seq.mid.rank() == 2 * n + 1);
    CHECK(r.seq.left.rank() == n + 2);
    CHECK(r.seq.right.rank() == n - 1);
    auto d = dual_resolution(r);
    check_ok(d);
    CHECK(d.shape == ResolutionShape::Left);
    CHECK(d.lattice().rank() == n - 1);
    CHECK(d.seq.right.rank() == n + 2);
  }
  CHECK_THROWS_AS(pgl_odd_outer_resolution(4), Error);
  try {
    pgl_odd_outer_resolution(4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EvenN);
  }
}

TEST_CASE("dual of the weight lattice is the zero-sum lattice") {
  // Q(A2) as zero-sum vectors of Z^3 under S3 x S2 maps onto the dual term
  auto d = pgl_odd_outer_root_resolution(3);
  const GLattice& q = d.lattice();
  CHECK(q.group().order() == 12);
  // the central element acts by -1
  bool has_minus = false;
  for (std::size_t g = 0; g < q.group().order(); ++g)
    if (q.action_int(g) == IntMatrix::identity(2).scaled(-1)) has_minus = true;
  CHECK(has_minus);
}

TEST_CASE("rank two lattices") {
  for (auto l : {simple(Family::G2, 2), simple(Family::A, 2, {iv({1})}), simple(Family::B, 2, {iv({1})}),
                 simple(Family::C, 2), simple(Family::A, 2), simple(Family::B, 2)}) {
    auto r = rank_le2_resolution(l.lattice());
    check_ok(r);
  }
  CHECK(rank_le2_resolution(simple(Family::G2, 2).lattice()).method == "rank_le2/hexagon");
  CHECK(rank_le2_resolution(simple(Family::B, 2, {iv({1})}).lattice()).method == "rank_le2/square");
  // square group in a skew basis
  IntMatrix b{{1, 1}, {0, 1}};
  IntMatrix r90{{0, 1}, {-1, 0}}, refl{{1, 0}, {0, -1}};
  auto g = FinGroup::close({r90, refl});
  IntMatrix bi = inverse_unimodular(b);
  GLattice skew(g, {bi * r90 * b, bi * refl * b});
  check_ok(rank_le2_resolution(skew));
  check_ok(rank_le2_resolution(GLattice::trivial(testgroups::cyclic(3), 1)));
  check_ok(rank_le2_resolution(GLattice::trivial(testgroups::cyclic(3), 2)));
  CHECK_THROWS_AS(rank_le2_resolution(GLattice::trivial(testgroups::cyclic(2), 3)), Error);
}

TEST_CASE("block dispatch") {
  auto qa2 = block_resolution(simple(Family::A, 2));
  check_ok(qa2);
  auto qd3 = block_resolution(simple(Family::D, 3));
  check_ok(qd3);
  CHECK(qd3.method == "augmentation");
  CHECK(qa2.method == "augmentation");
  CHECK(qa2.seq.mid.rank() == 3);
  check_ok(block_resolution(simple(Family::A, 4)));
  check_ok(block_resolution(simple(Family::A, 3, {iv({2})})));
  check_ok(block_resolution(simple(Family::A, 2, {iv({1})})));
  check_ok(block_resolution(simple(Family::G2, 2)));
  // both half-spin lattices of D4
  check_ok(block_resolution(simple(Family::D, 4, {iv({0, 1})})));
  check_ok(block_resolution(simple(Family::D, 4, {iv({1, 1})})));
  for (auto bad : {simple(Family::B, 3, {iv({1})}), simple(Family::A, 3, {iv({1})}), simple(Family::D, 4),
                   simple(Family::C, 3), simple(Family::A, 3)}) {
    // A3 with L = Q goes through the augmentation sequence
    if (bad.factors[0].type.family == Family::A && bad.S_generators.empty()) {
      check_ok(block_resolution(bad));
      continue;
    }
    try {
      block_resolution(bad);
      FAIL("expected NotOnPositiveList");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotOnPositiveList);
    }
  }
}

TEST_CASE("tampered maps are rejected") {
  auto r = block_resolution(simple(Family::B, 2));
  auto t = r;
  t.seq.pi(0, 0) += 1;
  CHECK(!check_resolution(t).ok());
  t = r;
  t.seq.iota = t.seq.iota.scaled(2);
  CHECK(!check_resolution(t).ok());
  t = r;
  t.mid_basis(0, 0) = 2;
  CHECK(!check_resolution(t).ok());
}
