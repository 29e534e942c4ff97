#include "doctest.h"
#include "latkit/errors.hpp"
#include "latkit/rootdata.hpp"

using namespace latkit;

namespace {

std::vector<DynkinType> small_types() {
  std::vector<DynkinType> out;
  for (int n = 1; n <= 4; ++n) out.push_back(DynkinType::make(Family::A, n));
  for (int n = 1; n <= 4; ++n) out.push_back(DynkinType::make(Family::B, n));
  for (int n = 2; n <= 4; ++n) out.push_back(DynkinType::make(Family::C, n));
  for (int n = 2; n <= 5; ++n) out.push_back(DynkinType::make(Family::D, n));
  out.push_back(DynkinType::make(Family::G2, 2));
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidInput;
}

// span of the lattice rows (P coordinates) pushed to ambient space
IntMatrix ambient_rows(const IntermediateLattice& l) {
  RatMatrix a = RatMatrix(l.basis) * l.factors[0].weights_ambient;
  REQUIRE(a.is_integral());
  return a.to_int();
}

}  // namespace

TEST_CASE("Weyl group orders") {
  for (const auto& t : small_types()) {
    RootFactor f = build_factor(t);
    CAPTURE(t.name());
    CHECK(FinGroup::close(f.weyl_generators)->order() == f.weyl_order());
    CHECK(FinGroup::close(f.weyl_ambient)->order() == f.weyl_order());
  }
}

TEST_CASE("fundamental group matches the components") {
  for (const auto& t : small_types()) {
    RootFactor f = build_factor(t);
    CAPTURE(t.name());
    CHECK(abs(det(f.cartan)) == f.f_order());
    CHECK(f.fundamental_group.order() == f.f_order());
    CHECK(weyl_trivial_on_F(f));
    for (const auto& c : f.components) {
      IntMatrix l = IntMatrix::row_vector(c.lift);
      CHECK(span_contains(f.Q_basis, l.scaled(c.order)));
      for (int d = 1; d < c.order; ++d) CHECK_FALSE(span_contains(f.Q_basis, l.scaled(d)));
    }
  }
  CHECK(build_factor(DynkinType::make(Family::A, 2)).fundamental_group.factors == IntVec{3});
  CHECK(build_factor(DynkinType::make(Family::D, 4)).fundamental_group.factors == IntVec{2, 2});
  CHECK(build_factor(DynkinType::make(Family::D, 5)).fundamental_group.factors == IntVec{4});
  CHECK(build_factor(DynkinType::make(Family::G2, 2)).fundamental_group.trivial());
}

TEST_CASE("weight coordinates agree with the ambient realization") {
  for (const auto& t : small_types()) {
    RootFactor f = build_factor(t);
    CAPTURE(t.name());
    // the roots in weight coordinates are the Cartan rows
    CHECK(RatMatrix(f.cartan) * f.weights_ambient == f.roots_ambient);
    for (int j = 0; j < f.rank; ++j) {
      RatMatrix lhs = RatMatrix(f.weyl_generators[j]) * f.weights_ambient;
      RatMatrix rhs = f.weights_ambient * RatMatrix(f.weyl_ambient[j]);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("low rank coincidences") {
  auto K = [](Family fam, int n) { return build_factor(DynkinType::make(fam, n)).cartan; };
  CHECK(K(Family::B, 1) == K(Family::A, 1));
  CHECK(K(Family::D, 2) == IntMatrix{{2, 0}, {0, 2}});
  CHECK(K(Family::B, 2) == IntMatrix{{2, -2}, {-1, 2}});
  CHECK(K(Family::C, 2) == IntMatrix{{2, -1}, {-2, 2}});
  CHECK(K(Family::B, 2) == K(Family::C, 2).transpose());
  // D3 with its nodes relabelled is A3
  IntMatrix a3 = K(Family::A, 3), d3 = K(Family::D, 3);
  int perm[3] = {1, 0, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a3(i, j) == d3(perm[i], perm[j]));
}

TEST_CASE("intermediate lattices") {
  auto a2 = DynkinType::make(Family::A, 2);
  IntermediateLattice q = intermediate({a2}, {});
  IntermediateLattice p = intermediate({a2}, {IntVec{1}});
  CHECK(quotient_invariants(p.basis, q.basis).order() == 3);
  CHECK(span_equal(p.basis, IntMatrix::identity(2)));
  CHECK(quotient_matches_S(p));
  CHECK(quotient_matches_S(q));
  CHECK(intermediate({a2}, {IntVec{5}}).S_generators[0] == IntVec{2});

  IntermediateLattice so4 = char_lattice(CharGroup::SO, 4);
  CHECK(so4.total_rank == 2);
  CHECK(quotient_invariants(so4.basis, so4.Q()).order() == 2);
  CHECK(so4.lattice().group().order() == 4);

  for (int k = 2; k <= 5; ++k) {
    auto d = DynkinType::make(Family::D, k);
    RootFactor f = build_factor(d);
    IntermediateLattice l = intermediate(std::vector<RootFactor>{f}, {*f.coordinate_residue});
    CAPTURE(k);
    CHECK(quotient_matches_S(l));
    // the coordinate lattice is Z^k in the ambient space
    CHECK(span_equal(ambient_rows(l), IntMatrix::identity(k)));
    GLattice gl = l.lattice();
    CHECK(gl.group().order() == f.weyl_order());
    CHECK(gl.check_homomorphism());
  }

  auto mixed = intermediate({DynkinType::make(Family::D, 4), DynkinType::make(Family::A, 3)},
                            {IntVec{1, 1, 2}, IntVec{0, 1, 0}});
  CHECK(mixed.component_orders() == std::vector<int>{2, 2, 4});
  CHECK(quotient_matches_S(mixed));
  for (const auto& s : mixed.S_generators) CHECK(mixed.residue_of(mixed.lift_of(s)) == s);
  for (std::size_t i = 0; i < mixed.basis.rows(); ++i) {
    IntVec r = mixed.residue_of(mixed.basis.row(i));
    CHECK(r.size() == 3);
  }

  CHECK(kind_of([&] { intermediate({a2}, {IntVec{1, 0}}); }) == ErrorKind::InvalidResidue);
}

TEST_CASE("classical character lattices") {
  for (int n = 1; n <= 4; ++n) {
    // SO(2n+1): the root lattice of B_n is Z^n
    IntermediateLattice so = char_lattice(CharGroup::SO, 2 * n + 1);
    CHECK(span_equal(ambient_rows(so), IntMatrix::identity(n)));
    if (n >= 2) {
      // Sp(2n): the weight lattice of C_n is Z^n
      IntermediateLattice sp = char_lattice(CharGroup::Sp, 2 * n);
      CHECK(span_equal(ambient_rows(sp), IntMatrix::identity(n)));
    }
  }
  CHECK(char_lattice(CharGroup::Sp, 2).factors[0].type == DynkinType::make(Family::A, 1));
  CHECK(span_equal(char_lattice(CharGroup::SL, 4).basis, IntMatrix::identity(3)));
  CHECK(span_equal(char_lattice(CharGroup::PGL, 4).basis,
                   build_factor(DynkinType::make(Family::A, 3)).cartan));
  CHECK(char_lattice(CharGroup::G2, 2).total_rank == 2);
  CHECK(kind_of([] { char_lattice(CharGroup::SO, 2); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { char_lattice(CharGroup::Sp, 3); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("parsing and rank checks") {
  CHECK(parse_dynkin("b3") == DynkinType::make(Family::B, 3));
  CHECK(parse_dynkin("G2").rank() == 2);
  CHECK(kind_of([] { parse_dynkin("E6"); }) == ErrorKind::UnsupportedType);
  CHECK(kind_of([] { parse_dynkin("F4"); }) == ErrorKind::UnsupportedType);
  CHECK(kind_of([] { DynkinType::make(Family::C, 1); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([] { DynkinType::make(Family::D, 1); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([] { DynkinType::make(Family::A, 0); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([] { parse_dynkin("Q2"); }) == ErrorKind::InvalidInput);
  CHECK(parse_char_group("sp") == CharGroup::Sp);
}
