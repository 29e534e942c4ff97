#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latkit/glattice.hpp"
#include "latkit/intmat.hpp"

namespace latkit {

enum class Family { A, B, C, D, G2 };

// Simple Dynkin type. A_n, B_n, C_n, D_n have rank n; G2 has rank 2.
struct DynkinType {
  Family family = Family::A;
  int n = 1;

  static DynkinType make(Family f, int n);  // throws InvalidRank
  int rank() const { return family == Family::G2 ? 2 : n; }
  std::string name() const;
  bool operator==(const DynkinType& o) const { return family == o.family && n == o.n; }
  bool operator<(const DynkinType& o) const {
    return family != o.family ? family < o.family : n < o.n;
  }
};

// "A".."D", "G2"/"G"; E and F families raise UnsupportedType.
Family parse_family(const std::string& s);
std::string family_name(Family f);
DynkinType parse_dynkin(const std::string& s);  // e.g. "B3", "G2"

// One cyclic component of F = P/Q with its chosen lift to P.
struct FComponent {
  int order = 1;
  IntVec lift;  // P coordinates
};

// Bourbaki realization of a simple root system.
// Lattice coordinates are taken in the fundamental-weight basis of P.
struct RootFactor {
  DynkinType type;
  int rank = 0;
  int ambient_dim = 0;

  // ambient metadata: rows are vectors in R^ambient_dim
  RatMatrix roots_ambient;    // simple roots
  RatMatrix weights_ambient;  // fundamental weights
  std::vector<IntMatrix> weyl_ambient;

  IntMatrix cartan;   // row j = simple root j in P coordinates
  IntMatrix Q_basis;  // equals cartan
  IntMatrix P_basis;  // identity
  std::vector<IntMatrix> weyl_generators;  // reflections on P coordinates

  AbelianInvariants fundamental_group;
  std::vector<FComponent> components;
  // residue tuple of the coordinate lattice X(SO_2n) for type D
  std::optional<IntVec> coordinate_residue;

  std::size_t weyl_order() const;  // classical formula
  int f_order() const;
};

RootFactor build_factor(const DynkinType& t);

// Q <= L <= P for a product of simple factors; L/Q = S.
struct IntermediateLattice {
  std::vector<RootFactor> factors;
  std::vector<IntVec> S_generators;  // flat residue tuples, reduced
  std::vector<std::size_t> offsets;          // P coordinate offset per factor
  std::vector<std::size_t> residue_offsets;  // component offset per factor
  std::size_t total_rank = 0;
  IntMatrix basis;  // HNF rows in P coordinates
  std::vector<IntMatrix> weyl_generators;  // block matrices on P coordinates

  IntMatrix Q() const;  // block root lattice rows
  IntMatrix P() const { return IntMatrix::identity(total_rank); }
  std::vector<int> component_orders() const;
  // action of each Weyl generator on the basis of L
  std::vector<IntMatrix> action_generators() const;
  // closes the product Weyl group (capped) and returns L as a W-lattice
  GLattice lattice(std::size_t cap = kDefaultGroupCap) const;
  // the group acting on P coordinates
  GroupPtr weyl_group(std::size_t cap = kDefaultGroupCap) const;
  // residue tuple of a vector of P (must be integral)
  IntVec residue_of(const IntVec& p_coords) const;
  // lift of a residue tuple to P
  IntVec lift_of(const IntVec& residues) const;
  // L as a lattice for the group generated by the given P-coordinate matrices
  GLattice restricted(const std::vector<IntMatrix>& p_generators,
                      std::size_t cap = kDefaultGroupCap) const;
  // reduced word (indices into weyl_generators) for a P-coordinate matrix;
  // empty optional when the matrix is not in the Weyl group
  std::optional<std::vector<int>> weyl_word(const IntMatrix& x) const;
  IntMatrix word_matrix(const std::vector<int>& word) const;
};

IntermediateLattice intermediate(const std::vector<RootFactor>& factors,
                                 const std::vector<IntVec>& S_generators);
IntermediateLattice intermediate(const std::vector<DynkinType>& types,
                                 const std::vector<IntVec>& S_generators);

// P-coordinate matrix of an ambient linear map preserving the root system
// (throws InvalidInput when it is not integral on P)
IntMatrix ambient_to_weight(const RootFactor& f, const IntMatrix& ambient);

// checks used by tests and verification
bool weyl_trivial_on_F(const RootFactor& f);
bool quotient_matches_S(const IntermediateLattice& l);

enum class CharGroup { SO, Sp, PGL, SL, G2 };
CharGroup parse_char_group(const std::string& s);
IntermediateLattice char_lattice(CharGroup g, int param);

}  // namespace latkit
