#pragma once

#include <string>
#include <vector>

#include "latkit/glattice.hpp"
#include "latkit/rootdata.hpp"

namespace latkit {

// Left:  0 -> L -> P -> P' -> 0 (L is the left term)
// Right: 0 -> P' -> P -> L -> 0 (L is the right term)
enum class ResolutionShape { Left, Right };
const char* shape_name(ResolutionShape s);

struct ExactSeq {
  GLattice left, mid, right;  // over one group
  IntMatrix iota;             // left -> mid, rows index the left basis
  IntMatrix pi;               // mid -> right
};

struct PositiveResolution {
  ResolutionShape shape = ResolutionShape::Left;
  ExactSeq seq;
  IntMatrix mid_basis;    // permutation basis of the middle term
  IntMatrix outer_basis;  // permutation basis of the other non-L term
  std::string method;

  const GLattice& lattice() const { return shape == ResolutionShape::Left ? seq.left : seq.right; }
  const GLattice& outer() const { return shape == ResolutionShape::Left ? seq.right : seq.left; }
};

struct ResolutionCheck {
  bool same_group = false;
  bool equivariant = false;
  bool injective = false;
  bool saturated = false;
  bool exact_middle = false;
  bool surjective = false;
  bool permutation_witnesses = false;
  std::string failure;  // first failed condition, empty when ok
  bool ok() const { return failure.empty(); }
};

ResolutionCheck check_resolution(const PositiveResolution& r);

// dual sequence; Left and Right swap
PositiveResolution dual_resolution(const PositiveResolution& r);

// Pull a resolution back along a homomorphism: generator k of `group` maps to
// element image_of_generator[k] of the resolution's group.
PositiveResolution pull_back(const PositiveResolution& r, GroupPtr group,
                             const std::vector<std::size_t>& image_of_generator);

// L with a basis (rows, L coordinates) in which the action is by signed permutations:
// L -> Z[+-basis] -> Z[lines].
PositiveResolution sign_perm_resolution(const GLattice& l, const IntMatrix& basis);
PositiveResolution sign_perm_resolution(const GLattice& l);

// Weight lattice of A_{n-1} under S_n x S_2 (n odd), as the quotient of the
// rank 2n+1 permutation lattice. The dual gives the root lattice on the left.
PositiveResolution pgl_odd_outer_resolution(int n);
PositiveResolution pgl_odd_outer_root_resolution(int n);

// any lattice of rank 1 or 2
PositiveResolution rank_le2_resolution(const GLattice& l);

// simple factor on the positive list, or an A1 x A1 pair with the diagonal residue
PositiveResolution block_resolution(const IntermediateLattice& block, std::size_t cap = kDefaultGroupCap);

}  // namespace latkit
