#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "latkit/intmat.hpp"

namespace latkit {

// Small square integer matrix for group elements and action matrices.
// Products are overflow-checked; finite matrix groups have bounded entries.
class SmallMat {
 public:
  SmallMat() = default;
  explicit SmallMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  static SmallMat identity(int n);
  static SmallMat from_int(const IntMatrix& m);
  static SmallMat permutation(const std::vector<int>& images);  // row i has a 1 in column images[i]

  int dim() const { return n_; }
  int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<int64_t>& data() const { return a_; }

  SmallMat operator*(const SmallMat& o) const;
  bool operator==(const SmallMat& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const SmallMat& o) const { return !(*this == o); }
  SmallMat transpose() const;
  bool is_identity() const;
  IntMatrix to_int() const;
  std::size_t hash() const;

 private:
  int n_ = 0;
  std::vector<int64_t> a_;
};

struct SmallMatHash {
  std::size_t operator()(const SmallMat& m) const { return m.hash(); }
};

inline constexpr std::size_t kDefaultGroupCap = 20000;

// A finite group given as the closure of generator matrices.
class FinGroup {
 public:
  static std::shared_ptr<const FinGroup> close(const std::vector<IntMatrix>& gens,
                                               std::size_t cap = kDefaultGroupCap);
  static std::shared_ptr<const FinGroup> close_small(const std::vector<SmallMat>& gens,
                                                     std::size_t cap = kDefaultGroupCap);
  // trivial group acting on dimension n
  static std::shared_ptr<const FinGroup> trivial(int n = 1);

  std::size_t order() const { return elems_.size(); }
  int dim() const { return dim_; }
  std::size_t identity() const { return 0; }
  const SmallMat& element(std::size_t i) const { return elems_[i]; }
  const std::vector<std::size_t>& generators() const { return gens_; }
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t inv(std::size_t i) const { return inv_[i]; }
  std::size_t element_order(std::size_t i) const { return ord_[i]; }
  std::optional<std::size_t> index_of(const SmallMat& m) const;
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  std::size_t via(std::size_t i) const { return via_[i]; }  // position in generators()
  std::size_t power(std::size_t i, std::size_t k) const;

  bool is_abelian() const;
  // sorted element indices of the subgroup generated by the given elements
  std::vector<std::size_t> subgroup_closure(const std::vector<std::size_t>& gens) const;
  // all nontrivial cyclic subgroups, deduplicated, in order of first generator index
  std::vector<std::vector<std::size_t>> cyclic_subgroups() const;
  // representative generator per cyclic subgroup above
  std::vector<std::size_t> cyclic_subgroup_generators() const;
  // all subgroups (brute force; intended for small groups)
  std::vector<std::vector<std::size_t>> all_subgroups() const;

 private:
  int dim_ = 0;
  std::vector<SmallMat> elems_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> parent_, via_, inv_, ord_;
  std::vector<uint32_t> table_;  // filled for small groups
  std::unordered_map<SmallMat, std::size_t, SmallMatHash> index_;
  void finish();
};

using GroupPtr = std::shared_ptr<const FinGroup>;

// Row-vector convention: lattice vectors are rows, x -> x * action(g),
// and action(g) * action(h) = action(gh).
class GLattice {
 public:
  GLattice() = default;
  // images of group->generators(), extended along the closure tree and checked
  GLattice(GroupPtr group, const std::vector<IntMatrix>& generator_images);
  static GLattice from_small(GroupPtr group, const std::vector<SmallMat>& generator_images);
  // the defining representation of the group
  static GLattice natural(GroupPtr group);
  static GLattice trivial(GroupPtr group, int rank);

  int rank() const { return rank_; }
  const FinGroup& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const SmallMat& action(std::size_t g) const { return act_[g]; }
  IntMatrix action_int(std::size_t g) const { return act_[g].to_int(); }
  std::vector<IntMatrix> generator_actions() const;
  bool acts_trivially() const;
  // exhaustive check over the multiplication table
  bool check_homomorphism() const;

 private:
  GroupPtr group_;
  int rank_ = 0;
  std::vector<SmallMat> act_;
};

enum class SumMode { SameGroup, ProductGroup };

GLattice direct_sum(const GLattice& a, const GLattice& b, SumMode mode = SumMode::SameGroup);
GLattice dual(const GLattice& l);
// restrict to the subgroup generated by the listed element indices
GLattice restrict_to(const GLattice& l, const std::vector<std::size_t>& subgroup_generators);
// same, with subgroup generators given as matrices of the defining representation
GLattice restrict_to_matrices(const GLattice& l, const std::vector<IntMatrix>& subgroup_generators);
// sublattice spanned by independent rows (coordinates in l); throws NotInvariant
GLattice invariant_sublattice(const GLattice& l, const IntMatrix& rows);
// l rewritten in a new basis (rows of a unimodular matrix)
GLattice change_basis(const GLattice& l, const IntMatrix& basis);
// regular permutation lattice Z[G]
GLattice regular_lattice(GroupPtr group);
// permutation lattice Z[H\G] on right cosets of the subgroup (sorted element list)
GLattice coset_lattice(GroupPtr group, const std::vector<std::size_t>& subgroup);

struct PermutationWitness {
  IntMatrix basis;                      // rows: new basis in old coordinates
  std::vector<std::vector<int>> perm;   // perm[g][i] = j when b_i * g = b_j
};

PermutationWitness verify_permutation_basis(const GLattice& l, const IntMatrix& basis);

struct SignedPermWitness {
  std::vector<std::vector<int>> perm;   // perm[g][i] = j when e_i * g = +-e_j
  std::vector<std::vector<int>> sign;
};

std::optional<SignedPermWitness> is_sign_permutation(const GLattice& l);

class EquivariantMap {
 public:
  EquivariantMap(GLattice source, GLattice target, IntMatrix matrix);
  const GLattice& source() const { return src_; }
  const GLattice& target() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }

 private:
  GLattice src_, tgt_;
  IntMatrix m_;
};

struct QuotientReport {
  AbelianInvariants structure;
  bool trivial_action = false;
};

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& m);
// kernel rows in source coordinates, returned as a G-lattice on that basis
IntMatrix kernel_rows(const EquivariantMap& f);
GLattice kernel_lattice(const EquivariantMap& f);
IntMatrix image_rows(const EquivariantMap& f);
GLattice image_lattice(const EquivariantMap& f);
QuotientReport quotient_invariants(const EquivariantMap& f);
// L / L' for a sublattice given by rows in L coordinates
QuotientReport quotient_invariants(const GLattice& l, const IntMatrix& sub_rows);

}  // namespace latkit
