#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "latkit/cohomology.hpp"
#include "latkit/glattice.hpp"
#include "latkit/rootdata.hpp"

namespace latkit {

// Z[G] modulo the norm element, in the basis of images of the nontrivial elements.
GLattice j_gamma(GroupPtr group);

// ---------------------------------------------------------------------------
// One-vector family: L = <M_D + Q_Delta, v> for B/D factors and A_{2n-1} factors.

struct BDFactor {
  Family family = Family::B;  // B (l >= 1) or D (l >= 2)
  int l = 1;
};

struct Section2Spec {
  std::vector<BDFactor> bd_factors;
  std::vector<int> a_factors;  // n for a factor of type A_{2n-1}, n >= 2

  void validate() const;          // InvalidSpec
  bool hypotheses_hold() const;   // m + mu >= 2, and not all B1/D2 when mu = 0
  int coordinate_count() const;   // |S|
  int rank() const;               // |S| + sum (2n - 1)
  std::string str() const;
};

struct Partition3 {
  // parts[i][k] = coordinate indices of S_i placed in part k (global indices into S)
  std::vector<std::array<std::vector<int>, 3>> parts;
  std::array<std::vector<int>, 3> unions;
};

// Deterministic partition following the case order of the existence proof.
// allow_boundary also covers m >= 3 factors all of type B1/D2 with mu = 0.
Partition3 partition(const Section2Spec& spec, bool allow_boundary = false);

// Vectors are written in doubled ambient coordinates: |S| coordinates e_s,
// then 2n coordinates per A factor. Doubling keeps v integral.
struct Section2Lattice {
  Section2Spec spec;
  int ambient_dim = 0;
  std::vector<int> a_offsets;  // first ambient coordinate of each A factor
  IntMatrix L_basis;           // HNF rows, doubled coordinates
  IntMatrix Lprime_basis;
  IntVec v;                    // doubled
  std::vector<IntMatrix> weyl_generators;  // ambient signed permutation matrices

  std::size_t index_over_Lprime() const;
  // L as a lattice for the group generated by ambient matrices
  GLattice restricted(const std::vector<IntMatrix>& ambient_generators) const;
};

Section2Lattice section2_lattice(const Section2Spec& spec);

struct KleinEmbedding {
  std::array<IntMatrix, 3> j;  // ambient matrices of the three involutions
};

KleinEmbedding klein_embedding(const Section2Spec& spec, const Partition3& part);

struct Section2Report {
  Section2Spec spec;
  Partition3 part;
  KleinEmbedding emb;
  std::array<IntVec, 3> vk;      // images of v (doubled)
  bool zero_sum = false;         // v + v1 + v2 + v3 = 0
  bool sum_formulas = false;     // the three displayed sums v + v_k
  std::size_t index = 0;         // [L : L']
  IntMatrix L0_basis;            // rows v1, v2, v3 (doubled)
  IntMatrix j_to_L0;             // basis map from the norm quotient onto L0
  bool L0_isomorphic = false;    // map is unimodular and equivariant
  IntMatrix L1_basis;            // kernel of the pair-sum map
  std::vector<IntVec> complements;  // rank-one summands X_s and Xi
  bool decomposition_ok = false;    // HNF equality with L1
  bool rank_count_ok = false;
  AbelianInvariants sha2;
};

Section2Report analyze_section2(const Section2Spec& spec, bool allow_boundary = false,
                                const CohomologyOptions& opt = {});

// All specs satisfying the hypotheses with rank <= max_rank.
std::vector<Section2Spec> section2_grid(int max_rank);

// ---------------------------------------------------------------------------
// Cyclic family L_nu over A_{n_1 - 1} x ... x A_{n_r - 1}.

struct LnuSpec {
  std::vector<int> n;
  int d = 2;
  std::vector<int> nu;

  void validate() const;  // InvalidSpec
  std::string str() const;
};

// L_nu as an intermediate lattice; checks the generator description against the preimage one.
IntermediateLattice l_nu(const LnuSpec& spec);
// the generator w_nu in P coordinates
IntVec w_nu(const LnuSpec& spec);

struct QuotientCheck {
  AbelianInvariants lhs;       // L_nu / T L_1
  AbelianInvariants rhs;       // Q / T Q
  AbelianInvariants expected;  // sum over i >= 2 of (Z/nu_i)^(n_i - 1)
  // Q + T L_1 = L_nu and Q meet T L_1 = T Q, so the induced W-map Q/TQ -> L_nu/T L_1 is bijective
  bool natural_iso = false;
  bool basis_generates = false;  // the explicit basis of T L_1 from the proof
  bool ok() const { return lhs == rhs && rhs == expected && natural_iso && basis_generates; }
};

QuotientCheck verify_lnu_quotient(const LnuSpec& spec);

struct BigLatticeCheck {
  // scaled ambient coordinates (multiplied by d)
  IntMatrix Lambda;   // <Qbar, wbar>
  IntMatrix N;        // Lambda intersected with the block zero-sum space
  IntMatrix phi_L;    // image of L_1
  bool phi_equals_N = false;
  std::size_t quotient_rank = 0;  // rank(Lambda / N)
  bool quotient_free = false;
  bool trivial_action = false;
  bool ok(std::size_t r) const {
    return phi_equals_N && quotient_rank + 1 == r && quotient_free && trivial_action;
  }
};

BigLatticeCheck lambda_and_N(const LnuSpec& spec);

struct ElementarySubgroup {
  int p = 0;
  std::vector<IntMatrix> ambient;  // permutation matrices on the concatenated coordinates
  std::vector<IntMatrix> weight;   // the same elements on P coordinates of the A factors
};

ElementarySubgroup elementary_abelian_subgroup(const std::vector<int>& n, int p);

std::vector<LnuSpec> lnu_grid(int max_total);

}  // namespace latkit
