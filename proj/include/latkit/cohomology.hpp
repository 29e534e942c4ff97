#pragma once

#include <cstdint>
#include <vector>

#include "latkit/glattice.hpp"
#include "latkit/intmat.hpp"

namespace latkit {

inline constexpr std::size_t kDefaultMaxCells = 50'000'000;

struct CohomologyOptions {
  std::size_t max_cells = kDefaultMaxCells;  // dense matrix cells per computation
  bool parallel = true;                      // OpenMP kernels; false gives the serial reference
};

enum class Resolution { Bar, PeriodicTensor };
const char* resolution_name(Resolution r);

struct CohomologyResult {
  int degree = 0;
  AbelianInvariants group;
  Resolution resolution_used = Resolution::Bar;
};

// Dense int64 matrix used by the cochain kernels.
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<int64_t> a;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  IntMatrix to_int() const;
};

// Throws BudgetExceeded when rows*cols exceeds the budget.
void check_budget(std::size_t rows, std::size_t cols, const CohomologyOptions& opt);

// Nontrivial torsion invariants of span(rows) inside Z^cols, assuming the
// torsion is killed by `exponent`. Works prime by prime over Z/p^k.
IntVec torsion_invariants_mod(const DenseMatrix& m, const Int& exponent, bool parallel);

// Matrix of the normalized bar coboundary C^{n-1} -> C^n for the subgroup with
// the given sorted element list (must contain the identity). Rows index
// C^{n-1} blocks (tuple * rank + coordinate), columns index C^n.
DenseMatrix bar_coboundary(const GLattice& l, const std::vector<std::size_t>& elems, int n,
                           const CohomologyOptions& opt);

// H^n(G, L) for n = 1, 2, 3 via the normalized bar complex.
CohomologyResult h_n(const GLattice& l, int degree, const CohomologyOptions& opt = {});
// same, checking that L is a lattice for the given group (GroupMismatch)
CohomologyResult h_n(const FinGroup& group, const GLattice& l, int degree,
                     const CohomologyOptions& opt = {});

// Basis gamma_1..gamma_m of an elementary abelian p-group; NotElementaryAbelian otherwise.
struct ElementaryAbelianData {
  int p = 0;
  std::vector<std::size_t> basis;
};
ElementaryAbelianData elementary_abelian_basis(const FinGroup& g);

// Coboundary of the tensor product of periodic resolutions, degree n-1 -> n.
DenseMatrix periodic_coboundary(const GLattice& l, const ElementaryAbelianData& e, int n,
                                const CohomologyOptions& opt);
CohomologyResult periodic_h_n(const GLattice& l, int degree, const CohomologyOptions& opt = {});

// Sha^2(G, L): kernel of H^2(G, L) -> prod over cyclic C of H^2(C, L).
// Computed as the dual cokernel of corestriction on H_1(-, L^dual).
AbelianInvariants sha2(const GLattice& l, const CohomologyOptions& opt = {});
// Reference: restrict cocycle representatives to each cyclic subgroup and
// project with the Smith data of the subgroup complex. Exact arithmetic; small cases.
AbelianInvariants sha2_by_restriction(const GLattice& l, const CohomologyOptions& opt = {});

}  // namespace latkit
