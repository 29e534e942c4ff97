#pragma once

#include <memory>
#include <string>
#include <vector>

#include "latkit/cohomology.hpp"
#include "latkit/resolutions.hpp"
#include "latkit/rootdata.hpp"

namespace latkit {

struct ClassifyOptions {
  std::size_t max_group_order = kDefaultGroupCap;
  CohomologyOptions cohomology;
  // bound on Klein subgroups tried when looking for a nonzero Sha^2
  std::size_t klein_search_limit = 3000;
};

// Factors and subgroup of F, with residue tuples flattened over the F components.
struct LatticeSpec {
  std::vector<DynkinType> factors;
  std::vector<IntVec> S;

  IntermediateLattice build() const { return intermediate(factors, S); }
  std::string str() const;
};

// D2 factors are replaced by two A1 factors; residues are rewritten accordingly.
struct Normalized {
  LatticeSpec spec;
  std::vector<std::vector<std::size_t>> from_input;  // input factor -> normalized indices
};
Normalized normalize(const LatticeSpec& input);

// Q <= L <= P restricted to the factors in `subset`: L meet P_A, as an intermediate lattice
IntermediateLattice sublattice(const IntermediateLattice& l, const std::vector<std::size_t>& subset);
LatticeSpec spec_of(const IntermediateLattice& l);

// How a single-factor intermediate lattice sits between Q and P.
enum class FactorLattice { Q, P, Coordinate, Middle, HalfSpin, Other };
const char* factor_lattice_name(FactorLattice k);
FactorLattice factor_lattice(const RootFactor& f, const IntMatrix& basis);
bool on_positive_list(const DynkinType& t, FactorLattice k);

struct PairMatching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool consistent = true;  // no factor lies in two pairs
};
PairMatching pair_matching(const IntermediateLattice& l);

enum class CertKind { PositiveDecomposition, NegativeSha, NegativeByReduction, CitedLeaf };
const char* cert_kind_name(CertKind k);

enum class BlockKind { Simple, So4Pair };

struct BlockCert {
  BlockKind kind = BlockKind::Simple;
  std::vector<std::size_t> indices;  // factor indices of the certificate's lattice
  PositiveResolution resolution;
};

struct Certificate {
  CertKind kind = CertKind::CitedLeaf;
  LatticeSpec lattice;

  // PositiveDecomposition
  std::vector<BlockCert> blocks;

  // NegativeSha: subgroup of W on P coordinates, with Weyl words
  std::vector<IntMatrix> subgroup;
  std::vector<std::vector<int>> words;
  AbelianInvariants sha2;
  std::string witness;  // how the subgroup was found

  // NegativeByReduction: the child is L meet P_A for the listed factors
  std::string step;
  std::vector<std::size_t> subset;
  std::shared_ptr<Certificate> child;

  // CitedLeaf
  std::string reason;

  std::vector<std::string> notes;

  bool positive() const { return kind == CertKind::PositiveDecomposition; }
  // true when every leaf below is a recomputed Sha^2 witness or a verified resolution
  bool machine_verified() const;
};

struct Verdict {
  LatticeSpec input;
  bool quasi_permutation = false;
  Certificate certificate;  // over the normalized lattice
};

Verdict classify(const LatticeSpec& input, const ClassifyOptions& opt = {});
Certificate classify_lattice(const IntermediateLattice& l, const ClassifyOptions& opt = {});

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> log;
};

VerifyReport verify_certificate(const Certificate& c, const ClassifyOptions& opt = {});
VerifyReport verify_verdict(const Verdict& v, const ClassifyOptions& opt = {});

}  // namespace latkit
