#include "latkit/errors.hpp"

namespace latkit {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::NotASubgroupElement: return "NotASubgroupElement";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotPermutationInThisBasis: return "NotPermutationInThisBasis";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::InvalidResidue: return "InvalidResidue";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotElementaryAbelian: return "NotElementaryAbelian";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::HypothesesViolated: return "HypothesesViolated";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::EvenN: return "EvenN";
    case ErrorKind::NotOnPositiveList: return "NotOnPositiveList";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace latkit
