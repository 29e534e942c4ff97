#pragma once

#include <stdexcept>
#include <string>

namespace latkit {

enum class ErrorKind {
  GroupTooLarge,
  NotUnimodular,
  GroupMismatch,
  NotASubgroupElement,
  NotInvariant,
  NotPermutationInThisBasis,
  NotEquivariant,
  InvalidRank,
  InvalidResidue,
  InvalidParameter,
  BudgetExceeded,
  NotElementaryAbelian,
  InvalidSpec,
  HypothesesViolated,
  ParityViolation,
  InvalidPrime,
  UnsupportedType,
  InvalidInput,
  ConstructionFailed,
  EvenN,
  NotOnPositiveList,
  Overflow,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace latkit
