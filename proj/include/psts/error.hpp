#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psts {

enum class ErrorKind {
  RepeatedPointInBlock,
  PairInTwoBlocks,
  PointOutOfRange,
  OrderTooLarge,
  SequenceNotPermutation,
  DevelopmentCollision,
  SizeTooSmall,
  PreconditionViolated,
  OrderTooSmall,
  PartContainsWholeBlock,
  WrongCardinality,
  NotSequenceableSystem,
  BudgetExhausted,
  NoAdmissibleLabeling,
  ResidualNotAdmissible,
  RepairFailed,
  CertificateFailure,
  VerificationFailure,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI, the Python module) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace psts
