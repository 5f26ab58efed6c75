#pragma once

#include <stdexcept>
#include <string>

namespace cluster {

enum class ErrorKind {
  ContextMismatch,
  NotDivisible,
  NonInvertibleImage,
  NotPointed,
  IndexOutOfRange,
  UnsignedColumn,
  NonSkewSymmetrizable,
  NotFound,
  NotAcyclic,
  NotAffineType,
  HeightBoundTooSmall,
  NegativeInput,
  NotInImaginaryWall,
  NotMaximal,
  NotMember,
  IdentityViolated,
  NonTerminating,
  BudgetExceeded,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cluster
