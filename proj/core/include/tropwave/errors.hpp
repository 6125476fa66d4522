#pragma once

#include <stdexcept>
#include <string>

namespace tropwave {

enum class ErrorCode {
  DistanceZero,
  BadDirection,
  TooLarge,
  OutsideDomain,
  NotAdmissible,
  UnboundedMonomial,
  DomainMismatch,
  BoundaryMismatch,
  NegativeIncrement,
  EmptyLevelSet,
  HypothesisViolated,
  EpsilonTooLarge,
  NotNice,
  NotUnimodular,
  CertificationFailed,
  NotAVertex,
  UnclassifiableSide,
  ZeroPolynomial,
  ParseError,
  PreconditionViolated,
  Unsupported,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tropwave
