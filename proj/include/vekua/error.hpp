#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vekua {

enum class ErrorCode {
  InvalidArgument = 1,
  InvalidDomain,
  SpacingTooCoarse,
  EmptyIntersection,
  DomainSingularity,
  NuOutOfRange,
  SigmaNonpositive,
  MissingNeighbor,
  TargetOutsideDomain,
  EmptyDomain,
  NoConvergence,
  SingularWeight,
  NotHolomorphic,
  RadiusOutOfRange,
  InterpolationOutsideGrid,
  DomainNotInRightHalfPlane,
  DiscIntersectsDomain,
  BranchCutCrossesDomain,
  ImageOutsideDomain,
  NoDampersForUnboundedDomain,
  StripNotCovered,
  ZeroModulusLine,
  NonpositiveBoundaryMax,
  ConfigInvalid,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the fixed-point solver; carries the sup-norm update history.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, std::vector<double> history)
      : Error(ErrorCode::NoConvergence, message), history_(std::move(history)) {}

  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace vekua
