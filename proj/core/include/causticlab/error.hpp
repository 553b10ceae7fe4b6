#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causticlab {

enum class ErrorCode {
  ArityMismatch,
  IndexOutOfRange,
  InvalidArgument,
  ParseError,
  NonConstantMetric,
  SingularMetric,
  MuNotAntisymmetric,
  Inconclusive,
  NotCaustic,
  DegenerateCoalescence,
  DegenerateInducedMetric,
  MultipleNilpotents,
  CoalescenceNotCaustic,
  FitFailure,
  FrameDiscontinuity,
  SmallDivisor,
  ZeroResidue,
  ResonantResidue,
  NonDiagonalizableResidue,
  StepUnderflow,
  NonFiniteValue,
  TailTooLarge,
  InconsistentOverlap,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for codes that signal leaving the numerical assumptions
// (coalescing strata, small divisors, integration breakdown).
bool is_degeneracy(ErrorCode code) noexcept;

// %.3g formatting for messages.
std::string format_number(double value);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace causticlab
