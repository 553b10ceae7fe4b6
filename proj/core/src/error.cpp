#include "causticlab/error.hpp"

#include <cstdio>

namespace causticlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonConstantMetric: return "NonConstantMetric";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::MuNotAntisymmetric: return "MuNotAntisymmetric";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::NotCaustic: return "NotCaustic";
    case ErrorCode::DegenerateCoalescence: return "DegenerateCoalescence";
    case ErrorCode::DegenerateInducedMetric: return "DegenerateInducedMetric";
    case ErrorCode::MultipleNilpotents: return "MultipleNilpotents";
    case ErrorCode::CoalescenceNotCaustic: return "CoalescenceNotCaustic";
    case ErrorCode::FitFailure: return "FitFailure";
    case ErrorCode::FrameDiscontinuity: return "FrameDiscontinuity";
    case ErrorCode::SmallDivisor: return "SmallDivisor";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::ResonantResidue: return "ResonantResidue";
    case ErrorCode::NonDiagonalizableResidue: return "NonDiagonalizableResidue";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::InconsistentOverlap: return "InconsistentOverlap";
  }
  return "Unknown";
}

bool is_degeneracy(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ArityMismatch:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
      return false;
    default:
      return true;
  }
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace causticlab
