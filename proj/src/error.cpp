#include "critjac/error.hpp"

namespace critjac {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::LimitCircleRegime: return "LimitCircleRegime";
    case ErrorKind::UnsupportedTauZero: return "UnsupportedTauZero";
    case ErrorKind::BranchPoint: return "BranchPoint";
    case ErrorKind::TruncationTooShort: return "TruncationTooShort";
    case ErrorKind::OnSpectrum: return "OnSpectrum";
    case ErrorKind::ZeroCrossing: return "ZeroCrossing";
    case ErrorKind::WindowMismatch: return "WindowMismatch";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::OutsideAC: return "OutsideAC";
    case ErrorKind::ThresholdPoint: return "ThresholdPoint";
    case ErrorKind::EigenvalueHit: return "EigenvalueHit";
    case ErrorKind::OverlapsAC: return "OverlapsAC";
    case ErrorKind::RefineGrid: return "RefineGrid";
  }
  return "Unknown";
}

bool is_regime_rejection(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedRegime:
    case ErrorKind::NotCritical:
    case ErrorKind::LimitCircleRegime:
    case ErrorKind::UnsupportedTauZero:
      return true;
    default:
      return false;
  }
}

}  // namespace critjac
