#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace critjac {

enum class ErrorKind {
  InvalidParameter,
  UnsupportedRegime,
  NotCritical,
  LimitCircleRegime,
  UnsupportedTauZero,
  BranchPoint,
  TruncationTooShort,
  OnSpectrum,
  ZeroCrossing,
  WindowMismatch,
  OutsideDomain,
  OutsideAC,
  ThresholdPoint,
  EigenvalueHit,
  OverlapsAC,
  RefineGrid,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Regime rejections map to CLI exit code 2, everything else numeric to 3.
bool is_regime_rejection(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace critjac
