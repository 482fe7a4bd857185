#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dirop {

enum class ErrorCode {
  InvalidArgument,
  WindowExceeded,
  SearchWindowExceeded,
  MismatchedSpace,
  OutsideDomain,
  TailNotCertifiable,
  ZeroElement,
  InvalidSymbol,
  RatioIndexMissing,
  UnboundedSymbol,
  WindowNotConclusive,
  WrongInitialPointCensus,
  DivergenceNotEvidenced,
  DegreeCapExceeded,
  NoConvergence,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::WindowExceeded: return "WindowExceeded";
    case ErrorCode::SearchWindowExceeded: return "SearchWindowExceeded";
    case ErrorCode::MismatchedSpace: return "MismatchedSpace";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::TailNotCertifiable: return "TailNotCertifiable";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::RatioIndexMissing: return "RatioIndexMissing";
    case ErrorCode::UnboundedSymbol: return "UnboundedSymbol";
    case ErrorCode::WindowNotConclusive: return "WindowNotConclusive";
    case ErrorCode::WrongInitialPointCensus: return "WrongInitialPointCensus";
    case ErrorCode::DivergenceNotEvidenced: return "DivergenceNotEvidenced";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace dirop
