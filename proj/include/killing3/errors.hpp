#pragma once

#include <stdexcept>
#include <string>

namespace killing3 {

enum class ErrorCode {
  NonFinite = 1,
  Domain,
  JetOrder,
  UnknownCatalogName,
  BadParams,
  Parse,
  TwistZero,
  NotUnitLength,
  EmptyGrid,
  EmptyProfile,
  InadmissibleParams,
  EnergyDriftExceeded,
  PhiVanishes,
  BlowUp,
  StepFailure,
  AlreadyLorentzian,
  Io,
};

const char* to_string(ErrorCode code);

/// Parse/config failures map to exit class 2, numeric failures to 3.
int exit_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace killing3
