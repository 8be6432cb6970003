#include "killing3/errors.hpp"

namespace killing3 {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::JetOrder: return "JetOrderError";
    case ErrorCode::UnknownCatalogName: return "UnknownCatalogName";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::TwistZero: return "TwistZero";
    case ErrorCode::NotUnitLength: return "NotUnitLength";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::EmptyProfile: return "EmptyProfile";
    case ErrorCode::InadmissibleParams: return "InadmissibleParams";
    case ErrorCode::EnergyDriftExceeded: return "EnergyDriftExceeded";
    case ErrorCode::PhiVanishes: return "PhiVanishes";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::AlreadyLorentzian: return "AlreadyLorentzian";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

int exit_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownCatalogName:
    case ErrorCode::BadParams:
    case ErrorCode::Parse:
    case ErrorCode::EmptyGrid:
    case ErrorCode::EmptyProfile:
    case ErrorCode::InadmissibleParams:
    case ErrorCode::AlreadyLorentzian:
    case ErrorCode::Io:
      return 2;
    default:
      return 3;
  }
}

}  // namespace killing3
