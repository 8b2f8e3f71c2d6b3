#include "chevtwist/error.hpp"

namespace chevtwist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::FactorizationBound: return "FactorizationBound";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::ForeignRoot: return "ForeignRoot";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::ZeroCharacterValue: return "ZeroCharacterValue";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::SignObstruction: return "SignObstruction";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotEnumerated: return "NotEnumerated";
    case ErrorCode::AutomorphismEscapesGroup: return "AutomorphismEscapesGroup";
    case ErrorCode::InfiniteOrderFieldPart: return "InfiniteOrderFieldPart";
    case ErrorCode::FiniteFieldRejected: return "FiniteFieldRejected";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::ConstancyViolation: return "ConstancyViolation";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::LemmaViolation: return "LemmaViolation";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
  }
  return "Unknown";
}

}  // namespace chevtwist
