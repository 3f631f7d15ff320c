#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cremona {

// Every failure the library reports carries one of these kinds so callers
// (the CLI in particular) can map them onto exit codes.
enum class ErrorKind {
  SyntaxError,
  NonHomogeneous,
  BadField,
  DegreeMismatch,
  FieldMismatch,
  NotASquare,
  FieldExtensionRequired,
  EqualPoints,
  EqualLines,
  DegenerateFrame,
  Singular,
  NotDominant,
  Unsupported,
  CollinearPoints,
  WrongDegree,
  InfinitelyNearBasePoints,
  IrrationalBasePoints,
  NotOnCurve,
  SingularPoint,
  PointOnCurve,
  NotRationalCubic,
  IrrationalData,
  CurveContracted,
  NotOnto,
  NotBirational,
  DegenerateConic,
  IrrationalMarkers,
  NoTransport,
  NotInAutConic,
  InvalidParameters,
  WrongBasePointPattern,
  ExcludedPoint,
  SearchExhausted,
  WrongTangency,
  OracleUnavailable,
  Precondition,
  VerificationFailed,
};

inline std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::BadField: return "BadField";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::FieldExtensionRequired: return "FieldExtensionRequired";
    case ErrorKind::EqualPoints: return "EqualPoints";
    case ErrorKind::EqualLines: return "EqualLines";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::CollinearPoints: return "CollinearPoints";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::InfinitelyNearBasePoints: return "InfinitelyNearBasePoints";
    case ErrorKind::IrrationalBasePoints: return "IrrationalBasePoints";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::PointOnCurve: return "PointOnCurve";
    case ErrorKind::NotRationalCubic: return "NotRationalCubic";
    case ErrorKind::IrrationalData: return "IrrationalData";
    case ErrorKind::CurveContracted: return "CurveContracted";
    case ErrorKind::NotOnto: return "NotOnto";
    case ErrorKind::NotBirational: return "NotBirational";
    case ErrorKind::DegenerateConic: return "DegenerateConic";
    case ErrorKind::IrrationalMarkers: return "IrrationalMarkers";
    case ErrorKind::NoTransport: return "NoTransport";
    case ErrorKind::NotInAutConic: return "NotInAutConic";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::WrongBasePointPattern: return "WrongBasePointPattern";
    case ErrorKind::ExcludedPoint: return "ExcludedPoint";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::WrongTangency: return "WrongTangency";
    case ErrorKind::OracleUnavailable: return "OracleUnavailable";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace cremona
