#pragma once

#include <stdexcept>
#include <string>

namespace pwq {

enum class ErrorKind {
  Pole,                 // evaluation at a pole (Gamma or an intertwining scalar)
  ArgumentZero,
  GridPrecondition,
  Precondition,
  ForbiddenParameter,   // R z0 is a nonzero integer
  ForbiddenR,           // R perturbation could not clear the forbidden set
  InconsistentParity,
  Kostant,
  NonReducedWord,
  UnsupportedKind,
  DegenerateOrbit,
  DimensionMismatch,
  NonSymmetricInput,
  UnknownSuite,
  MalformedConfig,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Pole: return "pole";
    case ErrorKind::ArgumentZero: return "argument-zero";
    case ErrorKind::GridPrecondition: return "grid-violates-precondition";
    case ErrorKind::Precondition: return "precondition-violation";
    case ErrorKind::ForbiddenParameter: return "forbidden-parameter";
    case ErrorKind::ForbiddenR: return "forbidden-R";
    case ErrorKind::InconsistentParity: return "inconsistent-parity";
    case ErrorKind::Kostant: return "kostant-violation";
    case ErrorKind::NonReducedWord: return "non-reduced-word";
    case ErrorKind::UnsupportedKind: return "unsupported-kind";
    case ErrorKind::DegenerateOrbit: return "degenerate-orbit";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NonSymmetricInput: return "non-symmetric-input";
    case ErrorKind::UnknownSuite: return "unknown-suite";
    case ErrorKind::MalformedConfig: return "malformed-config";
  }
  return "error";
}

}  // namespace pwq
