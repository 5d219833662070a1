#pragma once

#include <stdexcept>
#include <string>

namespace ekt {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or index mismatch on exact-matrix / presentation inputs.
struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Operands belong to different concrete algebras.
struct AlgebraMismatch : Error {
  explicit AlgebraMismatch(const std::string& what) : Error(what) {}
};

// Input outside the contraction basin of a rounding procedure.
struct OutOfBasinError : Error {
  explicit OutOfBasinError(const std::string& what) : Error(what) {}
};

// A staged construction could not produce its first object within the
// declared fuel (e.g. an empty subgroup enumeration).
struct StagingError : Error {
  explicit StagingError(const std::string& what) : Error(what) {}
};

// A point handle failed its Cauchy consistency contract.
struct CauchyViolation : Error {
  explicit CauchyViolation(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace ekt
