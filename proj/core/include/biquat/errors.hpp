#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biquat {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element has no two-sided inverse: |det| below the singularity threshold.
class SingularElement : public Error {
 public:
  using Error::Error;
};

/// Expression failed to parse. `offset()` is the byte position of the
/// offending token in the source string.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifier is not a known function or variable.
class UnknownFunction : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// '^' requires an integer literal exponent.
class NonIntegerExponent : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// Runtime failure while evaluating an analytic function or map.
class EvalError : public Error {
 public:
  using Error::Error;
};

class PoleOrDivisionByZero : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Power-series evaluation or recentering requested outside the radius.
class RadiusExceeded : public EvalError {
 public:
  using EvalError::EvalError;
};

/// The degeneracy locus is a plane, not a line (Im a_k = Im b_k = 0).
class DegeneratePencil : public Error {
 public:
  using Error::Error;
};

/// Binary map operation got operands over different frames.
class FrameMismatch : public Error {
 public:
  using Error::Error;
};

/// The two span vectors (1,a1,b1), (1,a2,b2) are complex-collinear.
class RankDeficientFrame : public Error {
 public:
  using Error::Error;
};

/// Requested a Hausdorff construction at a point failing the span test.
class NotHMonogenic : public Error {
 public:
  using Error::Error;
};

class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

/// Sampling could not produce any admissible points.
class EmptySampleSet : public Error {
 public:
  using Error::Error;
};

}  // namespace biquat
