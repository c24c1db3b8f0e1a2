#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kmroots {

enum class ErrorKind {
  DiagonalNotTwo,
  PositiveOffDiagonal,
  AsymmetricZero,
  DimensionMismatch,
  Overflow,
  SliceTooShallow,
  NotASubset,
  NotARealRoot,
  PreconditionViolated,
  InstancePreconditionViolated,
  EqualOrOpposite,
  NotNilpotent,
  NotClosedInput,
  ClosureEscaped,
  NotFiniteType,
  UnrecognizedDiagram,
  ParseError,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure reported by the library. The kind is
/// stable and machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorKind::Overflow, "integer addition overflowed");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out))
    throw Error(ErrorKind::Overflow, "integer subtraction overflowed");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorKind::Overflow, "integer multiplication overflowed");
  return out;
}

}  // namespace detail
}  // namespace kmroots
