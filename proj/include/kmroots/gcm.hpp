#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kmroots/error.hpp"

namespace kmroots {

using Coeff = std::int64_t;
using IntMatrix = std::vector<std::vector<Coeff>>;

/// Integer coefficient vector over a fixed basis. The tag keeps root-lattice
/// and coroot-lattice coordinates from being mixed up.
template <class Tag>
class LatticeVec {
 public:
  LatticeVec() = default;
  explicit LatticeVec(std::size_t n) : c_(n, 0) {}
  explicit LatticeVec(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) {}
  LatticeVec(std::initializer_list<Coeff> coeffs) : c_(coeffs) {}

  static LatticeVec basis(std::size_t n, std::size_t i) {
    LatticeVec v(n);
    v.c_[i] = 1;
    return v;
  }

  std::size_t size() const noexcept { return c_.size(); }
  Coeff operator[](std::size_t i) const { return c_[i]; }
  Coeff& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Coeff>& coeffs() const noexcept { return c_; }
  std::span<const Coeff> span() const noexcept { return c_; }

  bool is_zero() const noexcept {
    for (Coeff x : c_)
      if (x != 0) return false;
    return true;
  }

  LatticeVec operator-() const {
    LatticeVec out(*this);
    for (Coeff& x : out.c_) x = detail::checked_sub(0, x);
    return out;
  }

  LatticeVec& operator+=(const LatticeVec& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::checked_add(c_[i], o.c_[i]);
    return *this;
  }
  LatticeVec& operator-=(const LatticeVec& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = detail::checked_sub(c_[i], o.c_[i]);
    return *this;
  }
  friend LatticeVec operator+(LatticeVec a, const LatticeVec& b) { return a += b; }
  friend LatticeVec operator-(LatticeVec a, const LatticeVec& b) { return a -= b; }
  friend LatticeVec operator*(Coeff k, LatticeVec a) {
    for (Coeff& x : a.c_) x = detail::checked_mul(k, x);
    return a;
  }

  friend bool operator==(const LatticeVec&, const LatticeVec&) = default;
  friend auto operator<=>(const LatticeVec&, const LatticeVec&) = default;

  friend std::ostream& operator<<(std::ostream& os, const LatticeVec& v) {
    os << '[';
    for (std::size_t i = 0; i < v.c_.size(); ++i) os << (i ? "," : "") << v.c_[i];
    return os << ']';
  }

  void require_same_size(const LatticeVec& o) const {
    if (o.c_.size() != c_.size())
      throw Error(ErrorKind::DimensionMismatch,
                  "vector lengths " + std::to_string(c_.size()) + " and " +
                      std::to_string(o.c_.size()));
  }

 private:
  std::vector<Coeff> c_;
};

struct RootTag {};
struct CorootTag {};

/// Coordinates over the simple roots.
using RootVec = LatticeVec<RootTag>;
/// Coordinates over the simple coroots.
using CorootVec = LatticeVec<CorootTag>;

std::string to_string(const RootVec& v);

/// One violated generalised-Cartan-matrix condition, with 0-based cell.
struct GcmViolation {
  ErrorKind kind;
  std::size_t row;
  std::size_t col;

  friend bool operator==(const GcmViolation&, const GcmViolation&) = default;
};

/// Thrown by validate_gcm; carries every violation found.
class GcmError : public Error {
 public:
  explicit GcmError(std::vector<GcmViolation> violations);
  const std::vector<GcmViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<GcmViolation> violations_;
};

/// A validated generalised Cartan matrix. Immutable.
///
/// Pairing convention: <alpha_j, alpha_i^vee> = a(i, j).
class GCM {
 public:
  std::size_t rank() const noexcept { return n_; }
  Coeff operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  IntMatrix matrix() const;

  friend bool operator==(const GCM&, const GCM&) = default;

 private:
  friend GCM validate_gcm(const IntMatrix& matrix);
  GCM(std::size_t n, std::vector<Coeff> a) : n_(n), a_(std::move(a)) {}

  std::size_t n_ = 0;
  std::vector<Coeff> a_;
};

/// Every violated condition of a square integer matrix, in row-major order.
/// Throws DimensionMismatch for a non-square or empty matrix.
std::vector<GcmViolation> gcm_violations(const IntMatrix& matrix);

/// Returns the validated GCM or throws GcmError listing all violations.
GCM validate_gcm(const IntMatrix& matrix);

/// Sum over i, j of root[j] * coroot[i] * a(i, j).
Coeff pairing(const RootVec& root, const CorootVec& coroot, const GCM& gcm);

/// <root, alpha_i^vee>, the common special case.
Coeff pairing_simple(const RootVec& root, std::size_t i, const GCM& gcm);
/// <alpha_i, coroot>.
Coeff pairing_simple(std::size_t i, const CorootVec& coroot, const GCM& gcm);

}  // namespace kmroots

template <class Tag>
struct std::hash<kmroots::LatticeVec<Tag>> {
  std::size_t operator()(const kmroots::LatticeVec<Tag>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : v.coeffs()) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};
