#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kmroots/gcm.hpp"

namespace kmroots {

/// A real root together with its coroot; <root, coroot> = 2.
struct RealRoot {
  RootVec root;
  CorootVec coroot;

  RealRoot operator-() const { return {-root, -coroot}; }
  friend bool operator==(const RealRoot&, const RealRoot&) = default;
};

Coeff height(const RootVec& v);
bool is_positive(const RootVec& v);
bool is_negative(const RootVec& v);
/// a <= b iff b - a has only nonnegative coefficients.
bool leq(const RootVec& a, const RootVec& b);

/// Canonical order used for every deterministic listing: height ascending,
/// then coefficient vectors in decreasing lexicographic order (so alpha_1
/// precedes alpha_2 at equal height).
struct RootOrder {
  bool operator()(const RootVec& a, const RootVec& b) const {
    const Coeff ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return b.coeffs() < a.coeffs();
  }
  bool operator()(const RealRoot& a, const RealRoot& b) const { return (*this)(a.root, b.root); }
};

RealRoot simple_root(const GCM& gcm, std::size_t i);

/// r_i on root coordinates: v - <v, alpha_i^vee> alpha_i.
RootVec simple_reflect(const GCM& gcm, std::size_t i, const RootVec& v);
/// r_i on coroot coordinates: h - <alpha_i, h> alpha_i^vee.
CorootVec simple_reflect(const GCM& gcm, std::size_t i, const CorootVec& h);
RealRoot simple_reflect(const GCM& gcm, std::size_t i, const RealRoot& r);

/// r_alpha(beta) = beta - <beta, alpha^vee> alpha.
RootVec reflect(const RealRoot& alpha, const RootVec& beta, const GCM& gcm);
RealRoot reflect(const RealRoot& alpha, const RealRoot& beta, const GCM& gcm);

/// Decides whether v is a real root by height descent: while v is positive
/// and not simple, apply the lowest r_i with <v, alpha_i^vee> > 0. Real roots
/// reach a simple root; imaginary roots and non-roots do not. On success the
/// coroot is rebuilt along the reversed path.
std::optional<RealRoot> real_root_by_descent(const GCM& gcm, const RootVec& v);

/// Membership of an arbitrary lattice vector in Delta. Descends as above;
/// a positive vector that stops with every pairing <= 0 is an imaginary root
/// exactly when its support is connected (the fundamental set K of Kac, 5.4).
struct RootClass {
  enum class Kind { NotRoot, Real, Imaginary };
  Kind kind;
  std::optional<CorootVec> coroot;  // for Real, matching the sign of v
};
RootClass classify_root(const GCM& gcm, const RootVec& v);

/// Real roots with 1 <= |height| <= h, by breadth-first search over the
/// Weyl orbit of the simple roots, never leaving the height window. The
/// coroot is carried along each path; reaching a root twice with different
/// coroots throws std::logic_error. Sorted by RootOrder.
std::vector<RealRoot> enumerate_real_roots(const GCM& gcm, Coeff h);

/// All roots (real and imaginary) with 1 <= |height| <= h.
///
/// Positive roots are built height by height through alpha_i-strings:
/// alpha + alpha_i is a root iff q > 0, where p is the depth of the string
/// below alpha and q = p - <alpha, alpha_i^vee>. Real flags and coroots come
/// from real_root_by_descent.
///
/// A Lazy slice builds nothing up front: membership is decided per query by
/// classify_root and memoized. It answers contains/is_real/real for any
/// vector within the bound but cannot list its roots. Useful for deep caps
/// where only a thin cone of the lattice is ever queried.
enum class SliceMode { Eager, Lazy };

class RootSlice {
 public:
  RootSlice(const GCM& gcm, Coeff height_bound, SliceMode mode = SliceMode::Eager);
  RootSlice(RootSlice&&) noexcept = default;
  RootSlice& operator=(RootSlice&&) noexcept = default;

  const GCM& gcm() const noexcept { return gcm_; }
  Coeff height_bound() const noexcept { return h_; }
  SliceMode mode() const noexcept { return lazy_ ? SliceMode::Lazy : SliceMode::Eager; }

  /// Membership in the root system. Throws SliceTooShallow if |height(v)|
  /// exceeds the bound, since membership is then undecided.
  bool contains(const RootVec& v) const;
  bool is_real(const RootVec& v) const;
  /// The real root with its coroot, or nullopt for imaginary roots and
  /// non-roots.
  std::optional<RealRoot> real(const RootVec& v) const;

  bool covers(const RootVec& v) const noexcept;

  // Listing operations below throw PreconditionViolated on a Lazy slice.

  /// All roots (both signs), sorted by RootOrder.
  std::vector<RootVec> roots() const;
  /// All real roots (both signs), sorted by RootOrder.
  std::vector<RealRoot> real_roots() const;
  const std::vector<RootVec>& positive_roots() const;

  std::size_t size() const;
  std::size_t real_count() const;

  /// Re-checks negation symmetry, unbroken strings and simple-reflection
  /// closure of real roots. Throws std::logic_error on failure.
  void check_invariants() const;

 private:
  struct Entry {
    std::optional<CorootVec> coroot;
  };
  struct LazyCache {
    std::mutex mutex;
    std::unordered_map<RootVec, std::optional<Entry>> known;
  };
  const Entry* find_positive(const RootVec& v) const;
  void require_eager() const;

  GCM gcm_;
  Coeff h_;
  std::vector<RootVec> positives_;
  std::unordered_map<RootVec, Entry> table_;
  std::size_t real_positive_count_ = 0;
  std::unique_ptr<LazyCache> lazy_;
};

inline RootSlice enumerate_root_slice(const GCM& gcm, Coeff h,
                                      SliceMode mode = SliceMode::Eager) {
  return RootSlice(gcm, h, mode);
}

}  // namespace kmroots
