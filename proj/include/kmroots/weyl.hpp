#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "kmroots/gcm.hpp"
#include "kmroots/roots.hpp"

namespace kmroots {

/// Square integer matrix acting on coordinate vectors (column j is the image
/// of the j-th basis vector).
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  static SquareMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  Coeff operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  Coeff& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const std::vector<Coeff>& data() const noexcept { return a_; }

  template <class Tag>
  LatticeVec<Tag> apply(const LatticeVec<Tag>& v) const {
    if (v.size() != n_) throw Error(ErrorKind::DimensionMismatch, "matrix/vector size mismatch");
    LatticeVec<Tag> out(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      Coeff s = 0;
      for (std::size_t c = 0; c < n_; ++c)
        if (v[c] != 0) s = detail::checked_add(s, detail::checked_mul(a_[r * n_ + c], v[c]));
      out[r] = s;
    }
    return out;
  }

  /// Column c as a vector.
  template <class Tag>
  LatticeVec<Tag> column(std::size_t c) const {
    LatticeVec<Tag> out(n_);
    for (std::size_t r = 0; r < n_; ++r) out[r] = a_[r * n_ + c];
    return out;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Coeff> a_;
};

SquareMatrix root_reflection_matrix(const GCM& gcm, std::size_t i);
SquareMatrix coroot_reflection_matrix(const GCM& gcm, std::size_t i);

/// An element of the Weyl group: its matrices on both lattices (and their
/// inverses) plus a certificate word. The word is the ShortLex-least reduced
/// word, so it is canonical.
class WeylElt {
 public:
  static WeylElt identity(const GCM& gcm);
  static WeylElt simple(const GCM& gcm, std::size_t i);
  /// Any word; the stored word is its ShortLex normal form.
  static WeylElt from_word(const GCM& gcm, std::span<const std::size_t> word);
  /// a * b, normalized.
  static WeylElt multiply(const GCM& gcm, const WeylElt& a, const WeylElt& b);

  const std::vector<std::size_t>& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  std::size_t rank() const noexcept { return root_.dim(); }

  const SquareMatrix& root_action() const noexcept { return root_; }
  const SquareMatrix& coroot_action() const noexcept { return coroot_; }

  RootVec act(const RootVec& v) const { return root_.apply(v); }
  CorootVec act(const CorootVec& v) const { return coroot_.apply(v); }
  RealRoot act(const RealRoot& r) const { return {act(r.root), act(r.coroot)}; }
  RootVec act_inverse(const RootVec& v) const { return root_inv_.apply(v); }
  CorootVec act_inverse(const CorootVec& v) const { return coroot_inv_.apply(v); }
  RealRoot act_inverse(const RealRoot& r) const {
    return {act_inverse(r.root), act_inverse(r.coroot)};
  }

  WeylElt inverse(const GCM& gcm) const;

  /// Right multiplication by r_i where the caller knows the result has
  /// length + 1 and word + i is its normal form (ball construction).
  WeylElt extended_by(const GCM& gcm, std::size_t i) const;

  /// w^{-1} alpha_i < 0, i.e. l(r_i w) < l(w).
  bool has_left_descent(std::size_t i) const;
  /// w alpha_i < 0, i.e. l(w r_i) < l(w).
  bool has_right_descent(std::size_t i) const;

  friend bool operator==(const WeylElt& a, const WeylElt& b) { return a.root_ == b.root_; }

 private:
  WeylElt() = default;
  void normalize(const GCM& gcm);

  std::vector<std::size_t> word_;
  SquareMatrix root_, root_inv_, coroot_, coroot_inv_;
};

struct MatrixHash {
  std::size_t operator()(const std::vector<Coeff>& v) const noexcept;
};

/// All Weyl group elements of length <= radius, in ShortLex order of their
/// normal-form words; layer k holds exactly the elements of length k.
class WeylBall {
 public:
  WeylBall(const GCM& gcm, std::size_t radius);

  const GCM& gcm() const noexcept { return gcm_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<WeylElt>& elements() const noexcept { return elements_; }
  const WeylElt& operator[](std::size_t k) const { return elements_[k]; }
  /// Elements of length exactly k.
  std::span<const WeylElt> layer(std::size_t k) const;
  std::vector<std::size_t> layer_sizes() const;

  std::optional<std::size_t> find(const WeylElt& w) const;

 private:
  GCM gcm_;
  std::size_t radius_;
  std::vector<WeylElt> elements_;
  std::vector<std::size_t> layer_start_;
  std::unordered_map<std::vector<Coeff>, std::size_t, MatrixHash> index_;
};

inline WeylBall weyl_ball(const GCM& gcm, std::size_t radius) { return WeylBall(gcm, radius); }

/// { alpha in positive real roots : w^{-1} alpha < 0 }, sorted by RootOrder.
/// Throws SliceTooShallow if fewer than length(w) inversions fit the slice.
std::vector<RootVec> inversion_set(const WeylElt& w, const RootSlice& slice);

}  // namespace kmroots
