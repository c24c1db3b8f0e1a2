#include "kmroots/weyl.hpp"

#include <algorithm>

namespace kmroots {

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "matrix sizes differ");
  const std::size_t n = a.n_;
  SquareMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Coeff x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < n; ++c)
        out(r, c) = detail::checked_add(out(r, c), detail::checked_mul(x, b(k, c)));
    }
  return out;
}

SquareMatrix root_reflection_matrix(const GCM& gcm, std::size_t i) {
  SquareMatrix m = SquareMatrix::identity(gcm.rank());
  for (std::size_t j = 0; j < gcm.rank(); ++j) m(i, j) -= gcm(i, j);
  return m;
}

SquareMatrix coroot_reflection_matrix(const GCM& gcm, std::size_t i) {
  SquareMatrix m = SquareMatrix::identity(gcm.rank());
  for (std::size_t k = 0; k < gcm.rank(); ++k) m(i, k) -= gcm(k, i);
  return m;
}

namespace {

// m <- m * R where R = identity except row i, given by the vector row_i.
// Column j of the product is col_j - row_i[j] * col_i (j != i), and -col_i.
void right_mult(SquareMatrix& m, std::size_t i, const GCM& gcm, bool coroot) {
  const std::size_t n = m.dim();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const Coeff a = coroot ? gcm(j, i) : gcm(i, j);
    if (a == 0) continue;
    for (std::size_t r = 0; r < n; ++r)
      m(r, j) = detail::checked_sub(m(r, j), detail::checked_mul(a, m(r, i)));
  }
  for (std::size_t r = 0; r < n; ++r) m(r, i) = -m(r, i);
}

// m <- R * m: only row i changes, to row_i(m) - sum_k a_k row_k(m).
void left_mult(SquareMatrix& m, std::size_t i, const GCM& gcm, bool coroot) {
  const std::size_t n = m.dim();
  std::vector<Coeff> row(n);
  for (std::size_t c = 0; c < n; ++c) {
    Coeff s = m(i, c);
    for (std::size_t k = 0; k < n; ++k) {
      const Coeff a = coroot ? gcm(k, i) : gcm(i, k);
      if (a != 0) s = detail::checked_sub(s, detail::checked_mul(a, m(k, c)));
    }
    row[c] = s;
  }
  for (std::size_t c = 0; c < n; ++c) m(i, c) = row[c];
}

bool column_negative(const SquareMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.dim(); ++r) {
    if (m(r, c) < 0) return true;
    if (m(r, c) > 0) return false;
  }
  return false;
}

}  // namespace

WeylElt WeylElt::identity(const GCM& gcm) {
  WeylElt w;
  const auto id = SquareMatrix::identity(gcm.rank());
  w.root_ = w.root_inv_ = w.coroot_ = w.coroot_inv_ = id;
  return w;
}

WeylElt WeylElt::simple(const GCM& gcm, std::size_t i) {
  if (i >= gcm.rank()) throw Error(ErrorKind::DimensionMismatch, "simple index out of range");
  return identity(gcm).extended_by(gcm, i);
}

WeylElt WeylElt::extended_by(const GCM& gcm, std::size_t i) const {
  WeylElt w(*this);
  right_mult(w.root_, i, gcm, false);
  left_mult(w.root_inv_, i, gcm, false);
  right_mult(w.coroot_, i, gcm, true);
  left_mult(w.coroot_inv_, i, gcm, true);
  w.word_.push_back(i);
  return w;
}

WeylElt WeylElt::from_word(const GCM& gcm, std::span<const std::size_t> word) {
  WeylElt w = identity(gcm);
  for (std::size_t i : word) {
    if (i >= gcm.rank()) throw Error(ErrorKind::DimensionMismatch, "simple index out of range");
    w = w.extended_by(gcm, i);
  }
  w.normalize(gcm);
  return w;
}

WeylElt WeylElt::multiply(const GCM& gcm, const WeylElt& a, const WeylElt& b) {
  WeylElt w;
  w.root_ = a.root_ * b.root_;
  w.root_inv_ = b.root_inv_ * a.root_inv_;
  w.coroot_ = a.coroot_ * b.coroot_;
  w.coroot_inv_ = b.coroot_inv_ * a.coroot_inv_;
  w.normalize(gcm);
  return w;
}

WeylElt WeylElt::inverse(const GCM& gcm) const {
  WeylElt w;
  w.root_ = root_inv_;
  w.root_inv_ = root_;
  w.coroot_ = coroot_inv_;
  w.coroot_inv_ = coroot_;
  w.normalize(gcm);
  return w;
}

bool WeylElt::has_left_descent(std::size_t i) const { return column_negative(root_inv_, i); }
bool WeylElt::has_right_descent(std::size_t i) const { return column_negative(root_, i); }

void WeylElt::normalize(const GCM& gcm) {
  // Peel off the lowest left descent each time: l(r_i w) < l(w) iff
  // w^{-1} alpha_i < 0, i.e. column i of the inverse matrix is negative.
  SquareMatrix inv = root_inv_;
  const std::size_t n = inv.dim();
  word_.clear();
  for (;;) {
    std::size_t i = 0;
    while (i < n && !column_negative(inv, i)) ++i;
    if (i == n) break;
    word_.push_back(i);
    right_mult(inv, i, gcm, false);  // (r_i w)^{-1} = w^{-1} r_i
  }
}

std::size_t MatrixHash::operator()(const std::vector<Coeff>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Coeff x : v) {
    h ^= static_cast<std::uint64_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

WeylBall::WeylBall(const GCM& gcm, std::size_t radius) : gcm_(gcm), radius_(radius) {
  elements_.push_back(WeylElt::identity(gcm_));
  index_.emplace(elements_.back().root_action().data(), 0);
  layer_start_ = {0, 1};
  for (std::size_t k = 1; k <= radius_; ++k) {
    const std::size_t begin = layer_start_[k - 1], end = layer_start_[k];
    // Parents are visited in ShortLex order and generators in increasing
    // order, so the first word reaching an element is its ShortLex word.
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t i = 0; i < gcm_.rank(); ++i) {
        if (elements_[p].has_right_descent(i)) continue;
        WeylElt w = elements_[p].extended_by(gcm_, i);
        if (index_.emplace(w.root_action().data(), elements_.size()).second)
          elements_.push_back(std::move(w));
      }
    }
    layer_start_.push_back(elements_.size());
    if (layer_start_[k + 1] == layer_start_[k]) {
      // Finite group exhausted; keep empty layers up to the radius.
      for (std::size_t r = k + 1; r <= radius_; ++r) layer_start_.push_back(elements_.size());
      break;
    }
  }
}

std::span<const WeylElt> WeylBall::layer(std::size_t k) const {
  if (k > radius_) return {};
  return std::span<const WeylElt>(elements_).subspan(layer_start_[k],
                                                     layer_start_[k + 1] - layer_start_[k]);
}

std::vector<std::size_t> WeylBall::layer_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= radius_; ++k) out.push_back(layer_start_[k + 1] - layer_start_[k]);
  return out;
}

std::optional<std::size_t> WeylBall::find(const WeylElt& w) const {
  auto it = index_.find(w.root_action().data());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<RootVec> inversion_set(const WeylElt& w, const RootSlice& slice) {
  std::vector<RootVec> out;
  for (const RootVec& a : slice.positive_roots()) {
    if (!slice.is_real(a)) continue;
    if (is_negative(w.act_inverse(a))) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), RootOrder{});
  if (out.size() < w.length())
    throw Error(ErrorKind::SliceTooShallow,
                "found " + std::to_string(out.size()) + " inversions for an element of length " +
                    std::to_string(w.length()));
  return out;
}

}  // namespace kmroots
