#include "kmroots/roots.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace kmroots {

Coeff height(const RootVec& v) {
  Coeff h = 0;
  for (Coeff x : v.coeffs()) h = detail::checked_add(h, x);
  return h;
}

bool is_positive(const RootVec& v) {
  bool nonzero = false;
  for (Coeff x : v.coeffs()) {
    if (x < 0) return false;
    nonzero |= x != 0;
  }
  return nonzero;
}

bool is_negative(const RootVec& v) {
  bool nonzero = false;
  for (Coeff x : v.coeffs()) {
    if (x > 0) return false;
    nonzero |= x != 0;
  }
  return nonzero;
}

bool leq(const RootVec& a, const RootVec& b) {
  a.require_same_size(b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] < a[i]) return false;
  return true;
}

RealRoot simple_root(const GCM& gcm, std::size_t i) {
  return {RootVec::basis(gcm.rank(), i), CorootVec::basis(gcm.rank(), i)};
}

RootVec simple_reflect(const GCM& gcm, std::size_t i, const RootVec& v) {
  RootVec out(v);
  out[i] = detail::checked_sub(out[i], pairing_simple(v, i, gcm));
  return out;
}

CorootVec simple_reflect(const GCM& gcm, std::size_t i, const CorootVec& h) {
  CorootVec out(h);
  out[i] = detail::checked_sub(out[i], pairing_simple(i, h, gcm));
  return out;
}

RealRoot simple_reflect(const GCM& gcm, std::size_t i, const RealRoot& r) {
  return {simple_reflect(gcm, i, r.root), simple_reflect(gcm, i, r.coroot)};
}

RootVec reflect(const RealRoot& alpha, const RootVec& beta, const GCM& gcm) {
  return beta - pairing(beta, alpha.coroot, gcm) * alpha.root;
}

RealRoot reflect(const RealRoot& alpha, const RealRoot& beta, const GCM& gcm) {
  // r_alpha acts on coroots by h -> h - <alpha, h> alpha^vee.
  return {reflect(alpha, beta.root, gcm),
          beta.coroot - pairing(alpha.root, beta.coroot, gcm) * alpha.coroot};
}

namespace {

bool connected_support(const GCM& gcm, const RootVec& v) {
  const std::size_t n = gcm.rank();
  std::vector<std::size_t> stack;
  std::vector<bool> seen(n, false);
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    ++support;
    if (stack.empty()) {
      stack.push_back(i);
      seen[i] = true;
    }
  }
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && v[j] != 0 && gcm(i, j) != 0) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return reached == support;
}

}  // namespace

RootClass classify_root(const GCM& gcm, const RootVec& v) {
  if (v.size() != gcm.rank()) throw Error(ErrorKind::DimensionMismatch, "root has wrong length");
  RootVec cur = v;
  const bool negative = is_negative(cur);
  if (negative) cur = -cur;
  if (!is_positive(cur)) return {RootClass::Kind::NotRoot, std::nullopt};

  const std::size_t n = gcm.rank();
  std::vector<std::size_t> path;
  for (;;) {
    if (height(cur) == 1) {
      std::size_t j = 0;
      while (cur[j] == 0) ++j;
      RealRoot r = simple_root(gcm, j);
      for (auto it = path.rbegin(); it != path.rend(); ++it) r = simple_reflect(gcm, *it, r);
      return {RootClass::Kind::Real, negative ? -r.coroot : r.coroot};
    }
    std::size_t i = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (pairing_simple(cur, k, gcm) > 0) {
        i = k;
        break;
      }
    }
    if (i == n) {
      const auto kind =
          connected_support(gcm, cur) ? RootClass::Kind::Imaginary : RootClass::Kind::NotRoot;
      return {kind, std::nullopt};
    }
    cur = simple_reflect(gcm, i, cur);
    if (!is_positive(cur)) return {RootClass::Kind::NotRoot, std::nullopt};
    path.push_back(i);
  }
}

std::optional<RealRoot> real_root_by_descent(const GCM& gcm, const RootVec& v) {
  RootClass c = classify_root(gcm, v);
  if (c.kind != RootClass::Kind::Real) return std::nullopt;
  return RealRoot{v, *c.coroot};
}

std::vector<RealRoot> enumerate_real_roots(const GCM& gcm, Coeff h) {
  if (h < 1) throw Error(ErrorKind::PreconditionViolated, "height bound must be >= 1");
  const std::size_t n = gcm.rank();
  std::unordered_map<RootVec, CorootVec> seen;
  std::deque<RealRoot> queue;
  auto visit = [&](RealRoot r) {
    auto [it, inserted] = seen.emplace(r.root, r.coroot);
    if (!inserted) {
      if (it->second != r.coroot)
        throw std::logic_error("coroot of " + to_string(r.root) + " depends on the orbit path");
      return;
    }
    queue.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < n; ++i) {
    visit(simple_root(gcm, i));
    visit(-simple_root(gcm, i));
  }
  while (!queue.empty()) {
    RealRoot r = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      RealRoot s = simple_reflect(gcm, i, r);
      const Coeff hs = height(s.root);
      if (hs > h || hs < -h) continue;
      visit(std::move(s));
    }
  }
  std::vector<RealRoot> out;
  out.reserve(seen.size());
  for (auto& [root, coroot] : seen) out.push_back({root, coroot});
  std::sort(out.begin(), out.end(), RootOrder{});
  return out;
}

RootSlice::RootSlice(const GCM& gcm, Coeff height_bound, SliceMode mode)
    : gcm_(gcm), h_(height_bound) {
  if (h_ < 1) throw Error(ErrorKind::PreconditionViolated, "height bound must be >= 1");
  if (mode == SliceMode::Lazy) {
    lazy_ = std::make_unique<LazyCache>();
    return;
  }
  const std::size_t n = gcm_.rank();

  std::vector<RootVec> layer;
  for (std::size_t i = 0; i < n; ++i) {
    RootVec s = RootVec::basis(n, i);
    table_.emplace(s, Entry{});
    layer.push_back(std::move(s));
  }
  positives_ = layer;

  for (Coeff k = 1; k < h_; ++k) {
    std::vector<RootVec> next;
    for (const RootVec& alpha : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        if (height(alpha) == 1 && alpha[i] == 1) continue;  // 2 alpha_i is never a root
        Coeff p = 0;
        for (RootVec down = alpha;;) {
          down[i] -= 1;
          if (down[i] < 0 || !table_.contains(down)) break;
          ++p;
        }
        const Coeff q = p - pairing_simple(alpha, i, gcm_);
        if (q <= 0) continue;
        RootVec up = alpha;
        up[i] = detail::checked_add(up[i], 1);
        if (table_.emplace(up, Entry{}).second) next.push_back(std::move(up));
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end(), RootOrder{});
    positives_.insert(positives_.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  for (const RootVec& v : positives_) {
    if (auto r = real_root_by_descent(gcm_, v)) {
      table_.at(v).coroot = r->coroot;
      ++real_positive_count_;
    }
  }
  check_invariants();
}

bool RootSlice::covers(const RootVec& v) const noexcept {
  Coeff h = 0;
  for (Coeff x : v.coeffs()) h += x;
  return h <= h_ && h >= -h_;
}

const RootSlice::Entry* RootSlice::find_positive(const RootVec& v) const {
  if (v.size() != gcm_.rank()) throw Error(ErrorKind::DimensionMismatch, "root has wrong length");
  if (!covers(v))
    throw Error(ErrorKind::SliceTooShallow, "height of " + to_string(v) +
                                                " exceeds slice bound " + std::to_string(h_));
  RootVec key;
  if (is_positive(v)) key = v;
  else if (is_negative(v)) key = -v;
  else return nullptr;

  if (lazy_) {
    // Map nodes are stable, so the pointer outlives the lock.
    std::lock_guard lock(lazy_->mutex);
    auto it = lazy_->known.find(key);
    if (it == lazy_->known.end()) {
      RootClass c = classify_root(gcm_, key);
      std::optional<Entry> e;
      if (c.kind != RootClass::Kind::NotRoot) e = Entry{c.coroot};
      it = lazy_->known.emplace(std::move(key), std::move(e)).first;
    }
    return it->second ? &*it->second : nullptr;
  }
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

void RootSlice::require_eager() const {
  if (lazy_) throw Error(ErrorKind::PreconditionViolated, "a lazy slice cannot list its roots");
}

const std::vector<RootVec>& RootSlice::positive_roots() const {
  require_eager();
  return positives_;
}

std::size_t RootSlice::size() const {
  require_eager();
  return 2 * positives_.size();
}

std::size_t RootSlice::real_count() const {
  require_eager();
  return 2 * real_positive_count_;
}

bool RootSlice::contains(const RootVec& v) const { return find_positive(v) != nullptr; }

bool RootSlice::is_real(const RootVec& v) const {
  const Entry* e = find_positive(v);
  return e && e->coroot;
}

std::optional<RealRoot> RootSlice::real(const RootVec& v) const {
  const Entry* e = find_positive(v);
  if (!e || !e->coroot) return std::nullopt;
  if (is_positive(v)) return RealRoot{v, *e->coroot};
  return RealRoot{v, -*e->coroot};
}

std::vector<RootVec> RootSlice::roots() const {
  require_eager();
  std::vector<RootVec> out;
  out.reserve(size());
  for (const auto& v : positives_) {
    out.push_back(v);
    out.push_back(-v);
  }
  std::sort(out.begin(), out.end(), RootOrder{});
  return out;
}

std::vector<RealRoot> RootSlice::real_roots() const {
  require_eager();
  std::vector<RealRoot> out;
  out.reserve(real_count());
  for (const auto& v : positives_) {
    const auto& e = table_.at(v);
    if (!e.coroot) continue;
    out.push_back({v, *e.coroot});
    out.push_back({-v, -*e.coroot});
  }
  std::sort(out.begin(), out.end(), RootOrder{});
  return out;
}

void RootSlice::check_invariants() const {
  if (lazy_) return;
  const std::size_t n = gcm_.rank();
  for (const RootVec& v : positives_) {
    if (!contains(-v)) throw std::logic_error("slice not closed under negation at " + to_string(v));
    const Entry& e = table_.at(v);
    if (e.coroot && pairing(v, *e.coroot, gcm_) != 2)
      throw std::logic_error("coroot does not pair to 2 with " + to_string(v));

    for (std::size_t i = 0; i < n; ++i) {
      if (height(v) == 1 && v[i] == 1) continue;
      // The alpha_i-string through v, inside the height window, has no gaps.
      RootVec bottom = v;
      while (bottom[i] > 0) {
        RootVec d = bottom;
        d[i] -= 1;
        if (!table_.contains(d)) break;
        bottom = std::move(d);
      }
      RootVec t = bottom;
      bool gap = false;
      while (height(t) < h_) {
        t[i] += 1;
        const bool in = table_.contains(t);
        if (in && gap) throw std::logic_error("broken string through " + to_string(v));
        gap |= !in;
      }

      if (e.coroot && height(v) <= h_ - 1) {
        RootVec img = simple_reflect(gcm_, i, v);
        if (covers(img) && !is_real(img))
          throw std::logic_error("simple reflection of real root " + to_string(v) +
                                 " missing from slice");
      }
    }
  }
}

}  // namespace kmroots
