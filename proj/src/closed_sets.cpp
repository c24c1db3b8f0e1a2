#include "kmroots/closed_sets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace kmroots {

RootSet::RootSet(std::vector<RealRoot> roots) : elems_(std::move(roots)) {
  std::sort(elems_.begin(), elems_.end(), RootOrder{});
  elems_.erase(std::unique(elems_.begin(), elems_.end(),
                           [](const RealRoot& a, const RealRoot& b) { return a.root == b.root; }),
               elems_.end());
  index_.reserve(elems_.size());
  for (const auto& r : elems_) index_.insert(r.root);
}

RootSet RootSet::from_vectors(const RootSlice& slice, const std::vector<RootVec>& vectors) {
  std::vector<RealRoot> roots;
  roots.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != slice.gcm().rank())
      throw Error(ErrorKind::DimensionMismatch, "root " + to_string(v) + " has wrong length");
    std::optional<RealRoot> r = slice.covers(v) ? slice.real(v) : real_root_by_descent(slice.gcm(), v);
    if (!r) throw Error(ErrorKind::NotARealRoot, to_string(v) + " is not a real root");
    roots.push_back(std::move(*r));
  }
  return RootSet(std::move(roots));
}

bool RootSet::is_subset_of(const RootSet& other) const {
  return std::all_of(elems_.begin(), elems_.end(),
                     [&](const RealRoot& r) { return other.contains(r.root); });
}

std::vector<RootVec> RootSet::vectors() const {
  std::vector<RootVec> out;
  out.reserve(elems_.size());
  for (const auto& r : elems_) out.push_back(r.root);
  return out;
}

RootSet RootSet::negated() const {
  std::vector<RealRoot> out;
  out.reserve(elems_.size());
  for (const auto& r : elems_) out.push_back(-r);
  return RootSet(std::move(out));
}

RootSet RootSet::transformed(const WeylElt& w) const {
  std::vector<RealRoot> out;
  out.reserve(elems_.size());
  for (const auto& r : elems_) out.push_back(w.act(r));
  return RootSet(std::move(out));
}

RootSet RootSet::united(const RootSet& other) const {
  std::vector<RealRoot> out = elems_;
  out.insert(out.end(), other.elems_.begin(), other.elems_.end());
  return RootSet(std::move(out));
}

std::optional<RealRoot> RootSet::symmetric_element() const {
  for (const auto& r : elems_)
    if (index_.contains(-r.root)) return r;
  return std::nullopt;
}

Coeff RootSet::max_abs_height() const {
  Coeff m = 0;
  for (const auto& r : elems_) m = std::max(m, std::abs(height(r.root)));
  return m;
}

namespace {

// Largest |ht(a) + ht(b)| over pairs drawn from two sets (a != b as roots).
Coeff max_pair_height(const RootSet& first, const RootSet& second) {
  Coeff best = 0;
  for (const auto& a : first)
    for (const auto& b : second) {
      if (a.root == b.root) continue;
      best = std::max(best, std::abs(height(a.root) + height(b.root)));
    }
  return best;
}

void require_depth(const RootSlice& slice, Coeff needed, const char* what) {
  if (needed > slice.height_bound())
    throw Error(ErrorKind::SliceTooShallow, std::string(what) + " needs height " +
                                                std::to_string(needed) + ", slice has " +
                                                std::to_string(slice.height_bound()));
}

}  // namespace

std::optional<SumWitness> is_closed(const RootSet& psi, const RootSlice& slice) {
  require_depth(slice, max_pair_height(psi, psi), "closedness test");
  const auto& e = psi.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      RootVec s = e[i].root + e[j].root;
      if (s.is_zero() || psi.contains(s)) continue;
      if (slice.contains(s)) return SumWitness{e[i], e[j], std::move(s)};
    }
  return std::nullopt;
}

std::string to_string(ClosureResult::Status s) {
  switch (s) {
    case ClosureResult::Status::Closed: return "Closed";
    case ClosureResult::Status::ExceededCap: return "ExceededCap";
    case ClosureResult::Status::EscapedRealRoots: return "EscapedRealRoots";
  }
  return "?";
}

ClosureResult closure(const RootSet& psi, const RootSlice& slice, std::optional<Coeff> cap) {
  const Coeff c = cap.value_or(slice.height_bound());
  require_depth(slice, c, "closure cap");
  if (psi.max_abs_height() > c)
    throw Error(ErrorKind::PreconditionViolated, "closure cap below the input heights");

  std::vector<RealRoot> all(psi.begin(), psi.end());
  std::unordered_set<RootVec> have;
  for (const auto& r : all) have.insert(r.root);

  bool exceeded = false;
  std::size_t fresh_begin = 0;
  while (fresh_begin < all.size()) {
    const std::size_t fresh_end = all.size();
    std::vector<RealRoot> found;
    std::vector<RootVec> imaginary;
    std::unordered_set<RootVec> found_keys;
    for (std::size_t i = fresh_begin; i < fresh_end; ++i)
      for (std::size_t j = 0; j < fresh_end; ++j) {
        if (j >= fresh_begin && j <= i) continue;  // each fresh pair once
        RootVec s = all[i].root + all[j].root;
        if (s.is_zero() || have.contains(s) || found_keys.contains(s)) continue;
        const Coeff h = height(s);
        if (h > c || h < -c) {
          // Non-roots above the cap are harmless when the slice can tell.
          if (!slice.covers(s) || slice.contains(s)) exceeded = true;
          continue;
        }
        if (!slice.contains(s)) continue;
        if (auto r = slice.real(s)) {
          found_keys.insert(s);
          found.push_back(std::move(*r));
        } else {
          imaginary.push_back(std::move(s));
        }
      }
    if (!imaginary.empty()) {
      std::sort(imaginary.begin(), imaginary.end(), RootOrder{});
      all.insert(all.end(), found.begin(), found.end());
      return {ClosureResult::Status::EscapedRealRoots, RootSet(std::move(all)), imaginary.front(),
              c};
    }
    std::sort(found.begin(), found.end(), RootOrder{});
    fresh_begin = fresh_end;
    for (auto& r : found) {
      have.insert(r.root);
      all.push_back(std::move(r));
    }
  }
  return {exceeded ? ClosureResult::Status::ExceededCap : ClosureResult::Status::Closed,
          RootSet(std::move(all)), std::nullopt, c};
}

std::optional<SumWitness> is_ideal(const RootSet& sub, const RootSet& psi,
                                   const RootSlice& slice) {
  if (!sub.is_subset_of(psi)) throw Error(ErrorKind::NotASubset, "ideal candidate not inside set");
  require_depth(slice, max_pair_height(psi, sub), "ideal test");
  for (const auto& a : psi)
    for (const auto& b : sub) {
      RootVec s = a.root + b.root;
      if (s.is_zero() || sub.contains(s)) continue;
      if (a.root == b.root) continue;
      if (slice.contains(s)) return SumWitness{a, b, std::move(s)};
    }
  return std::nullopt;
}

bool pair_prenilpotent(const RealRoot& alpha, const RealRoot& beta, const GCM& gcm) {
  if (alpha.root == beta.root) return true;
  if (alpha.root == -beta.root) return false;
  return pair_relation(alpha, beta, gcm).kind != PairClass::Kind::NotPrenilpotent;
}

std::string to_string(Prenilpotency::Verdict v) {
  switch (v) {
    case Prenilpotency::Verdict::Yes: return "Yes";
    case Prenilpotency::Verdict::No: return "No";
    case Prenilpotency::Verdict::Unknown: return "Unknown";
  }
  return "?";
}

Prenilpotency set_prenilpotent(const RootSet& psi, const RootSlice& slice,
                               std::optional<Coeff> cap) {
  const Coeff c = cap.value_or(slice.height_bound());
  if (auto s = psi.symmetric_element())
    return {Prenilpotency::Verdict::No, psi, std::nullopt, *s, c};
  ClosureResult cl = closure(psi, slice, c);
  switch (cl.status) {
    case ClosureResult::Status::EscapedRealRoots:
      return {Prenilpotency::Verdict::No, std::move(cl.roots), cl.witness, std::nullopt, c};
    case ClosureResult::Status::ExceededCap:
      return {Prenilpotency::Verdict::Unknown, std::move(cl.roots), std::nullopt, std::nullopt, c};
    case ClosureResult::Status::Closed:
      break;
  }
  if (auto s = cl.roots.symmetric_element())
    return {Prenilpotency::Verdict::No, std::move(cl.roots), std::nullopt, *s, c};
  return {Prenilpotency::Verdict::Yes, std::move(cl.roots), std::nullopt, std::nullopt, c};
}

std::string to_string(NilpotencyCondition c) {
  switch (c) {
    case NilpotencyCondition::None: return "None";
    case NilpotencyCondition::NotClosed: return "NotClosed";
    case NilpotencyCondition::NotFinite: return "NotFinite";
    case NilpotencyCondition::NotAsymmetric: return "NotAsymmetric";
  }
  return "?";
}

NilpotencyCheck is_nilpotent(const RootSet& psi, const RootSlice& slice) {
  NilpotencyCheck out{true, NilpotencyCondition::None, {}, std::nullopt, std::nullopt};
  out.sum_witness = is_closed(psi, slice);
  if (out.sum_witness) out.all_violated.push_back(NilpotencyCondition::NotClosed);
  // Finiteness holds for every RootSet.
  out.symmetric_witness = psi.symmetric_element();
  if (out.symmetric_witness) out.all_violated.push_back(NilpotencyCondition::NotAsymmetric);
  if (!out.all_violated.empty()) {
    out.nilpotent = false;
    out.violated = out.all_violated.front();
  }
  return out;
}

RootSet at_or_above(const RootSet& phi, const RootSet& psi) {
  std::vector<RealRoot> out;
  for (const auto& f : phi)
    for (const auto& p : psi)
      if (leq(p.root, f.root)) {
        out.push_back(f);
        break;
      }
  return RootSet(std::move(out));
}

IntersectionResult chamber_in_intersection(const RootSet& phi, const RootSet& psi,
                                           const WeylBall& ball, const RootSlice& slice) {
  const GCM& gcm = ball.gcm();
  if (psi.empty()) throw Error(ErrorKind::PreconditionViolated, "Psi must be nonempty");
  if (!psi.is_subset_of(phi)) throw Error(ErrorKind::PreconditionViolated, "Psi not inside Phi");
  if (phi.symmetric_element())
    throw Error(ErrorKind::PreconditionViolated, "Phi meets -Phi");
  if (auto w = is_closed(phi, slice))
    throw Error(ErrorKind::PreconditionViolated,
                "Phi not closed: " + to_string(w->a.root) + " + " + to_string(w->b.root));

  IntersectionResult res{IntersectionResult::Status::Found, std::nullopt, {}};
  const RootSet target0 = at_or_above(phi, psi);

  // cur[k] is the k-th element of Phi seen from the current base chamber c,
  // i.e. c^{-1} phi_k. The target is tracked by index.
  std::vector<RealRoot> cur = phi.elements();
  const std::size_t N = cur.size();
  std::vector<bool> in_target(N, false);
  for (std::size_t k = 0; k < N; ++k) in_target[k] = target0.contains(cur[k].root);

  auto index_of = [&](const RootVec& v) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < N; ++k)
      if (cur[k].root == v) return k;
    return std::nullopt;
  };
  auto negatives = [&] {
    std::size_t count = 0;
    for (const auto& r : cur) count += is_negative(r.root);
    return count;
  };

  WeylElt base = WeylElt::identity(gcm);
  std::size_t neg_count = negatives();
  for (;;) {
    // Least negative target root in RootOrder.
    std::optional<std::size_t> a;
    for (std::size_t k = 0; k < N; ++k) {
      if (!in_target[k] || !is_negative(cur[k].root)) continue;
      if (!a || RootOrder{}(cur[k].root, cur[*a].root)) a = k;
    }
    if (!a) break;

    // Walk inside X from C_0 until reaching H(cur[a]).
    Chamber x = Chamber::fundamental(gcm);
    while (!in_halfspace(x, cur[*a])) {
      const auto nearest = nearest_in_halfspace(x, cur[*a].root, ball);
      if (nearest.empty()) {
        res.status = IntersectionResult::Status::Inconclusive;
        res.cap_hit = "radius " + std::to_string(ball.radius()) + " reached walking towards " +
                      to_string(cur[*a].root);
        return res;
      }
      const WeylElt& v = ball[nearest.front()];
      const std::size_t i = v.word().front();
      const RealRoot beta = crossing_root(gcm, x, i);
      ++res.walk_steps;

      const auto kb = index_of(beta.root);
      if (!kb || !is_positive(beta.root)) {
        x = adjacent(gcm, x, i);  // stays in X: only the wall of beta is crossed
        continue;
      }
      // beta lies in Phi_+; the chamber-geometric lemma applies to
      // (x, y = x v, alpha, beta).
      ++res.lemma12_checks;
      const RealRoot& alpha = cur[*a];
      if (pairing(alpha.root, beta.coroot, gcm) >= 0 ||
          in_halfspace(x, reflect(beta, alpha.root, gcm)))
        throw std::logic_error("wall-crossing step failed for alpha=" + to_string(alpha.root) +
                               " beta=" + to_string(beta.root));
      const RealRoot next = reflect(beta, alpha, gcm);
      const auto kn = index_of(next.root);
      if (!kn)
        throw Error(ErrorKind::PreconditionViolated,
                    "Phi not closed: r_beta(alpha) = " + to_string(next.root) + " missing");
      if (!in_target[*kn] || !is_negative(next.root))
        throw std::logic_error("r_beta(alpha) left the negative target set");
      a = kn;
    }

    // x lies in X and in H(cur[a]); make it the new base chamber.
    base = WeylElt::multiply(gcm, base, x.elt);
    for (auto& r : cur) r = x.elt.act_inverse(r);
    std::vector<bool> next_target(N, false);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t t = 0; t < N && !next_target[k]; ++t)
        next_target[k] = in_target[t] && leq(cur[t].root, cur[k].root);
    in_target = std::move(next_target);
    ++res.translations;

    const std::size_t now = negatives();
    if (now >= neg_count) throw std::logic_error("translation did not reduce negative roots");
    neg_count = now;
  }

  res.chamber = Chamber{base};
  for (const auto& f : target0)
    if (!in_halfspace(*res.chamber, f))
      throw std::logic_error("returned chamber misses H(" + to_string(f.root) + ")");
  return res;
}

std::vector<RootSet> pronilpotent_filtration(const RootSet& phi, Coeff n_max,
                                             const RootSlice& slice) {
  if (phi.symmetric_element())
    throw Error(ErrorKind::PreconditionViolated, "filtration input meets its negative");
  if (is_closed(phi, slice))
    throw Error(ErrorKind::PreconditionViolated, "filtration input is not closed");

  std::vector<RootSet> levels;
  for (Coeff n = 1; n <= n_max; ++n) {
    std::vector<RealRoot> low;
    for (const auto& r : phi)
      if (std::abs(height(r.root)) <= n) low.push_back(r);
    ClosureResult cl = closure(RootSet(std::move(low)), slice);
    if (cl.status != ClosureResult::Status::Closed)
      throw Error(ErrorKind::ClosureEscaped,
                  "closure of the height-" + std::to_string(n) + " part: " + to_string(cl.status));
    if (!cl.roots.is_subset_of(phi))
      throw std::logic_error("filtration level leaves the closed input set");
    if (!is_nilpotent(cl.roots, slice).nilpotent)
      throw std::logic_error("filtration level is not nilpotent");
    if (!levels.empty() && !levels.back().is_subset_of(cl.roots))
      throw std::logic_error("filtration is not ascending");
    levels.push_back(std::move(cl.roots));
  }
  for (const auto& r : phi)
    if (std::abs(height(r.root)) <= n_max && !levels.back().contains(r.root))
      throw std::logic_error("filtration misses " + to_string(r.root));
  return levels;
}

std::size_t nilpotency_class(const RootSet& psi, const RootSlice& slice) {
  if (!is_nilpotent(psi, slice).nilpotent)
    throw Error(ErrorKind::NotNilpotent, "nilpotency class needs a nilpotent set");
  const auto& e = psi.elements();
  const std::size_t N = e.size();
  std::map<RootVec, std::size_t> idx;
  for (std::size_t k = 0; k < N; ++k) idx.emplace(e[k].root, k);

  // best[k]: longest chain ending with partial sum e[k]; state 1 = in progress.
  std::vector<std::size_t> best(N, 0);
  std::vector<int> state(N, 0);
  std::function<std::size_t(std::size_t)> longest = [&](std::size_t k) -> std::size_t {
    if (state[k] == 2) return best[k];
    if (state[k] == 1) throw std::logic_error("cycle in the partial-sum relation");
    state[k] = 1;
    std::size_t b = 1;
    for (std::size_t j = 0; j < N; ++j) {
      // e[k] = e[p] + e[j] with e[p] in psi
      auto it = idx.find(e[k].root - e[j].root);
      if (it == idx.end()) continue;
      b = std::max(b, longest(it->second) + 1);
    }
    best[k] = b;
    state[k] = 2;
    return b;
  };
  std::size_t out = 0;
  for (std::size_t k = 0; k < N; ++k) out = std::max(out, longest(k));
  return out;
}

}  // namespace kmroots
