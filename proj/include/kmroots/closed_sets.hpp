#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "kmroots/chambers.hpp"
#include "kmroots/roots.hpp"
#include "kmroots/weyl.hpp"

namespace kmroots {

/// A finite set of real roots, kept sorted by RootOrder without duplicates.
class RootSet {
 public:
  RootSet() = default;
  explicit RootSet(std::vector<RealRoot> roots);
  /// Looks every vector up in the slice; throws NotARealRoot otherwise.
  static RootSet from_vectors(const RootSlice& slice, const std::vector<RootVec>& vectors);

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const std::vector<RealRoot>& elements() const noexcept { return elems_; }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  const RealRoot& operator[](std::size_t k) const { return elems_[k]; }

  bool contains(const RootVec& v) const { return index_.contains(v); }
  bool is_subset_of(const RootSet& other) const;
  std::vector<RootVec> vectors() const;

  RootSet negated() const;
  RootSet transformed(const WeylElt& w) const;
  RootSet united(const RootSet& other) const;

  /// Some gamma with gamma, -gamma both present, the least in RootOrder.
  std::optional<RealRoot> symmetric_element() const;
  /// Largest |height| among the elements; 0 when empty.
  Coeff max_abs_height() const;

  friend bool operator==(const RootSet& a, const RootSet& b) { return a.elems_ == b.elems_; }

 private:
  std::vector<RealRoot> elems_;
  std::unordered_set<RootVec> index_;
};

/// a + b = sum with sum a root that the set fails to contain.
struct SumWitness {
  RealRoot a;
  RealRoot b;
  RootVec sum;
};

/// nullopt if Psi is closed; otherwise the first offending pair in RootOrder.
/// Sums are tested against all of Delta, imaginary roots included. Throws
/// SliceTooShallow if some pairwise sum could exceed the slice.
std::optional<SumWitness> is_closed(const RootSet& psi, const RootSlice& slice);

struct ClosureResult {
  enum class Status { Closed, ExceededCap, EscapedRealRoots };
  Status status;
  RootSet roots;                   // partial unless Closed
  std::optional<RootVec> witness;  // imaginary root reached
  Coeff cap;
};
std::string to_string(ClosureResult::Status s);

/// Saturates Psi under root sums, level by level; each level's new roots are
/// inserted in RootOrder. An imaginary sum ends the search (EscapedRealRoots);
/// a root sum above the cap (or a sum the slice cannot decide) leaves the
/// result undecided (ExceededCap). The cap defaults to, and may not exceed,
/// the slice bound.
ClosureResult closure(const RootSet& psi, const RootSlice& slice,
                      std::optional<Coeff> cap = std::nullopt);

/// nullopt if sub is an ideal in psi. Throws NotASubset, SliceTooShallow.
std::optional<SumWitness> is_ideal(const RootSet& sub, const RootSet& psi,
                                   const RootSlice& slice);

/// {alpha, beta} prenilpotent. alpha = beta gives true, alpha = -beta false;
/// otherwise not (m < 0, n < 0 and mn >= 4).
bool pair_prenilpotent(const RealRoot& alpha, const RealRoot& beta, const GCM& gcm);

struct Prenilpotency {
  enum class Verdict { Yes, No, Unknown };
  Verdict verdict;
  RootSet closure;                           // the nilpotent closure when Yes
  std::optional<RootVec> imaginary_witness;  // No: closure escaped
  std::optional<RealRoot> symmetric_witness; // No: gamma and -gamma in closure
  Coeff cap;
};
std::string to_string(Prenilpotency::Verdict v);

/// Psi is prenilpotent iff its closure is finite, real and meets no pair
/// {gamma, -gamma}. Unknown when the cap is reached first.
Prenilpotency set_prenilpotent(const RootSet& psi, const RootSlice& slice,
                               std::optional<Coeff> cap = std::nullopt);

enum class NilpotencyCondition { None, NotClosed, NotFinite, NotAsymmetric };
std::string to_string(NilpotencyCondition c);

struct NilpotencyCheck {
  bool nilpotent;
  NilpotencyCondition violated;  // first violated, None when nilpotent
  std::vector<NilpotencyCondition> all_violated;
  std::optional<SumWitness> sum_witness;
  std::optional<RealRoot> symmetric_witness;
};

/// Closed, finite (always, for a RootSet) and Psi meets -Psi trivially.
NilpotencyCheck is_nilpotent(const RootSet& psi, const RootSlice& slice);

/// Phi_{>= Psi}: elements of phi lying above some element of psi.
RootSet at_or_above(const RootSet& phi, const RootSet& psi);

struct IntersectionResult {
  enum class Status { Found, Inconclusive };
  Status status;
  std::optional<Chamber> chamber;
  std::string cap_hit;
  std::size_t translations = 0;
  std::size_t walk_steps = 0;
  std::size_t lemma12_checks = 0;
};

/// A chamber in the intersection of H(phi) over phi in Phi_{>= Psi}, built by
/// the chamber-translation induction: while some target root is negative,
/// walk from C_0 inside X = (intersection of H(phi), phi in Phi_+) towards a
/// negative target root, either stepping through a wall outside Phi_+ or
/// trading alpha for r_beta(alpha) when the first wall beta lies in Phi_+,
/// then translate the found chamber to C_0. Each translation makes at least
/// one more root of Phi positive.
///
/// Phi must be closed in the slice and meet -Phi trivially, Psi must be a
/// nonempty subset (PreconditionViolated otherwise). Inconclusive when a
/// walk needs chambers beyond the ball radius.
IntersectionResult chamber_in_intersection(const RootSet& phi, const RootSet& psi,
                                           const WeylBall& ball, const RootSlice& slice);

/// Closures of Phi_{<= n} for n = 1..n_max, each checked nilpotent, inside
/// Phi and inside the next level. Throws PreconditionViolated for an input
/// that is not closed and asymmetric, ClosureEscaped if a level fails to
/// close.
std::vector<RootSet> pronilpotent_filtration(const RootSet& phi, Coeff n_max,
                                             const RootSlice& slice);

/// Longest chain beta_1, ..., beta_k in Psi whose partial sums all stay in
/// Psi. Throws NotNilpotent.
std::size_t nilpotency_class(const RootSet& psi, const RootSlice& slice);

}  // namespace kmroots
