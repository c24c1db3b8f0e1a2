#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kmroots/roots.hpp"
#include "kmroots/weyl.hpp"

namespace kmroots {

/// The chamber w C_0 of the Davis complex. Chambers are modelled purely
/// through the chamber graph (the Cayley graph of the Weyl group).
struct Chamber {
  WeylElt elt;

  static Chamber fundamental(const GCM& gcm) { return {WeylElt::identity(gcm)}; }
  friend bool operator==(const Chamber&, const Chamber&) = default;
};

/// x = w C_0 lies in H(alpha) iff w^{-1} alpha is positive.
bool in_halfspace(const Chamber& x, const RootVec& alpha);
inline bool in_halfspace(const Chamber& x, const RealRoot& alpha) {
  return in_halfspace(x, alpha.root);
}

/// The chamber x r_i, adjacent to x.
Chamber adjacent(const GCM& gcm, const Chamber& x, std::size_t i);
/// The root whose half-space contains x but not x r_i, namely x(alpha_i).
RealRoot crossing_root(const GCM& gcm, const Chamber& x, std::size_t i);

/// Word length of x^{-1} y.
std::size_t chamber_distance(const GCM& gcm, const Chamber& x, const Chamber& y);

/// Positive representatives of the walls separating x and y. Throws
/// SliceTooShallow if the slice holds fewer than chamber_distance of them.
std::vector<RealRoot> separating_walls(const Chamber& x, const Chamber& y,
                                       const RootSlice& slice);

/// x, x r_{i1}, x r_{i1} r_{i2}, ..., y along the ShortLex word of x^{-1} y,
/// so the lowest simple index is crossed first.
std::vector<Chamber> minimal_gallery(const GCM& gcm, const Chamber& x, const Chamber& y);

enum class DihedralType { A1xA1, A2, B2, G2 };
std::string to_string(DihedralType t);
std::size_t root_count(DihedralType t);

/// Classification of a pair of real roots alpha != +-beta from
/// m = <alpha, beta^vee> and n = <beta, alpha^vee>.
struct PairClass {
  enum class Kind {
    NotPrenilpotent,               // m, n < 0 and mn >= 4
    FiniteDihedral,                // mn in {0,1,2,3}
    InfiniteDihedralPrenilpotent,  // walls disjoint, pair still prenilpotent
  };
  Kind kind;
  std::optional<DihedralType> type;
  Coeff m;
  Coeff n;
};
std::string to_string(PairClass::Kind k);

/// Throws EqualOrOpposite when alpha = +-beta.
PairClass pair_relation(const RealRoot& alpha, const RealRoot& beta, const GCM& gcm);

/// Nestedness of H(alpha) and H(beta), scanned over a ball of chambers, with
/// the exact algebraic answer alongside: {alpha, beta} is nested iff
/// {alpha, -beta} is not prenilpotent, i.e. m, n > 0 and mn >= 4.
struct NestResult {
  enum class Kind { SubsetWithinBall, SupersetWithinBall, NotNested, Undetermined };
  Kind kind;
  std::optional<Chamber> in_alpha_not_beta;
  std::optional<Chamber> in_beta_not_alpha;
  bool exactly_nested;
  std::size_t radius;
};
std::string to_string(NestResult::Kind k);

NestResult nestedness(const RealRoot& alpha, const RealRoot& beta, const WeylBall& ball);

/// Ball elements v, all of the least length, such that x v lies in H(alpha).
/// Empty if none lies within the ball radius.
std::vector<std::size_t> nearest_in_halfspace(const Chamber& x, const RootVec& alpha,
                                              const WeylBall& ball);

struct Lemma12Instance {
  Chamber x;
  Chamber y;
  RealRoot alpha;
  RealRoot beta;
};

struct CheckOutcome {
  bool passed;
  Coeff alpha_beta_pairing;     // must be negative
  bool x_in_reflected_alpha;    // must be false
  std::string detail;
};

/// Validates the hypotheses of the instance against the ball (throws
/// InstancePreconditionViolated naming the failed one), then checks
/// <alpha, beta^vee> < 0 and x not in H(r_beta(alpha)).
CheckOutcome check_lemma12(const GCM& gcm, const Lemma12Instance& inst, const WeylBall& ball);

/// Every valid instance with the given x and alpha: all nearest y in H(alpha)
/// and all walls beta of x that separate x from y.
std::vector<Lemma12Instance> lemma12_instances(const GCM& gcm, const Chamber& x,
                                               const RealRoot& alpha, const WeylBall& ball);

}  // namespace kmroots
