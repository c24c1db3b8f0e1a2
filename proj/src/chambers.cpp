#include "kmroots/chambers.hpp"

#include <algorithm>
#include <stdexcept>

namespace kmroots {

bool in_halfspace(const Chamber& x, const RootVec& alpha) {
  return is_positive(x.elt.act_inverse(alpha));
}

Chamber adjacent(const GCM& gcm, const Chamber& x, std::size_t i) {
  return {WeylElt::multiply(gcm, x.elt, WeylElt::simple(gcm, i))};
}

RealRoot crossing_root(const GCM& gcm, const Chamber& x, std::size_t i) {
  return x.elt.act(simple_root(gcm, i));
}

std::size_t chamber_distance(const GCM& gcm, const Chamber& x, const Chamber& y) {
  return WeylElt::multiply(gcm, x.elt.inverse(gcm), y.elt).length();
}

std::vector<RealRoot> separating_walls(const Chamber& x, const Chamber& y,
                                       const RootSlice& slice) {
  std::vector<RealRoot> out;
  for (const RootVec& a : slice.positive_roots()) {
    auto r = slice.real(a);
    if (!r) continue;
    if (in_halfspace(x, a) != in_halfspace(y, a)) out.push_back(*r);
  }
  const std::size_t d = chamber_distance(slice.gcm(), x, y);
  if (out.size() < d)
    throw Error(ErrorKind::SliceTooShallow, "found " + std::to_string(out.size()) +
                                                " separating walls, distance is " +
                                                std::to_string(d));
  return out;
}

std::vector<Chamber> minimal_gallery(const GCM& gcm, const Chamber& x, const Chamber& y) {
  const WeylElt step = WeylElt::multiply(gcm, x.elt.inverse(gcm), y.elt);
  std::vector<Chamber> out{x};
  WeylElt cur = x.elt;
  for (std::size_t i : step.word()) {
    cur = WeylElt::multiply(gcm, cur, WeylElt::simple(gcm, i));
    out.push_back({cur});
  }
  return out;
}

std::string to_string(DihedralType t) {
  switch (t) {
    case DihedralType::A1xA1: return "A1xA1";
    case DihedralType::A2: return "A2";
    case DihedralType::B2: return "B2";
    case DihedralType::G2: return "G2";
  }
  return "?";
}

std::size_t root_count(DihedralType t) {
  switch (t) {
    case DihedralType::A1xA1: return 4;
    case DihedralType::A2: return 6;
    case DihedralType::B2: return 8;
    case DihedralType::G2: return 12;
  }
  return 0;
}

std::string to_string(PairClass::Kind k) {
  switch (k) {
    case PairClass::Kind::NotPrenilpotent: return "NotPrenilpotent";
    case PairClass::Kind::FiniteDihedral: return "FiniteDihedral";
    case PairClass::Kind::InfiniteDihedralPrenilpotent: return "InfiniteDihedralPrenilpotent";
  }
  return "?";
}

PairClass pair_relation(const RealRoot& alpha, const RealRoot& beta, const GCM& gcm) {
  if (alpha.root == beta.root || alpha.root == -beta.root)
    throw Error(ErrorKind::EqualOrOpposite, "pair_relation needs alpha != +-beta");
  const Coeff m = pairing(alpha.root, beta.coroot, gcm);
  const Coeff n = pairing(beta.root, alpha.coroot, gcm);
  const Coeff mn = detail::checked_mul(m, n);
  if (m < 0 && n < 0 && mn >= 4) return {PairClass::Kind::NotPrenilpotent, std::nullopt, m, n};
  if ((m == 0) != (n == 0))
    throw std::logic_error("pairings of real roots vanish together; got m=" + std::to_string(m) +
                           " n=" + std::to_string(n));
  if (mn >= 0 && mn <= 3) {
    static constexpr DihedralType types[] = {DihedralType::A1xA1, DihedralType::A2,
                                             DihedralType::B2, DihedralType::G2};
    return {PairClass::Kind::FiniteDihedral, types[mn], m, n};
  }
  return {PairClass::Kind::InfiniteDihedralPrenilpotent, std::nullopt, m, n};
}

std::string to_string(NestResult::Kind k) {
  switch (k) {
    case NestResult::Kind::SubsetWithinBall: return "SubsetWithinBall";
    case NestResult::Kind::SupersetWithinBall: return "SupersetWithinBall";
    case NestResult::Kind::NotNested: return "NotNested";
    case NestResult::Kind::Undetermined: return "Undetermined";
  }
  return "?";
}

NestResult nestedness(const RealRoot& alpha, const RealRoot& beta, const WeylBall& ball) {
  const GCM& gcm = ball.gcm();
  if (alpha.root == beta.root || alpha.root == -beta.root)
    throw Error(ErrorKind::EqualOrOpposite, "nestedness needs alpha != +-beta");
  const Coeff m = pairing(alpha.root, beta.coroot, gcm);
  const Coeff n = pairing(beta.root, alpha.coroot, gcm);

  NestResult res{NestResult::Kind::Undetermined, std::nullopt, std::nullopt,
                 m > 0 && n > 0 && detail::checked_mul(m, n) >= 4, ball.radius()};
  for (const WeylElt& w : ball.elements()) {
    const bool a = is_positive(w.act_inverse(alpha.root));
    const bool b = is_positive(w.act_inverse(beta.root));
    if (a && !b && !res.in_alpha_not_beta) res.in_alpha_not_beta = Chamber{w};
    if (b && !a && !res.in_beta_not_alpha) res.in_beta_not_alpha = Chamber{w};
    if (res.in_alpha_not_beta && res.in_beta_not_alpha) break;
  }
  if (res.in_alpha_not_beta && res.in_beta_not_alpha)
    res.kind = NestResult::Kind::NotNested;
  else if (res.in_beta_not_alpha)
    res.kind = NestResult::Kind::SubsetWithinBall;
  else if (res.in_alpha_not_beta)
    res.kind = NestResult::Kind::SupersetWithinBall;
  return res;
}

std::vector<std::size_t> nearest_in_halfspace(const Chamber& x, const RootVec& alpha,
                                              const WeylBall& ball) {
  // x v in H(alpha) iff v^{-1} (x^{-1} alpha) > 0.
  const RootVec gamma = x.elt.act_inverse(alpha);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= ball.radius(); ++k) {
    auto layer = ball.layer(k);
    if (layer.empty()) break;
    const std::size_t offset = static_cast<std::size_t>(layer.data() - ball.elements().data());
    for (std::size_t t = 0; t < layer.size(); ++t)
      if (is_positive(layer[t].act_inverse(gamma))) out.push_back(offset + t);
    if (!out.empty()) break;
  }
  return out;
}

namespace {

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorKind::InstancePreconditionViolated, what);
}

}  // namespace

CheckOutcome check_lemma12(const GCM& gcm, const Lemma12Instance& inst, const WeylBall& ball) {
  const auto& [x, y, alpha, beta] = inst;
  if (beta.root == -alpha.root) violated("beta = -alpha");
  if (in_halfspace(x, alpha)) violated("x lies in H(alpha)");
  if (!in_halfspace(y, alpha)) violated("y does not lie in H(alpha)");
  const std::size_t dxy = chamber_distance(gcm, x, y);
  if (dxy > ball.radius()) violated("d(x, y) exceeds the ball radius; minimality not checkable");
  const auto nearest = nearest_in_halfspace(x, alpha.root, ball);
  if (nearest.empty() || ball[nearest.front()].length() != dxy)
    violated("y is not at minimal distance from x in H(alpha)");
  if (!in_halfspace(x, beta)) violated("x does not lie in H(beta)");
  if (in_halfspace(y, beta)) violated("y lies in H(beta)");
  bool has_adjacent = false;
  for (std::size_t i = 0; i < gcm.rank() && !has_adjacent; ++i)
    has_adjacent = in_halfspace(adjacent(gcm, x, i), -beta.root);
  if (!has_adjacent) violated("no chamber adjacent to x lies in H(-beta)");

  CheckOutcome out;
  out.alpha_beta_pairing = pairing(alpha.root, beta.coroot, gcm);
  out.x_in_reflected_alpha = in_halfspace(x, reflect(beta, alpha.root, gcm));
  out.passed = out.alpha_beta_pairing < 0 && !out.x_in_reflected_alpha;
  if (!out.passed) {
    out.detail = "alpha=" + to_string(alpha.root) + " beta=" + to_string(beta.root) +
                 " pairing=" + std::to_string(out.alpha_beta_pairing) +
                 (out.x_in_reflected_alpha ? " x in H(r_beta alpha)" : "");
  }
  return out;
}

std::vector<Lemma12Instance> lemma12_instances(const GCM& gcm, const Chamber& x,
                                               const RealRoot& alpha, const WeylBall& ball) {
  std::vector<Lemma12Instance> out;
  if (in_halfspace(x, alpha)) return out;
  for (std::size_t v : nearest_in_halfspace(x, alpha.root, ball)) {
    const Chamber y{WeylElt::multiply(gcm, x.elt, ball[v])};
    for (std::size_t i = 0; i < gcm.rank(); ++i) {
      RealRoot beta = crossing_root(gcm, x, i);
      if (beta.root == -alpha.root || in_halfspace(y, beta)) continue;
      out.push_back({x, y, alpha, std::move(beta)});
    }
  }
  return out;
}

}  // namespace kmroots
