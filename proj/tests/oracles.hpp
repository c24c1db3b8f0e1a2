// Independent brute-force oracles and fixtures for the test suites. Nothing
// here calls the library routine it is used to check.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "kmroots/gcm.hpp"
#include "kmroots/roots.hpp"
#include "kmroots/weyl.hpp"

namespace kmroots::testing {

inline GCM a1() { return validate_gcm({{2}}); }
inline GCM a2() { return validate_gcm({{2, -1}, {-1, 2}}); }
inline GCM a1xa1() { return validate_gcm({{2, 0}, {0, 2}}); }
inline GCM b2() { return validate_gcm({{2, -2}, {-1, 2}}); }
inline GCM g2() { return validate_gcm({{2, -1}, {-3, 2}}); }
inline GCM affine_a1() { return validate_gcm({{2, -2}, {-2, 2}}); }
inline GCM a3() { return validate_gcm({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}); }
/// Rank-3 hyperbolic matrix used for sampled checks.
inline GCM hyperbolic3() { return validate_gcm({{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}}); }
/// A non-symmetrizable rank-3 matrix.
inline GCM wild3() { return validate_gcm({{2, -1, -2}, {-3, 2, -1}, {-1, -4, 2}}); }

using Vec = std::vector<Coeff>;

/// Simple reflection written out from the definition r_i(v) = v - <v,a_i^vee> a_i,
/// with <a_j, a_i^vee> = A[i][j].
inline Vec oracle_reflect(const IntMatrix& A, std::size_t i, Vec v) {
  Coeff p = 0;
  for (std::size_t j = 0; j < v.size(); ++j) p += v[j] * A[i][j];
  v[i] -= p;
  return v;
}

/// Full Weyl orbit of the simple roots for a finite-type matrix, by closing
/// under simple reflections with no height window at all.
inline std::set<Vec> oracle_finite_roots(const IntMatrix& A) {
  const std::size_t n = A.size();
  std::set<Vec> seen;
  std::vector<Vec> stack;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    stack.push_back(e);
  }
  while (!stack.empty()) {
    Vec v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (std::size_t i = 0; i < n; ++i) stack.push_back(oracle_reflect(A, i, v));
  }
  return seen;
}

/// Finite Weyl group as a set of matrices (rows = images of basis vectors),
/// generated by closing the simple reflections under multiplication.
inline std::set<std::vector<Vec>> oracle_finite_group(const IntMatrix& A) {
  const std::size_t n = A.size();
  auto image = [&](const std::vector<Vec>& m, std::size_t i) {
    std::vector<Vec> out;
    for (const Vec& col : m) out.push_back(oracle_reflect(A, i, col));
    return out;
  };
  std::vector<Vec> id;
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    id.push_back(e);
  }
  std::set<std::vector<Vec>> seen;
  std::vector<std::vector<Vec>> stack{id};
  while (!stack.empty()) {
    auto m = stack.back();
    stack.pop_back();
    if (!seen.insert(m).second) continue;
    for (std::size_t i = 0; i < n; ++i) stack.push_back(image(m, i));
  }
  return seen;
}

/// Real roots of affine A1 in closed form: +-alpha_1 + k delta.
inline std::set<Vec> oracle_affine_a1_real(Coeff h) {
  std::set<Vec> out;
  for (Coeff k = -h; k <= h; ++k) {
    for (Vec v : {Vec{1 + k, k}, Vec{-1 + k, k}}) {
      const Coeff ht = v[0] + v[1];
      if (ht != 0 && ht <= h && ht >= -h) {
        out.insert(v);
        out.insert({-v[0], -v[1]});
      }
    }
  }
  return out;
}

/// Naive closure by repeated full passes over all pairs; membership is a
/// caller-supplied predicate on vectors.
template <class IsRoot>
std::set<Vec> oracle_closure(std::set<Vec> s, IsRoot is_root, std::size_t max_size = 400) {
  for (bool grew = true; grew && s.size() < max_size;) {
    grew = false;
    std::vector<Vec> cur(s.begin(), s.end());
    for (const Vec& a : cur)
      for (const Vec& b : cur) {
        Vec c(a.size());
        bool zero = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
          c[i] = a[i] + b[i];
          zero &= c[i] == 0;
        }
        if (!zero && is_root(c) && s.insert(c).second) grew = true;
      }
  }
  return s;
}

/// Ball elements by value, safe to loop over directly.
inline std::vector<WeylElt> ball_elements(const GCM& g, std::size_t radius) {
  return WeylBall(g, radius).elements();
}

inline std::set<Vec> as_set(const std::vector<RootVec>& v) {
  std::set<Vec> out;
  for (const auto& r : v) out.insert(r.coeffs());
  return out;
}

inline std::set<Vec> as_set(const std::vector<RealRoot>& v) {
  std::set<Vec> out;
  for (const auto& r : v) out.insert(r.root.coeffs());
  return out;
}

}  // namespace kmroots::testing
