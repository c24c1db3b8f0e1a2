#include <doctest.h>

#include <map>

#include "kmroots/weyl.hpp"
#include "oracles.hpp"

using namespace kmroots;
using namespace kmroots::testing;

namespace {

/// Columns of w's root action, in the shape oracle_finite_group produces.
std::vector<Vec> columns(const WeylElt& w) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < w.rank(); ++c) out.push_back(w.root_action().column<RootTag>(c).coeffs());
  return out;
}

/// Word acting on v by composing the definition: r_{i1}(r_{i2}(... v)).
Vec oracle_act(const IntMatrix& A, const std::vector<std::size_t>& word, Vec v) {
  for (std::size_t k = word.size(); k-- > 0;) v = oracle_reflect(A, word[k], v);
  return v;
}

/// ShortLex-least word for every group element up to length L, by
/// enumerating all words in ShortLex order.
std::map<std::vector<Vec>, std::vector<std::size_t>> oracle_normal_forms(const IntMatrix& A,
                                                                        std::size_t L) {
  const std::size_t n = A.size();
  std::map<std::vector<Vec>, std::vector<std::size_t>> first;
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t len = 0; len <= L; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : layer) {
      std::vector<Vec> cols;
      for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        cols.push_back(oracle_act(A, w, e));
      }
      first.emplace(cols, w);
      for (std::size_t i = 0; i < n; ++i) {
        auto u = w;
        u.push_back(i);
        next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  return first;
}

}  // namespace

TEST_CASE("ball sizes") {
  CHECK(WeylBall(a2(), 3).size() == 6);
  CHECK(WeylBall(a1xa1(), 2).size() == 4);
  CHECK(WeylBall(affine_a1(), 4).size() == 9);
  CHECK(WeylBall(affine_a1(), 4).layer_sizes() == std::vector<std::size_t>{1, 2, 2, 2, 2});
  CHECK(WeylBall(b2(), 6).size() == 8);
  CHECK(WeylBall(g2(), 8).size() == 12);
  CHECK(WeylBall(a3(), 8).size() == 24);
}

TEST_CASE("finite balls equal the group generated by the reflections") {
  for (const GCM& g : {a2(), b2(), g2(), a1xa1(), a3()}) {
    const WeylBall ball(g, 10);
    std::set<std::vector<Vec>> got;
    for (const auto& w : ball.elements()) got.insert(columns(w));
    CHECK(got == oracle_finite_group(g.matrix()));
    CHECK(got.size() == ball.size());
  }
}

TEST_CASE("stored words are ShortLex normal forms") {
  for (const GCM& g : {a2(), g2(), affine_a1(), hyperbolic3(), wild3()}) {
    const std::size_t L = g.rank() == 3 ? 5 : 7;
    const auto forms = oracle_normal_forms(g.matrix(), L);
    const WeylBall ball(g, L);
    CHECK(ball.size() == forms.size());
    for (const auto& w : ball.elements()) {
      auto it = forms.find(columns(w));
      REQUIRE(it != forms.end());
      CHECK(w.word() == it->second);
      CHECK(w.length() == it->second.size());
    }
    for (std::size_t k = 1; k < ball.size(); ++k)
      CHECK(ball[k - 1].length() <= ball[k].length());
  }
}

TEST_CASE("action on roots") {
  const GCM g = a2();
  CHECK(WeylElt::simple(g, 0).act(RootVec{1, 0}) == RootVec{-1, 0});
  const std::size_t w12[] = {0, 1};
  CHECK(WeylElt::from_word(g, w12).act(RootVec{0, 1}) == RootVec{-1, -1});
  CHECK(WeylElt::identity(g).act(RootVec{1, 1}) == RootVec{1, 1});
  const std::size_t w121[] = {0, 1, 0}, w212[] = {1, 0, 1};
  CHECK(WeylElt::from_word(g, w121) == WeylElt::from_word(g, w212));
  CHECK(WeylElt::from_word(g, w212).word() == std::vector<std::size_t>{0, 1, 0});
}

TEST_CASE("words agree with composed reflections; inverses and products") {
  for (const GCM& g : {g2(), affine_a1(), wild3()}) {
    const WeylBall ball(g, 4);
    for (const auto& w : ball.elements()) {
      for (std::size_t j = 0; j < g.rank(); ++j) {
        Vec e(g.rank(), 0);
        e[j] = 1;
        CHECK(w.act(RootVec(e)).coeffs() == oracle_act(g.matrix(), w.word(), e));
        CHECK(w.act_inverse(w.act(RootVec(e))) == RootVec(e));
      }
      const WeylElt inv = w.inverse(g);
      CHECK(WeylElt::multiply(g, w, inv) == WeylElt::identity(g));
      CHECK(inv.length() == w.length());
      // Pairing is W-invariant: <w a, w h> = <a, h>.
      for (const auto& r : enumerate_real_roots(g, 3))
        CHECK(pairing(w.act(r.root), w.act(r.coroot), g) == 2);
    }
  }
}

TEST_CASE("descents match length changes") {
  const GCM g = hyperbolic3();
  const WeylBall ball(g, 4);
  for (const auto& w : ball.elements())
    for (std::size_t i = 0; i < g.rank(); ++i) {
      const WeylElt left = WeylElt::multiply(g, WeylElt::simple(g, i), w);
      const WeylElt right = WeylElt::multiply(g, w, WeylElt::simple(g, i));
      CHECK(w.has_left_descent(i) == (left.length() < w.length()));
      CHECK(w.has_right_descent(i) == (right.length() < w.length()));
    }
}

TEST_CASE("inversion sets") {
  const GCM g = a2();
  const RootSlice slice(g, 4);
  CHECK(inversion_set(WeylElt::simple(g, 0), slice) == std::vector<RootVec>{RootVec{1, 0}});
  CHECK(inversion_set(WeylElt::identity(g), slice).empty());
  const std::size_t w12[] = {0, 1};
  auto inv = inversion_set(WeylElt::from_word(g, w12), slice);
  CHECK(as_set(inv) == std::set<Vec>{{1, 0}, {1, 1}});

  SUBCASE("size equals length, members checked directly") {
    for (const GCM& h : {affine_a1(), hyperbolic3(), wild3()}) {
      const RootSlice s(h, 40, SliceMode::Eager);
      for (const auto& w : ball_elements(h, 3)) {
        auto n = inversion_set(w, s);
        CHECK(n.size() == w.length());
        for (const auto& v : n) {
          CHECK(is_positive(v));
          CHECK(is_negative(w.act_inverse(v)));
        }
      }
    }
  }
  SUBCASE("too shallow a slice is reported") {
    const RootSlice s(wild3(), 2);
    const std::size_t w[] = {0, 1, 2, 0, 1};
    CHECK_THROWS_AS(inversion_set(WeylElt::from_word(wild3(), w), s), Error);
  }
}
