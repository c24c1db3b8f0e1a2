#include <doctest.h>

#include "kmroots/roots.hpp"
#include "oracles.hpp"

using namespace kmroots;
using namespace kmroots::testing;

TEST_CASE("height and partial order") {
  CHECK(height(RootVec{1, 2}) == 3);
  CHECK(leq(RootVec{1, 0}, RootVec{1, 1}));
  CHECK_FALSE(leq(RootVec{1, 0}, RootVec{0, 1}));
  CHECK(is_positive(RootVec{0, 3}));
  CHECK_FALSE(is_positive(RootVec{-1, 3}));
  CHECK(is_negative(RootVec{-1, 0}));
}

TEST_CASE("real roots by orbit search") {
  SUBCASE("A2") {
    auto r = enumerate_real_roots(a2(), 2);
    CHECK(as_set(r) == oracle_finite_roots(a2().matrix()));
    CHECK(r.size() == 6);
  }
  SUBCASE("affine A1 up to height 5 matches the closed form") {
    auto r = enumerate_real_roots(affine_a1(), 5);
    CHECK(r.size() == 12);
    CHECK(as_set(r) == oracle_affine_a1_real(5));
  }
  SUBCASE("height 1 gives the simple roots and their negatives") {
    for (const GCM& g : {a2(), affine_a1(), hyperbolic3(), wild3()}) {
      auto r = enumerate_real_roots(g, 1);
      CHECK(r.size() == 2 * g.rank());
      for (const auto& x : r) CHECK(std::abs(height(x.root)) == 1);
    }
  }
  SUBCASE("every coroot pairs to 2") {
    for (const GCM& g : {g2(), b2(), hyperbolic3(), wild3()})
      for (const auto& x : enumerate_real_roots(g, 9)) CHECK(pairing(x.root, x.coroot, g) == 2);
  }
}

TEST_CASE("affine A1 coroot tracked through the orbit") {
  auto r = enumerate_real_roots(affine_a1(), 5);
  auto it = std::find_if(r.begin(), r.end(), [](const RealRoot& x) { return x.root == RootVec{2, 1}; });
  REQUIRE(it != r.end());
  CHECK(it->coroot == CorootVec{2, 1});
}

TEST_CASE("root slices") {
  SUBCASE("A2 stabilises at its six roots") {
    RootSlice s(a2(), 10);
    CHECK(s.size() == 6);
    CHECK(s.real_count() == 6);
  }
  SUBCASE("affine A1 height 5: 12 real, 4 imaginary") {
    RootSlice s(affine_a1(), 5);
    CHECK(s.size() == 16);
    CHECK(s.real_count() == 12);
    for (Coeff k : {1, 2}) {
      CHECK(s.contains(RootVec{k, k}));
      CHECK_FALSE(s.is_real(RootVec{k, k}));
      CHECK(s.contains(RootVec{-k, -k}));
    }
  }
  SUBCASE("rank one") {
    RootSlice s(a1(), 3);
    CHECK(s.size() == 2);
  }
  SUBCASE("membership beyond the bound is refused") {
    RootSlice s(affine_a1(), 5);
    CHECK_THROWS_AS(s.contains(RootVec{3, 3}), Error);
    CHECK_FALSE(s.contains(RootVec{1, -1}));
    CHECK_FALSE(s.contains(RootVec{0, 0}));
  }
}

TEST_CASE("string enumeration agrees with orbit search, h <= 12") {
  for (const GCM& g : {a2(), b2(), g2(), a3(), affine_a1(), hyperbolic3(), wild3(),
                       validate_gcm({{2, -3}, {-3, 2}}), validate_gcm({{2, -1}, {-4, 2}})}) {
    for (Coeff h : {1, 4, 8, 12}) {
      RootSlice s(g, h);
      CAPTURE(h);
      CHECK(as_set(s.real_roots()) == as_set(enumerate_real_roots(g, h)));
    }
  }
}

TEST_CASE("finite-type slices contain exactly the orbit") {
  for (const GCM& g : {a2(), b2(), g2(), a3(), a1xa1()}) {
    RootSlice s(g, 12);
    CHECK(as_set(s.roots()) == oracle_finite_roots(g.matrix()));
  }
}

TEST_CASE("descent recognises real roots and rejects the rest") {
  const GCM g = affine_a1();
  CHECK(real_root_by_descent(g, RootVec{3, 2}).has_value());
  CHECK_FALSE(real_root_by_descent(g, RootVec{2, 2}).has_value());
  CHECK_FALSE(real_root_by_descent(g, RootVec{2, 0}).has_value());
  CHECK_FALSE(real_root_by_descent(g, RootVec{1, -1}).has_value());
  auto neg = real_root_by_descent(g, RootVec{-2, -1});
  REQUIRE(neg);
  CHECK(neg->coroot == CorootVec{-2, -1});
}

TEST_CASE("reflections") {
  const GCM g = a2();
  const RealRoot a1r = simple_root(g, 0);
  CHECK(reflect(a1r, RootVec{0, 1}, g) == RootVec{1, 1});
  CHECK(reflect(a1r, a1r.root, g) == RootVec{-1, 0});
  CHECK(reflect(simple_root(affine_a1(), 0), RootVec{0, 1}, affine_a1()) == RootVec{2, 1});

  SUBCASE("involution on slices, reflecting every real root") {
    for (const GCM& h : {g2(), hyperbolic3(), wild3()}) {
      RootSlice s(h, 8);
      auto real = s.real_roots();
      for (const auto& a : real)
        for (const auto& b : real) {
          RootVec img = reflect(a, b.root, h);
          CHECK(reflect(a, img, h) == b.root);
          if (s.covers(img)) CHECK(s.is_real(img));
        }
    }
  }
}

TEST_CASE("coroots from descent match the orbit-tracked coroots") {
  for (const GCM& g : {g2(), hyperbolic3(), wild3()}) {
    RootSlice s(g, 10);
    for (const auto& r : enumerate_real_roots(g, 10)) {
      auto other = s.real(r.root);
      REQUIRE(other);
      CHECK(other->coroot == r.coroot);
    }
  }
}

namespace {

/// Every nonzero lattice vector with coefficients in [-h, h] and |height| <= h.
std::vector<RootVec> lattice_box(std::size_t n, Coeff h) {
  std::vector<RootVec> out;
  std::vector<Coeff> c(n, -h);
  for (;;) {
    Coeff ht = 0;
    bool zero = true;
    for (Coeff x : c) {
      ht += x;
      zero &= x == 0;
    }
    if (!zero && ht <= h && ht >= -h) out.emplace_back(c);
    std::size_t k = 0;
    while (k < n && c[k] == h) c[k++] = -h;
    if (k == n) break;
    ++c[k];
  }
  return out;
}

}  // namespace

TEST_CASE("classify_root agrees with the eager slice on every small vector") {
  for (const GCM& g : {a2(), g2(), affine_a1(), hyperbolic3(), wild3(), a3()}) {
    const Coeff h = g.rank() == 2 ? 12 : 7;
    const RootSlice slice(g, h);
    for (const RootVec& v : lattice_box(g.rank(), h)) {
      const RootClass c = classify_root(g, v);
      const bool root = slice.contains(v);
      CHECK((c.kind != RootClass::Kind::NotRoot) == root);
      if (root) {
        CHECK((c.kind == RootClass::Kind::Real) == slice.is_real(v));
      }
      if (c.kind == RootClass::Kind::Real) {
        REQUIRE(c.coroot);
        CHECK(pairing(v, *c.coroot, g) == 2);
      }
    }
  }
}

TEST_CASE("lazy slices answer like eager ones") {
  for (const GCM& g : {affine_a1(), hyperbolic3(), wild3()}) {
    const Coeff h = 8;
    const RootSlice eager(g, h);
    const RootSlice lazy(g, h, SliceMode::Lazy);
    CHECK(lazy.mode() == SliceMode::Lazy);
    for (const RootVec& v : lattice_box(g.rank(), h)) {
      CHECK(lazy.contains(v) == eager.contains(v));
      if (eager.contains(v)) CHECK(lazy.is_real(v) == eager.is_real(v));
    }
    CHECK_THROWS_AS(lazy.roots(), Error);
    CHECK_THROWS_AS(lazy.size(), Error);
  }
}
