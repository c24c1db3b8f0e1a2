#include <doctest.h>

#include <random>

#include "kmroots/gcm.hpp"
#include "oracles.hpp"

using namespace kmroots;
using namespace kmroots::testing;

TEST_CASE("validate_gcm accepts Cartan and affine matrices") {
  CHECK(validate_gcm({{2, -1}, {-1, 2}}).rank() == 2);
  CHECK(validate_gcm({{2, -2}, {-2, 2}}).rank() == 2);
  CHECK(validate_gcm({{2}}).rank() == 1);
}

TEST_CASE("validate_gcm names each failing cell") {
  SUBCASE("asymmetric zero") {
    try {
      validate_gcm({{2, 0}, {-1, 2}});
      FAIL("expected GcmError");
    } catch (const GcmError& e) {
      REQUIRE(e.violations().size() == 1);
      CHECK(e.violations()[0] == GcmViolation{ErrorKind::AsymmetricZero, 0, 1});
      CHECK(e.kind() == ErrorKind::AsymmetricZero);
    }
  }
  SUBCASE("diagonal and positive entries") {
    auto v = gcm_violations({{3, 1}, {-1, 2}});
    REQUIRE(v.size() == 2);
    CHECK(v[0] == GcmViolation{ErrorKind::DiagonalNotTwo, 0, 0});
    CHECK(v[1] == GcmViolation{ErrorKind::PositiveOffDiagonal, 0, 1});
  }
  SUBCASE("shape") {
    CHECK_THROWS_AS(gcm_violations({{2, -1}}), Error);
    CHECK_THROWS_AS(gcm_violations({}), Error);
  }
}

TEST_CASE("validate_gcm agrees with the definition on all 3x3 sign patterns") {
  // Off-diagonal cells range over {0,-1,-2,-3} plus one positive value;
  // the diagonal over {2, 0}. The predicate below is written from scratch.
  const std::vector<Coeff> offdiag{0, -1, -2, -3, 1};
  const std::vector<Coeff> diag{2, 0};
  std::mt19937_64 rng(7);
  std::size_t checked = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    IntMatrix m(3, std::vector<Coeff>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m[i][j] = i == j ? diag[rng() % 8 == 0 ? 1 : 0] : offdiag[rng() % offdiag.size()];
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) ok &= m[i][j] == 2;
        else ok &= m[i][j] <= 0 && ((m[i][j] == 0) == (m[j][i] == 0));
      }
    CHECK(gcm_violations(m).empty() == ok);
    ++checked;
  }
  CHECK(checked == 20000);
}

TEST_CASE("pairing convention and bilinearity") {
  const GCM g = a2();
  const RootVec a1v{1, 0}, a2v{0, 1};
  const CorootVec c1{1, 0}, c2{0, 1};
  CHECK(pairing(a1v, c1, g) == 2);
  CHECK(pairing(a1v, c2, g) == -1);

  // Basis case <alpha_j, alpha_i^vee> = a_ij on an asymmetric matrix.
  const GCM w = wild3();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(pairing(RootVec::basis(3, j), CorootVec::basis(3, i), w) == w(i, j));

  std::mt19937_64 rng(11);
  auto rv = [&] {
    std::vector<Coeff> c(3);
    for (auto& x : c) x = static_cast<Coeff>(rng() % 21) - 10;
    return c;
  };
  for (int t = 0; t < 300; ++t) {
    RootVec x(rv()), y(rv());
    CorootVec h(rv()), k(rv());
    CHECK(pairing(x + y, h, w) == pairing(x, h, w) + pairing(y, h, w));
    CHECK(pairing(x, h + k, w) == pairing(x, h, w) + pairing(x, k, w));
  }

  CHECK_THROWS_AS(pairing(RootVec{1, 0, 0}, c1, g), Error);
}

TEST_CASE("pairing of alpha_1 + delta with its coroot in affine A1") {
  // (alpha_1 + delta) = r_1(alpha_2) = (2,1); its coroot r_1(alpha_2^vee) is
  // alpha_2^vee - a_21 alpha_1^vee = (2,1).
  const GCM g = affine_a1();
  CHECK(pairing(RootVec{2, 1}, CorootVec{2, 1}, g) == 2);
}

TEST_CASE("overflow is detected, never wrapped") {
  const GCM g = a2();
  const Coeff big = std::numeric_limits<Coeff>::max() / 2;
  CHECK_THROWS_AS(pairing(RootVec{big, big}, CorootVec{big, 0}, g), Error);
}
