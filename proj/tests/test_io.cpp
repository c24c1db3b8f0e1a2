#include <doctest.h>

#include "kmroots/io.hpp"
#include "oracles.hpp"

using namespace kmroots;
using namespace kmroots::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidInput;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("GCM files") {
  const GCM g = io::parse_gcm(R"({"rank": 2, "matrix": [[2, -2], [-2, 2]]})");
  CHECK(g.matrix() == affine_a1().matrix());
  CHECK(io::parse_gcm(io::dump(io::to_json(g))).matrix() == g.matrix());

  CHECK(kind_of([] { io::parse_gcm(R"({"rank": 2, "matrix": [[2, 0], [-1, 2]]})"); }) ==
        ErrorKind::AsymmetricZero);
  CHECK(kind_of([] { io::parse_gcm(R"({"rank": 2, "matrix": [[2, 1], [1, 2]]})"); }) ==
        ErrorKind::PositiveOffDiagonal);
  CHECK(kind_of([] { io::parse_gcm(R"({"matrix": [[2]]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_gcm(R"({"rank": 3, "matrix": [[2]]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_gcm(R"({"rank": 2, "matrix": [[2, -1], [-1]]})"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_gcm(R"({"rank": 1, "matrix": [[2.5]]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::load_gcm("/nonexistent/gcm.json"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("syntax errors carry line and column") {
  const std::string text = "{\"rank\": 2,\n  \"matrix\": [[2, -1], [-1 2]]}";
  const std::string msg = message_of([&] { io::parse_gcm(text, "a.json"); });
  CHECK(msg.find("a.json:2:27:") != std::string::npos);
  const std::string msg1 = message_of([] { io::parse_gcm("{,", "b.json"); });
  CHECK(msg1.find("b.json:1:2:") != std::string::npos);
  const std::string bad = message_of([] { io::parse_gcm(R"({"rank": 1, "matrix": [["x"]]})", "c"); });
  CHECK(bad.find("/matrix/0/0") != std::string::npos);
}

TEST_CASE("root lists") {
  const auto v = io::parse_roots("[[1,0],[2,1]]", 2);
  REQUIRE(v.size() == 2);
  CHECK(v[1] == RootVec{2, 1});
  CHECK(kind_of([] { io::parse_roots("[[1,0,0]]", 2); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_roots("{}", 2); }) == ErrorKind::ParseError);
}

TEST_CASE("slice export") {
  const RootSlice s(affine_a1(), 5);
  const io::Json j = io::slice_to_json(s);
  CHECK(j["height_bound"] == 5);
  CHECK(j["roots"].size() == 16);
  std::size_t real = 0;
  for (const auto& r : j["roots"]) real += r["real"].get<bool>();
  CHECK(real == 12);
}

TEST_CASE("pretty printer") {
  io::Json j = {{"a", {1, 2}}, {"b", io::Json::array({io::Json::array({1}), io::Json::array()})},
                {"c", io::Json::object()}};
  const std::string out = io::dump(j);
  CHECK(out == "{\n  \"a\": [1, 2],\n  \"b\": [\n    [1],\n    []\n  ],\n  \"c\": {}\n}\n");
  CHECK(io::Json::parse(out) == j);
}

TEST_CASE("closure and Levi reports") {
  const RootSlice s(a2(), 6);
  const RootSet psi = RootSet::from_vectors(s, {RootVec{1, 0}, RootVec{0, 1}});
  const io::Json c = io::to_json(closure(psi, s));
  CHECK(c["status"] == "Closed");
  CHECK(c["roots"].size() == 3);
  CHECK(c["witness"].is_null());
  const io::Json l = io::to_json(verify_levi(RootSet(enumerate_real_roots(a2(), 4)), s));
  CHECK(l["type"] == "A2");
  CHECK(l["coroot_rank"] == 2);
  CHECK(l["passed"] == true);
}
