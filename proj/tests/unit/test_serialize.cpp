#include <sstream>

#include "doctest.h"
#include "satotate/serialize.hpp"

using namespace satotate;

TEST_CASE("moment table JSON layout") {
  const auto t = moment_table(CurveFamily(10), BaseField::Qi, 1, 4);
  const Json j = to_json(t);
  CHECK(j["m"] == 10);
  CHECK(j["base_field"] == "Qi");
  CHECK(j["i"] == 1);
  REQUIRE(j["moments"].size() == 5);
  CHECK(j["moments"][2]["n"] == 2);
  CHECK(j["moments"][2]["exact"] == "4");
  CHECK(j["moments"][2]["components"]["0,0"] == "16");
  CHECK(j["moments"][2]["components"].size() == 4);
  // keys keep insertion order so output is diffable
  auto it = j.begin();
  CHECK(it.key() == "m");
}

TEST_CASE("moment table CSV") {
  const auto t = moment_table(CurveFamily(5), BaseField::Q, 1, 2);
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "n,averaged,k0j0,k1j0,k2j0,k3j0\n0,1,1,1,1,1\n1,0,0,0,0,0\n2,1,4,0,0,0\n");
}

TEST_CASE("char poly JSON") {
  const Json j = to_json(char_poly_component(CurveFamily(5), 2, 0));
  CHECK(j["degree"] == 4);
  CHECK(j["polynomial"] == "T^4 + 2*T^2 + 1");
  REQUIRE(j["coefficients"].is_array());
  CHECK(j["coefficients"][0]["power"] == 4);
}

TEST_CASE("moment estimate JSON") {
  MomentEstimate e;
  e.n = 2;
  e.samples = 3;
  e.value = 0.5;
  e.exact = Rational(1, 2);
  const Json j = to_json(e);
  CHECK(j["N"] == 3);
  CHECK(j["exact"] == "1/2");
  e.exact.reset();
  CHECK_FALSE(to_json(e).contains("exact"));
}

TEST_CASE("verification report JSON") {
  const auto checks = verify_family(CurveFamily(7), 3);
  const Json j = to_json(checks);
  REQUIRE(j.size() == checks.size());
  CHECK(j[0].contains("name"));
  CHECK(j[0].contains("passed"));
}
