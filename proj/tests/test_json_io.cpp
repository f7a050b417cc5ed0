#include "doctest.h"
#include "helpers.hpp"
#include "thetakit/json_io.hpp"

using namespace thetakit;
using namespace testing_support;
using nlohmann::json;

TEST_CASE("simplex maps as JSON") {
  for (const auto& f : enum_hom_simplex(2, 3)) CHECK(simplex_map_from_json(to_json(f)) == f);
  CHECK(to_json(SimplexMap(1, 2, {0, 2})) == json::parse(R"({"src":1,"tgt":2,"values":[0,2]})"));
  CHECK_THROWS_AS(simplex_map_from_json(json::parse(R"({"src":1,"tgt":2,"values":[2,0]})")), ParseError);
  CHECK_THROWS_AS(simplex_map_from_json(json::parse(R"({"src":1})")), ParseError);
}

TEST_CASE("theta objects as nested arrays") {
  CHECK(to_json(globe(2, 2)) == json::parse(R"([["*"]])"));
  CHECK(to_json(globe(2, 1)) == json::parse(R"([[]])"));
  CHECK(to_json(d(2)) == json::parse(R"(["*","*"])"));
  CHECK(to_json(pt()) == "*");
  for (int level = 1; level <= 3; ++level)
    for (const auto& obj : enum_theta_objects(level, 7)) CHECK(theta_object_from_json(level, to_json(obj)) == obj);
  CHECK_THROWS_AS(theta_object_from_json(2, json::parse(R"(["*"])")), ParseError);
  CHECK_THROWS_AS(theta_object_from_json(1, json::parse(R"({"a":1})")), ParseError);
}

TEST_CASE("theta morphisms as phi and psi") {
  const auto& objs = enum_theta_objects(2, 5);
  std::size_t seen = 0, expected = 0;
  for (const auto& a : objs)
    for (const auto& b : objs) expected += count_theta_hom(a, b);
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& f : enum_theta_hom(a, b)) {
        CHECK(theta_morphism_from_json(a, b, to_json(f)) == f);
        ++seen;
      }
  CHECK(seen == expected);
  const auto id = ThetaMorphism::identity(globe(2, 1));
  CHECK(to_json(id) == json::parse(R"({"phi":{"src":1,"tgt":1,"values":[0,1]},"psi":[[{"phi":{"src":0,"tgt":0,"values":[0]},"psi":[]}]]})"));
  auto bad = to_json(id);
  bad["psi"] = json::array();
  CHECK_THROWS_AS(theta_morphism_from_json(globe(2, 1), globe(2, 1), bad), ParseError);
  CHECK_THROWS_AS(theta_morphism_from_json(globe(2, 1), globe(2, 2), to_json(id)), ParseError);
}
