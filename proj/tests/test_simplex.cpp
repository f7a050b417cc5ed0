#include "doctest.h"
#include "thetakit/error.hpp"
#include "thetakit/simplex.hpp"

using namespace thetakit;

namespace {

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

TEST_CASE("simplex composition") {
  SimplexMap f(1, 2, {0, 2});
  CHECK(compose(SimplexMap::identity(2), f) == f);
  CHECK(compose(SimplexMap(2, 1, {0, 1, 1}), f) == SimplexMap(1, 1, {0, 1}));
  CHECK_THROWS_AS(compose(f, f), DomainError);
  CHECK_THROWS_AS(SimplexMap(1, 1, {1, 0}), DomainError);
  CHECK_THROWS_AS(SimplexMap(1, 1, {0, 2}), DomainError);
}

TEST_CASE("simplex composites of monotone maps stay monotone") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        for (const auto& f : enum_hom_simplex(a, b))
          for (const auto& g : enum_hom_simplex(b, c)) CHECK_NOTHROW((void)compose(g, f));
}

TEST_CASE("simplex classification") {
  SimplexMap sub(1, 2, {1, 2});
  CHECK(sub.is_inert());
  CHECK_FALSE(sub.is_active());
  SimplexMap ends(1, 2, {0, 2});
  CHECK(ends.is_active());
  CHECK_FALSE(ends.is_inert());
  SimplexMap deg(2, 1, {0, 0, 1});
  CHECK(deg.is_active());
  CHECK_FALSE(deg.is_inert());
  auto id = SimplexMap::identity(3);
  CHECK(id.is_active());
  CHECK(id.is_inert());
}

TEST_CASE("simplex hom-set sizes") {
  CHECK(enum_hom_simplex(0, 0).size() == 1);
  auto h11 = enum_hom_simplex(1, 1);
  REQUIRE(h11.size() == 3);
  CHECK(h11[0] == SimplexMap(1, 1, {0, 0}));
  CHECK(h11[1] == SimplexMap(1, 1, {0, 1}));
  CHECK(h11[2] == SimplexMap(1, 1, {1, 1}));
  CHECK(enum_hom_simplex(2, 1).size() == 4);
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) CHECK(enum_hom_simplex(n, m).size() == binomial(n + m + 1, n + 1));
}

TEST_CASE("simplex factorization is the unique active-inert pair") {
  auto f = SimplexMap(1, 2, {1, 1});
  auto fac = factorize(f);
  CHECK(fac.active == SimplexMap(1, 0, {0, 0}));
  CHECK(fac.inert == SimplexMap(0, 2, {1}));

  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      for (const auto& g : enum_hom_simplex(a, b)) {
        int found = 0;
        for (int mid = 0; mid <= b; ++mid)
          for (const auto& act : enum_hom_simplex(a, mid))
            for (const auto& in : enum_hom_simplex(mid, b))
              if (act.is_active() && in.is_inert() && compose(in, act) == g) {
                ++found;
                auto got = factorize(g);
                CHECK(got.active == act);
                CHECK(got.inert == in);
              }
        CHECK(found == 1);
        if (g.is_inert()) CHECK(factorize(g).active.is_identity());
        if (g.is_active()) CHECK(factorize(g).inert.is_identity());
      }
}

TEST_CASE("inert and active classes are closed under composition") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (const auto& f : enum_hom_simplex(a, b))
          for (const auto& g : enum_hom_simplex(b, c)) {
            auto gf = compose(g, f);
            if (f.is_inert() && g.is_inert()) CHECK(gf.is_inert());
            if (f.is_active() && g.is_active()) CHECK(gf.is_active());
            if (f.is_inert() && f.is_active()) CHECK(f.is_identity());
          }
}
