#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "thetakit/monad.hpp"

using namespace thetakit;
using namespace testing_support;

namespace {

// Reads a level-1 labelled shape as a path: the label of vertex 0 and the
// labels of the 1-cells from left to right.
Path as_path(const ThetaObject& shape, const std::vector<std::size_t>& fam) {
  const auto& cells = cells_of(shape).cells();
  Path p{0, std::vector<std::size_t>(static_cast<std::size_t>(shape.length()))};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const int pos = cells[c].map.outer_values()[0];
    if (cells[c].dim == 0 && pos == 0) p.start = fam[c];
    if (cells[c].dim == 1) p.edges[static_cast<std::size_t>(pos)] = fam[c];
  }
  return p;
}

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

std::vector<FreeElement> sorted(std::vector<FreeElement> v) {
  std::sort(v.begin(), v.end(), [](const FreeElement& a, const FreeElement& b) {
    return a.shape != b.shape ? a.shape < b.shape : a.family < b.family;
  });
  return v;
}

GlobularSet small_2d_set() {
  GlobularData data;
  data.cells = {{"x", "y"}, {"f", "g", "u"}, {"a", "b"}};
  data.source = {{}, {0, 0, 0}, {0, 2}};
  data.target = {{}, {1, 1, 0}, {1, 2}};
  return make_globular_set(data);
}

}  // namespace

TEST_CASE("free values: small cases") {
  const Graph ab{2, {0}, {1}};
  auto X = graph_set(ab);
  CHECK(free_value(X, 0, 7).size() == X.size(0));
  CHECK(free_value(X, 1, 7).size() == 3);
  auto one = one_cell_each(2);
  auto v = free_value(one, 2, 5);
  CHECK(v.size() == 4);
  CHECK(v.size() == enum_theta_objects(2, 5).size());
  const auto j = to_json(v, one);
  REQUIRE(j.size() == 4);
  CHECK(j[0]["shape"] == nlohmann::json::array());
  CHECK(j[3]["grade"] == 5);
}

TEST_CASE("free values: the direct and the Kan route agree") {
  const Graph g{3, {0, 1, 2, 0}, {1, 2, 0, 0}};
  auto X = graph_set(g);
  for (int k = 0; k <= 1; ++k) CHECK(sorted(free_value(X, k, 9).elements) == sorted(free_value_via_kan(X, k, 9).elements));
  auto Y = small_2d_set();
  for (int k = 0; k <= 2; ++k) CHECK(sorted(free_value(Y, k, 7).elements) == sorted(free_value_via_kan(Y, k, 7).elements));
}

TEST_CASE("free values on graphs are paths") {
  const Graph g{3, {0, 1, 1, 2}, {1, 2, 1, 0}};
  FreeModel T(graph_set(g), 9);
  std::set<Path> expected, got;
  for (std::size_t len = 0; len <= 4; ++len)
    for (const auto& p : paths_of_length(g, len)) expected.insert(p);
  for (std::size_t i = 0; i < T.elements(1).size(); ++i) {
    const auto& e = T.element(1, i);
    const auto p = as_path(e.shape, T.labels(1, i));
    CHECK(e.grade() == 2 * static_cast<int>(p.edges.size()) + 1);
    got.insert(p);
  }
  CHECK(got.size() == T.elements(1).size());
  CHECK(got == expected);
}

TEST_CASE("unit") {
  const Graph g{2, {0, 1}, {1, 0}};
  FreeModel T(graph_set(g), 5);
  std::set<std::size_t> images;
  for (std::size_t e = 0; e < 2; ++e) {
    const auto u = T.unit(1, e);
    CHECK(T.element(1, u).shape == d(1));
    CHECK(as_path(d(1), T.labels(1, u)) == Path{g.src[e], {e}});
    CHECK(T.counit_on_globes(1, u) == e);
    images.insert(u);
  }
  CHECK(images.size() == 2);
  FreeModel P(one_cell_each(2), 5);
  for (int k = 0; k <= 2; ++k) CHECK(P.element(k, P.unit(k, 0)).shape == globe(2, k));
  CHECK_THROWS_AS(FreeModel(one_cell_each(2), 3).unit(2, 0), BoundError);
}

TEST_CASE("structure maps of the free globular set are natural") {
  FreeModel T(small_2d_set(), 7);
  CHECK(validate(T.value()).ok);
  FreeModel TT(T.value(), 5);
  CHECK(validate(TT.value()).ok);
}

TEST_CASE("substitution examples") {
  SUBCASE("identities") {
    for (const auto& J : enum_theta_objects(2, 7)) {
      const auto id = ThetaMorphism::identity(J);
      CHECK(subst(J, act_restrictions(id)) == id);
    }
  }
  SUBCASE("two paths glue to their concatenation") {
    const auto J = d(2);
    const auto& cells = cells_of(J).cells();
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        std::vector<ThetaMorphism> pieces;
        for (const auto& c : cells) {
          if (c.dim == 0) {
            pieces.push_back(ThetaMorphism::identity(d(0)));
          } else {
            const int len = c.map.outer_values()[0] == 0 ? p : q;
            pieces.push_back(*active_from_globe(1, d(len)));
          }
        }
        const auto f = subst(J, pieces);
        CHECK(f.tgt() == d(p + q));
        CHECK(f.outer_values() == std::vector<int>{0, p, p + q});
      }
  }
  SUBCASE("a 2-globe gives back the active map itself") {
    for (const auto& K : enum_theta_objects(2, 9)) {
      const auto a = active_from_globe(2, K);
      if (!a) continue;
      std::vector<ThetaMorphism> pieces;
      for (const auto& c : cells_of(globe(2, 2)).cells()) pieces.push_back(act_pullback(c.map, *a));
      CHECK(subst(globe(2, 2), pieces) == *a);
    }
  }
  SUBCASE("incompatible families are rejected") {
    const auto J = d(2);
    std::vector<ThetaMorphism> pieces;
    for (const auto& c : cells_of(J).cells())
      pieces.push_back(c.dim == 0 ? ThetaMorphism::identity(d(0)) : *active_from_globe(1, d(1)));
    pieces[0] = *active_from_globe(0, d(0));
    CHECK_NOTHROW(subst(J, pieces));
    pieces.back() = ThetaMorphism::identity(d(1));
    CHECK(is_compatible_family(J, pieces));
    std::vector<ThetaMorphism> wrong = pieces;
    wrong.pop_back();
    CHECK_THROWS_AS(subst(J, wrong), DomainError);
  }
}

TEST_CASE("substitution is a bijection between compatible families and active maps") {
  auto check = [](int level, int bound) {
    FreeModel act(one_cell_each(level), bound);
    for (const auto& J : enum_theta_objects(level, bound)) {
      const auto& cells = cells_of(J).cells();
      const auto cones = cell_limit(act.value(), J);
      std::set<ThetaMorphism> seen;
      for (const auto& fam : cones.families) {
        std::vector<ThetaMorphism> pieces;
        for (std::size_t c = 0; c < cells.size(); ++c)
          pieces.push_back(*active_from_globe(cells[c].dim, act.element(cells[c].dim, fam[c]).shape));
        if (glued_grade(J, pieces) > bound) continue;
        const auto f = subst(J, pieces);
        CHECK(act_restrictions(f) == pieces);
        seen.insert(f);
      }
      const auto all = act_out(J, bound).flat();
      CHECK(seen == std::set<ThetaMorphism>(all.begin(), all.end()));
    }
  };
  check(1, 9);
  check(2, 5);
}

TEST_CASE("multiplication on graphs concatenates paths") {
  const Graph g{3, {0, 1, 2, 1}, {1, 2, 0, 2}};
  FreeModel T(graph_set(g), 7);
  FreeModel TT(T.value(), 7);
  std::size_t checked = 0, refused = 0;
  for (std::size_t w = 0; w < TT.elements(1).size(); ++w) {
    const auto& e = TT.element(1, w);
    const auto& L = TT.labels(1, w);
    // Outer path of inner paths.
    const auto outer = as_path(e.shape, L);
    Path flat{outer.start, {}};
    for (auto edge : outer.edges) flat = concat(flat, as_path(T.element(1, edge).shape, T.labels(1, edge)));
    if (2 * flat.edges.size() + 1 > 7) {
      CHECK_THROWS_AS(mult(T, TT, 1, w), BoundError);
      ++refused;
      continue;
    }
    const auto m = mult(T, TT, 1, w);
    CHECK(as_path(T.element(1, m).shape, T.labels(1, m)) == flat);
    ++checked;
  }
  CHECK(checked > 50);
  CHECK(refused > 0);
}

TEST_CASE("monad laws in dimension one: exhaustive at bound 7") {
  for (const Graph& g : {Graph{1, {0}, {0}}, Graph{2, {0, 1}, {1, 0}}, Graph{3, {0, 1}, {1, 2}}}) {
    const auto c = check_monad_laws(graph_set(g), 7, 0, 1);
    CHECK_MESSAGE(c.ok, c.to_json().dump());
    CHECK(c.left > 0);
    CHECK(c.assoc > 0);
    MESSAGE("left/right " << c.left << ", assoc " << c.assoc << ", skipped " << c.skipped);
  }
}

TEST_CASE("monad laws in dimension two: sampled at bound 5") {
  for (const auto& X : {small_2d_set(), one_cell_each(2)}) {
    const auto c = check_monad_laws(X, 5, 40, 11);
    CHECK_MESSAGE(c.ok, c.to_json().dump());
    CHECK(c.left > 0);
    CHECK(c.assoc > 0);
  }
}

TEST_CASE("iterated free values") {
  SUBCASE("length zero is the set of 0-cells") {
    auto t = beta_transport(small_2d_set());
    CHECK(t.reduced);
    auto v = iterated_free_value(t, 0, enum_theta_objects(0, 1), 0, 9);
    CHECK(v.elements.size() == 2);
  }
  SUBCASE("the 13-element window") {
    auto t = beta_transport(one_cell_each(2));
    auto v = iterated_free_value(t, 1, enum_theta_objects_window(1, {2}), 2, 100);
    CHECK(v.elements.size() == 13);
    CHECK(free_value(one_cell_each(2), 2, enum_theta_objects_window(2, {2, 2})).size() == 13);
  }
  SUBCASE("a globular set without 2-cells gives paths") {
    const Graph g{3, {0, 1, 1, 2}, {1, 2, 1, 0}};
    auto data = graph_data(g);
    data.cells.push_back({});
    data.source.push_back({});
    data.target.push_back({});
    auto t = beta_transport(make_globular_set(data));
    auto v = iterated_free_value(t, 0, enum_theta_objects(0, 1), 4, 9);
    std::size_t expected = 0;
    for (std::size_t len = 0; len <= 4; ++len) expected += paths_of_length(g, len).size();
    CHECK(v.elements.size() == expected);
  }
}
