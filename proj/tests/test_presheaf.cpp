#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace thetakit;
using namespace testing_support;

namespace {

GlobularSet small_2d_set() {
  // Two objects x, y; 1-cells f, g : x -> y and a loop u on x; 2-cells
  // a : f => g and b : u => u.
  GlobularData data;
  data.cells = {{"x", "y"}, {"f", "g", "u"}, {"a", "b"}};
  data.source = {{}, {0, 0, 0}, {0, 2}};
  data.target = {{}, {1, 1, 0}, {1, 2}};
  return make_globular_set(data);
}

// Copy of F with an extra element at `obj` that behaves like element 0.
ThetaPresheaf with_duplicate(const ThetaPresheaf& F, const ThetaObject& obj) {
  ThetaPresheaf out(F.index());
  for (const auto& a : F.support()) {
    auto names = F.names(a);
    if (a == obj) names.push_back("dup");
    out.set_value(a, names);
  }
  for (const auto& a : F.support())
    for (const auto& b : F.support())
      for (const auto& f : F.index().hom(a, b)) {
        auto map = F.action(f);
        if (b == obj) map.push_back(map[0]);
        out.set_action(f, map);
      }
  return out;
}

}  // namespace

TEST_CASE("finite limits of small diagrams") {
  SUBCASE("empty diagram has one family") { CHECK(finite_limit({}).size() == 1); }
  SUBCASE("point diagram is the set") { CHECK(finite_limit({{4}, {}}).size() == 4); }
  SUBCASE("pullback of two 2-element sets over a point") {
    Diagram d{{2, 2, 1}, {{0, 2, {0, 0}}, {1, 2, {0, 0}}}};
    CHECK(finite_limit(d).size() == 4);
  }
  SUBCASE("pullback over a 2-element set") {
    // A = {0,1,2} -> B = {0,1} by (0,1,1); C = {0,1} -> B identity.
    Diagram d{{3, 2, 2}, {{0, 1, {0, 1, 1}}, {2, 1, {0, 1}}}};
    auto cones = finite_limit(d);
    CHECK(cones.size() == 3);
    for (const auto& fam : cones.families) CHECK(fam[1] == fam[2]);
  }
  SUBCASE("equalizer") {
    Diagram d{{4, 3}, {{0, 1, {0, 1, 2, 0}}, {0, 1, {0, 2, 2, 1}}}};
    auto cones = finite_limit(d);
    REQUIRE(cones.size() == 2);
    CHECK(cones.families[0][0] == 0);
    CHECK(cones.families[1][0] == 2);
  }
  SUBCASE("budget prunes heavy families") {
    Diagram d{{3, 3}, {}};
    LimitBudget budget{{{0, 1, 2}, {0, 1, 2}}, 2};
    CHECK(finite_limit(d, &budget).size() == 6);
  }
}

TEST_CASE("fibre products distribute over coproducts on random finite data") {
  std::mt19937 rng(7);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t nb = 1 + pick(3), na = 1 + pick(3), nc = 1 + pick(3);
    std::vector<std::size_t> p(na), q(nc);
    for (auto& v : p) v = pick(nb);
    for (auto& v : q) v = pick(nb);
    std::vector<std::size_t> u_size(nb), x_size(na), y_size(nc);
    for (auto& s : u_size) s = 1 + pick(3);
    for (auto& s : x_size) s = pick(4);
    for (auto& s : y_size) s = pick(4);
    std::vector<std::vector<std::size_t>> xu(na), yu(nc);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t i = 0; i < x_size[a]; ++i) xu[a].push_back(pick(u_size[p[a]]));
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t i = 0; i < y_size[c]; ++i) yu[c].push_back(pick(u_size[q[c]]));

    // Left side by direct loops: (a, c, x, y) with p(a) = q(c) and x, y over the same u.
    std::set<std::vector<std::size_t>> lhs;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t c = 0; c < nc; ++c)
        if (p[a] == q[c])
          for (std::size_t x = 0; x < x_size[a]; ++x)
            for (std::size_t y = 0; y < y_size[c]; ++y)
              if (xu[a][x] == yu[c][y]) lhs.insert({a, x, c, y});

    // Right side: flatten the coproducts and take one pullback.
    std::vector<std::pair<std::size_t, std::size_t>> xs, ys, us;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t x = 0; x < x_size[a]; ++x) xs.emplace_back(a, x);
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t y = 0; y < y_size[c]; ++y) ys.emplace_back(c, y);
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t u = 0; u < u_size[b]; ++u) us.emplace_back(b, u);
    auto u_index = [&](std::size_t b, std::size_t u) {
      return static_cast<std::size_t>(std::find(us.begin(), us.end(), std::make_pair(b, u)) - us.begin());
    };
    DiagramArrow fx{0, 2, {}}, fy{1, 2, {}};
    for (auto [a, x] : xs) fx.map.push_back(u_index(p[a], xu[a][x]));
    for (auto [c, y] : ys) fy.map.push_back(u_index(q[c], yu[c][y]));
    auto rhs = finite_limit({{xs.size(), ys.size(), us.size()}, {fx, fy}});

    std::set<std::vector<std::size_t>> image;
    for (const auto& fam : rhs.families) {
      auto [a, x] = xs[fam[0]];
      auto [c, y] = ys[fam[1]];
      image.insert({a, x, c, y});
    }
    CHECK(image.size() == rhs.size());
    CHECK(image == lhs);
  }
}

TEST_CASE("globular set builder enforces the globular relations") {
  GlobularData bad;
  bad.cells = {{"x", "y"}, {"f", "g"}, {"a"}};
  bad.source = {{}, {0, 1}, {0}};
  bad.target = {{}, {1, 1}, {1}};
  CHECK_THROWS_AS(make_globular_set(bad), DomainError);
  auto X = small_2d_set();
  CHECK(validate(X).ok);
  // The composite source of a 2-cell is the source of its source.
  CHECK(X.apply({0, 2, Polarity::Source}, 0) == 0);
  CHECK(X.apply({0, 2, Polarity::Target}, 0) == 1);
  CHECK(X.apply({1, 2, Polarity::Target}, 0) == 1);
  auto data = globular_data(X);
  CHECK(data.cells == std::vector<std::vector<std::string>>{{"x", "y"}, {"f", "g", "u"}, {"a", "b"}});
  auto again = globular_data_from_json(to_json(data));
  CHECK(again.source == data.source);
  CHECK(again.target == data.target);
}

TEST_CASE("validate accepts functors and flags corruption") {
  SUBCASE("constant one-point presheaf") {
    ThetaPresheaf F(ThetaCategory(2, 5));
    for (const auto& obj : F.index().objects()) F.set_value(obj, {"*"});
    F.build_actions([](const ThetaMorphism&) { return std::vector<std::size_t>{0}; });
    CHECK(validate(F).ok);
  }
  SUBCASE("representables on bounded Theta_2") {
    ThetaCategory cat(2, 5);
    for (const auto& J : cat.objects()) CHECK(validate(representable(cat, J)).ok);
  }
  SUBCASE("an altered action is caught") {
    ThetaCategory cat(2, 5);
    const auto J = t2({d(1)});
    auto F = representable(cat, J);
    // Pick an endomorphism of C_2 that is neither identity nor with a one-element action.
    bool altered = false;
    for (const auto& f : cat.hom(J, J)) {
      if (f.is_identity()) continue;
      auto map = F.action(f);
      const auto old = map;
      std::reverse(map.begin(), map.end());
      if (map == old) continue;
      F.set_action(f, map);
      altered = true;
      break;
    }
    REQUIRE(altered);
    auto report = validate(F);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.violations.empty());
  }
}

TEST_CASE("restriction along functors") {
  ThetaCategory cat(2, 5);
  const auto J = t2({d(1)});
  auto F = representable(cat, J);
  SUBCASE("identity") {
    auto R = restrict_along(cat, F, [](const ThetaObject& o) { return o; }, [](const ThetaMorphism& f) { return f; });
    CHECK(to_json(R) == to_json(F));
  }
  SUBCASE("along gamma the values are the maps from globes") {
    auto G = gamma_restrict(F);
    CHECK(G.index().n == 2);
    for (int k = 0; k <= 2; ++k) CHECK(G.size(k) == enum_theta_hom(globe(2, k), J).size());
    CHECK(validate(G).ok);
  }
  SUBCASE("along iota the representable of [1] reappears one level down") {
    ThetaCategory low(1, 5);
    auto Fj = representable(cat, iota(d(1)));
    auto R = restrict_along(low, Fj, [](const ThetaObject& o) { return iota(o); },
                            [](const ThetaMorphism& f) { return iota(f); });
    CHECK(validate(R).ok);
    for (const auto& I : low.objects()) {
      std::set<std::string> expected;
      for (const auto& h : enum_theta_hom(I, d(1))) expected.insert(iota(h).to_string());
      std::set<std::string> got(R.names(I).begin(), R.names(I).end());
      CHECK(got == expected);
    }
  }
  SUBCASE("outside the support is an error") {
    ThetaCategory big(2, 7);
    CHECK_THROWS_AS(restrict_along(big, F, [](const ThetaObject& o) { return o; }, [](const ThetaMorphism& f) { return f; }),
                    SupportError);
  }
}

TEST_CASE("cell limits of representables recover hom sets") {
  ThetaCategory cat(2, 5);
  for (const auto& J : cat.objects()) {
    auto G = gamma_restrict(representable(cat, J));
    for (const auto& I : cat.objects()) CHECK(cell_limit(G, I).size() == enum_theta_hom(I, J).size());
  }
}

TEST_CASE("Segal extension of graphs gives composable chains") {
  const Graph g{3, {0, 1, 1, 2}, {1, 2, 0, 2}};
  auto X = graph_set(g);
  auto F = segal_extend(X, 7);
  CHECK(validate(F).ok);
  std::size_t pairs = 0;
  for (std::size_t e1 = 0; e1 < g.src.size(); ++e1)
    for (std::size_t e2 = 0; e2 < g.src.size(); ++e2)
      if (g.tgt[e1] == g.src[e2]) ++pairs;
  CHECK(F.size(d(2)) == pairs);
  for (int m = 0; m <= 3; ++m) CHECK(F.size(d(m)) == paths_of_length(g, static_cast<std::size_t>(m)).size());
}

TEST_CASE("Segal extension of the one-point globular set is a point everywhere") {
  auto F = segal_extend(one_cell_each(2), 7);
  for (const auto& obj : F.support()) CHECK(F.size(obj) == 1);
}

TEST_CASE("restricting a Segal extension along gamma recovers the globular set") {
  auto X = small_2d_set();
  auto F = segal_extend(X, 5);
  auto G = gamma_restrict(F);
  REQUIRE(G.index().n == 2);
  for (int k = 0; k <= 2; ++k) {
    const auto& cells = cells_of(globe(2, k));
    const auto top = cells.cells_of_dim(k).front();
    const auto cones = cell_limit(X, globe(2, k));
    REQUIRE(G.size(k) == X.size(k));
    std::set<std::size_t> tops;
    for (const auto& fam : cones.families) tops.insert(fam[top]);
    CHECK(tops.size() == X.size(k));
    for (int j = 0; j <= k; ++j)
      for (const auto& m : enum_glob_hom(j, k)) {
        const auto low_top = cells_of(globe(2, j)).cells_of_dim(j).front();
        const auto low = cell_limit(X, globe(2, j));
        for (std::size_t y = 0; y < G.size(k); ++y)
          CHECK(low.families[G.apply(m, y)][low_top] == X.apply(m, cones.families[y][top]));
      }
  }
}

TEST_CASE("Segal checks") {
  SUBCASE("Segal extensions pass") {
    auto F = segal_extend(small_2d_set(), 7);
    auto r = is_segal(F);
    CHECK(r.ok);
    CHECK(r.objects_checked == F.support().size());
    CHECK(r.active_checked > 0);
  }
  SUBCASE("representables on bounded Theta_2 pass, including the active decomposition") {
    ThetaCategory cat(2, 5);
    for (const auto& J : cat.objects()) {
      auto r = is_segal(representable(cat, J));
      CHECK(r.ok);
      CHECK(r.active_checked > 0);
    }
  }
  SUBCASE("a duplicated element is reported at its object") {
    auto F = segal_extend(small_2d_set(), 5);
    const auto bad = t2({d(0), d(0)});
    auto r = is_segal(with_duplicate(F, bad));
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.failures.empty());
    CHECK(r.failures.front().rfind(bad.to_string(), 0) == 0);
  }
}

TEST_CASE("reduced condition") {
  SUBCASE("single Theta_2 presheaves are vacuously reduced") {
    CHECK(is_reduced(segal_extend(small_2d_set(), 5)).ok);
  }
  using DD = ProductCategory<SimplexCategory, SimplexCategory>;
  DD cat{SimplexCategory{1}, SimplexCategory{1}, {}, "all"};
  auto build = [&](bool depend_on_second) {
    Presheaf<DD> F(cat);
    for (const auto& [m, k] : cat.objects()) {
      std::vector<std::string> names;
      for (const auto& h : enum_hom_simplex(depend_on_second ? k : m, 1)) names.push_back(h.to_string());
      F.set_value({m, k}, names);
    }
    F.build_actions([&](const DD::Morphism& f) {
      const auto& phi = depend_on_second ? f.second : f.first;
      const auto src = enum_hom_simplex(phi.src(), 1);
      std::vector<std::size_t> map;
      for (const auto& h : enum_hom_simplex(phi.tgt(), 1))
        map.push_back(static_cast<std::size_t>(std::find(src.begin(), src.end(), compose(h, phi)) - src.begin()));
      return map;
    });
    return F;
  };
  SUBCASE("constant in the second slot over [0]") {
    auto F = build(false);
    CHECK(validate(F).ok);
    CHECK(is_reduced(F).ok);
  }
  SUBCASE("a non-bijection over [0] is flagged") {
    auto F = build(true);
    CHECK(validate(F).ok);
    auto r = is_reduced(F);
    CHECK_FALSE(r.ok);
    CHECK(r.maps_checked > 0);
  }
}

TEST_CASE("inert left Kan extension of a graph counts paths") {
  const Graph g{3, {0, 1, 2}, {1, 2, 0}};
  auto F = segal_extend(graph_set(g), 7);
  auto G = left_kan_inert(F, 7);
  std::map<int, std::size_t> by_grade;
  for (std::size_t x = 0; x < G.presheaf.size(d(1)); ++x) ++by_grade[G.presheaf.grade(d(1), x)];
  REQUIRE(by_grade.size() == 4);
  for (int len = 0; len <= 3; ++len)
    CHECK(by_grade[2 * len + 1] == paths_of_length(g, static_cast<std::size_t>(len)).size());
  // At the point only the identity summand exists.
  CHECK(G.presheaf.size(d(0)) == g.vertices);
  CHECK(validate(G.presheaf).ok);
}

TEST_CASE("inert left Kan extension on Theta_2 is natural and Segal") {
  auto X = small_2d_set();
  auto G = left_kan_inert(segal_extend(X, 5), 5);
  CHECK(validate(G.presheaf).ok);
  SegalOptions opt;
  opt.grade_bound = 5;
  opt.shape = G.shape_fn();
  auto r = is_segal(G.presheaf, opt);
  CHECK(r.ok);
  for (const auto& f : r.failures) MESSAGE(f);
}

TEST_CASE("graded truncations are coherent") {
  auto X = small_2d_set();
  auto G5 = left_kan_inert(segal_extend(X, 5), 5);
  auto G7 = left_kan_inert(segal_extend(X, 7), 7);
  for (const auto& obj : G5.presheaf.support()) {
    std::vector<std::string> cut;
    std::vector<std::size_t> positions;
    for (std::size_t x = 0; x < G7.presheaf.size(obj); ++x)
      if (G7.presheaf.grade(obj, x) <= 5) {
        cut.push_back(G7.presheaf.name(obj, x));
        positions.push_back(x);
      }
    CHECK(cut == G5.presheaf.names(obj));
    for (const auto& src : G5.presheaf.support())
      for (const auto& f : enum_theta_hom(src, obj)) {
        const auto& small = G5.presheaf.action(f);
        const auto& large = G7.presheaf.action(f);
        for (std::size_t i = 0; i < positions.size(); ++i)
          CHECK(G7.presheaf.name(src, large[positions[i]]) == G5.presheaf.name(src, small[i]));
      }
  }
}

TEST_CASE("glued grade of the restrictions of an active map is its target size") {
  auto check_level = [](int level, int bound) {
    for (const auto& I : enum_theta_objects(level, bound))
      for (const auto& f : act_out(I, bound).flat()) {
        std::vector<ThetaMorphism> pieces;
        for (const auto& c : cells_of(I).cells()) pieces.push_back(act_pullback(c.map, f));
        CHECK(glued_grade(I, pieces) == f.tgt().cell_count());
      }
  };
  check_level(1, 9);
  check_level(2, 7);
  check_level(3, 5);
}

TEST_CASE("limits over G/J and over the fibre G/f agree") {
  auto X = small_2d_set();
  std::size_t checked = 0;
  for (const auto& I : enum_theta_objects(2, 5))
    for (const auto& f : act_out(I, 5).flat()) {
      const auto fiber = active_fiber(f);
      const auto& target = *fiber.target;
      const auto direct = cell_limit(X, f.tgt());
      Diagram pulled;
      for (auto e : fiber.image) pulled.sizes.push_back(X.size(target.cells()[e].dim));
      for (std::size_t u = 0; u < fiber.nodes.size(); ++u)
        for (std::size_t v = 0; v < fiber.nodes.size(); ++v)
          if (u != v && fiber.order.leq(u, v))
            pulled.arrows.push_back({v, u, X.action(*target.arrow(fiber.image[u], fiber.image[v]))});
      const auto over_fiber = finite_limit(pulled);
      std::set<std::vector<std::size_t>> image;
      for (const auto& fam : direct.families) {
        std::vector<std::size_t> pulled_fam;
        for (auto e : fiber.image) pulled_fam.push_back(fam[e]);
        CHECK(over_fiber.index_of(pulled_fam).has_value());
        image.insert(pulled_fam);
      }
      CHECK(image.size() == direct.size());
      CHECK(over_fiber.size() == direct.size());
      ++checked;
    }
  CHECK(checked > 10);
}

TEST_CASE("presheaf JSON round trip") {
  auto F = segal_extend(small_2d_set(), 5);
  auto j = to_json(F);
  auto back = presheaf_from_json(F.index(), j);
  CHECK(to_json(back) == j);
  auto G = left_kan_inert(F, 5);
  auto gj = to_json(G);
  auto gback = graded_from_json(gj);
  CHECK(to_json(gback) == gj);
  nlohmann::json broken = j;
  broken["maps"].begin().value().erase(broken["maps"].begin().value().begin());
  CHECK_THROWS_AS(presheaf_from_json(F.index(), broken), ParseError);
}
