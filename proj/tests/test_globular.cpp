#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "thetakit/error.hpp"
#include "thetakit/globular.hpp"

using namespace thetakit;

namespace {

ThetaObject pt() { return ThetaObject::point(); }
ThetaObject d(int m) { return ThetaObject::make(1, std::vector<ThetaObject>(static_cast<std::size_t>(m), pt())); }
ThetaObject t2(std::vector<ThetaObject> ch) { return ThetaObject::make(2, std::move(ch)); }

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<ThetaMorphism> inert_by_filter(const ThetaObject& src, const ThetaObject& tgt) {
  std::vector<ThetaMorphism> out;
  for (const auto& f : enum_theta_hom(src, tgt))
    if (f.is_inert()) out.push_back(f);
  return out;
}

FinitePoset chain_poset(std::size_t n) {
  FinitePoset p(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) p.set_leq(a, b);
  return p;
}

// Face poset of a simplicial complex given by its maximal faces.
FinitePoset face_poset(const std::vector<std::vector<int>>& facets) {
  std::set<std::vector<int>> faces;
  for (const auto& f : facets)
    for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
      std::vector<int> s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      faces.insert(s);
    }
  std::vector<std::vector<int>> list(faces.begin(), faces.end());
  FinitePoset p(list.size());
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b)
      if (std::includes(list[b].begin(), list[b].end(), list[a].begin(), list[a].end())) p.set_leq(a, b);
  return p;
}

}  // namespace

TEST_CASE("globular normal forms agree with congruence closure of generator words") {
  for (int j = 0; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k) {
      // A word picks a polarity for each generator x_{j+1}, ..., x_k; bit p is position p.
      const int len = k - j;
      const std::size_t words = std::size_t{1} << len;
      UnionFind uf(words);
      // x_i s_{i-1} = ... and x_i t_{i-1} = ...: the letter after any letter may flip.
      for (std::size_t w = 0; w < words; ++w)
        for (int p = 1; p < len; ++p) uf.unite(w, w ^ (std::size_t{1} << p));
      std::set<std::size_t> classes;
      for (std::size_t w = 0; w < words; ++w) classes.insert(uf.find(w));
      CHECK(classes.size() == 2);

      for (std::size_t w = 0; w < words; ++w) {
        GlobMorphism g = GlobMorphism::identity(j);
        for (int p = 0; p < len; ++p)
          g = compose(GlobMorphism::generator(j + p + 1, (w >> p) & 1 ? Polarity::Target : Polarity::Source), g);
        for (std::size_t w2 = 0; w2 < words; ++w2) {
          GlobMorphism g2 = GlobMorphism::identity(j);
          for (int p = 0; p < len; ++p)
            g2 = compose(GlobMorphism::generator(j + p + 1, (w2 >> p) & 1 ? Polarity::Target : Polarity::Source), g2);
          CHECK((uf.find(w) == uf.find(w2)) == (g == g2));
        }
      }
    }
  CHECK(enum_glob_hom(2, 1).empty());
  CHECK(enum_glob_hom(2, 2).size() == 1);
  CHECK_THROWS_AS(compose(GlobMorphism::identity(1), GlobMorphism::identity(2)), DomainError);
}

TEST_CASE("gamma on objects and generators") {
  CHECK(gamma_embed(2, 0) == t2({}));
  CHECK(gamma_embed(1, 1) == d(1));
  CHECK(gamma_embed(3, 2) == ThetaObject::make(3, {t2({ThetaObject::empty(1)})}));

  // s_1 goes to d_1 : [0]() -> [1]([0]()), the map omitting vertex 1.
  auto s1 = gamma_embed(1, GlobMorphism::generator(1, Polarity::Source));
  CHECK(s1.outer_values() == std::vector<int>{0});
  auto t1 = gamma_embed(1, GlobMorphism::generator(1, Polarity::Target));
  CHECK(t1.outer_values() == std::vector<int>{1});
  auto s2 = gamma_embed(2, GlobMorphism::generator(2, Polarity::Source));
  CHECK(s2 == sigma(gamma_embed(1, GlobMorphism::generator(1, Polarity::Source))));
}

TEST_CASE("gamma is a fully faithful functor into the inert maps") {
  const int n = 3;
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k) {
      auto inert = inert_by_filter(globe(n, j), globe(n, k));
      CHECK(inert.size() == enum_glob_hom(j, k).size());
      if (j < k) CHECK(inert.size() == 2);
      std::set<ThetaMorphism> image;
      for (const auto& g : enum_glob_hom(j, k)) {
        auto m = gamma_embed(n, g);
        CHECK(m.is_inert());
        image.insert(m);
        CHECK(gamma_preimage(m) == g);
      }
      CHECK(image == std::set<ThetaMorphism>(inert.begin(), inert.end()));
      for (int l = k; l <= n; ++l)
        for (const auto& f : enum_glob_hom(j, k))
          for (const auto& g : enum_glob_hom(k, l))
            CHECK(gamma_embed(n, compose(g, f)) == compose(gamma_embed(n, g), gamma_embed(n, f)));
    }
}

TEST_CASE("cells by direct recursion match filtered hom-sets") {
  for (int level = 1; level <= 3; ++level)
    for (const auto& obj : enum_theta_objects(level, 7))
      for (int k = 0; k <= level; ++k) {
        auto direct = inert_cells(obj, k);
        auto filtered = inert_by_filter(globe(level, k), obj);
        CHECK(std::set<ThetaMorphism>(direct.begin(), direct.end()) ==
              std::set<ThetaMorphism>(filtered.begin(), filtered.end()));
        CHECK(direct.size() == filtered.size());
      }
}

TEST_CASE("cell categories") {
  const auto& point = cells_of(t2({}));
  CHECK(point.size() == 1);

  const auto& c2 = cells_of(globe(2, 2));
  CHECK(c2.size() == 5);
  CHECK(c2.cells_of_dim(0).size() == 2);
  CHECK(c2.cells_of_dim(1).size() == 2);
  CHECK(c2.cells_of_dim(2).size() == 1);

  const auto& i7 = cells_of(t2({d(1), d(0)}));
  CHECK(i7.size() == 7);
  CHECK(i7.cells_of_dim(0).size() == 3);
  CHECK(i7.cells_of_dim(1).size() == 3);
  CHECK(i7.cells_of_dim(2).size() == 1);

  for (int k = 0; k <= 3; ++k) CHECK(cells_of(globe(3, k)).size() == static_cast<std::size_t>(2 * k + 1));

  for (int level = 0; level <= 3; ++level)
    for (const auto& obj : enum_theta_objects(level, level == 3 ? 7 : 9)) {
      const auto& cc = cells_of(obj);
      CHECK(cc.size() == static_cast<std::size_t>(obj.cell_count()));
      CHECK(cc.order().is_partial_order());
      for (std::size_t a = 0; a < cc.size(); ++a)
        for (std::size_t b = 0; b < cc.size(); ++b) {
          auto g = cc.arrow(a, b);
          CHECK(g.has_value() == cc.order().leq(a, b));
          if (g) CHECK(compose(cc.cells()[b].map, gamma_embed(level, *g)) == cc.cells()[a].map);
        }
    }
}

TEST_CASE("order complex homology") {
  CHECK(smith_invariants({{2, 0}, {0, 3}}) == std::vector<long long>{1, 6});
  CHECK(smith_invariants({{2, 4}, {4, 8}}) == std::vector<long long>{2});
  CHECK(smith_invariants({{0, 0}}).empty());

  CHECK(nerve_contractibility(FinitePoset(1)).contractible);
  CHECK_FALSE(nerve_contractibility(FinitePoset(0)).contractible);
  auto two = order_complex_homology(FinitePoset(2));
  CHECK(two[0].rank == 2);
  CHECK(nerve_contractibility(chain_poset(4)).contractible);

  // Crown: a, b below c, d. Its order complex is a circle.
  FinitePoset crown(4);
  for (std::size_t lo : {0, 1})
    for (std::size_t hi : {2, 3}) crown.set_leq(lo, hi);
  auto h = order_complex_homology(crown);
  CHECK(h[0] == HomologyGroup{1, {}});
  CHECK(h[1] == HomologyGroup{1, {}});

  // Six-vertex real projective plane.
  auto rp2 = face_poset({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                         {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}});
  auto hr = order_complex_homology(rp2);
  CHECK(hr[0] == HomologyGroup{1, {}});
  CHECK(hr[1] == HomologyGroup{0, {2}});
  CHECK(hr[2].trivial());
  CHECK(hr[1].to_string() == "Z/2");

  // Two-sphere as the boundary of a tetrahedron.
  auto s2 = face_poset({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  auto hs = order_complex_homology(s2);
  CHECK(hs[2] == HomologyGroup{1, {}});
  CHECK(hs[1].trivial());
}

TEST_CASE("cell categories are contractible") {
  CHECK(nerve_contractibility(cells_of(t2({})).order()).contractible);
  CHECK(nerve_contractibility(cells_of(globe(2, 2)).order()).contractible);
  for (const auto& obj : enum_theta_objects(2, 7)) CHECK(nerve_contractibility(cells_of(obj).order()).contractible);
  for (const auto& obj : enum_theta_objects(3, 7)) CHECK(nerve_contractibility(cells_of(obj).order()).contractible);
}

TEST_CASE("active fiber of an identity") {
  for (const auto& obj : enum_theta_objects(2, 7)) {
    auto fib = active_fiber(ThetaMorphism::identity(obj));
    const auto& cc = cells_of(obj);
    for (std::size_t a = 0; a < cc.size(); ++a) CHECK(fib.parts[a].active.tgt() == globe(2, cc.cells()[a].dim));
    std::size_t total = 0;
    for (std::size_t a = 0; a < cc.size(); ++a) total += static_cast<std::size_t>(2 * cc.cells()[a].dim + 1);
    CHECK(fib.nodes.size() == total);
    auto cert = check_cofinal_via_initial(fib);
    CHECK(cert.ok);
    // The initial object over a cell e is e itself, seen as the top cell of its own fiber.
    for (std::size_t e = 0; e < cc.size(); ++e) {
      REQUIRE(cert.initial[e].has_value());
      const auto& node = fib.nodes[*cert.initial[e]];
      CHECK(node.alpha == e);
      CHECK(fib.image[*cert.initial[e]] == e);
    }
  }
  CHECK_THROWS_AS(active_fiber(gamma_embed(2, GlobMorphism{0, 2, Polarity::Source})), DomainError);
}

TEST_CASE("active fiber of the 2-globe into [2]([1],[1])") {
  auto target = t2({d(1), d(1)});
  auto f = *active_from_globe(2, target);
  auto fib = active_fiber(f);
  const auto& cc = cells_of(globe(2, 2));
  std::size_t total = 0;
  for (std::size_t a = 0; a < cc.size(); ++a) {
    const auto& j = fib.parts[a].active.tgt();
    total += static_cast<std::size_t>(j.cell_count());
    if (cc.cells()[a].dim == 2) CHECK(j == target);
    if (cc.cells()[a].dim == 0) CHECK(j == t2({}));
    if (cc.cells()[a].dim == 1) CHECK(j == t2({d(0), d(0)}));
  }
  CHECK(fib.nodes.size() == total);

  // Over the middle vertex of J the comma category has two minimal objects,
  // one over each boundary 1-cell of the globe, so it has no initial object.
  // It is still contractible.
  const auto& tc = *fib.target;
  auto middle = tc.index_of(ThetaMorphism(t2({}), target, {1}, {}));
  REQUIRE(middle.has_value());
  auto cert = check_cofinal_via_initial(fib);
  CHECK_FALSE(cert.ok);
  CHECK(std::find(cert.failures.begin(), cert.failures.end(), *middle) != cert.failures.end());
  auto comma = comma_under(fib, *middle);
  std::size_t minimal = 0;
  for (auto x : comma)
    if (std::none_of(comma.begin(), comma.end(), [&](std::size_t y) { return fib.order.less(y, x); })) ++minimal;
  CHECK(minimal == 2);
  CHECK(check_cofinal_via_contractibility(fib).ok);
}

TEST_CASE("active fibers: structure and transitions against a search oracle") {
  for (const auto& src : enum_theta_objects(2, 5))
    for (const auto& f : act_out(src, 7).flat()) {
      auto fib = active_fiber(f);
      CHECK(fib.order.is_partial_order());
      const auto& cc = *fib.source;

      // Fibers over each source cell are the cell categories of J_alpha.
      for (std::size_t a = 0; a < cc.size(); ++a) {
        std::vector<std::size_t> over;
        for (std::size_t x = 0; x < fib.nodes.size(); ++x)
          if (fib.nodes[x].alpha == a) over.push_back(x);
        const auto& ja = cells_of(fib.parts[a].active.tgt());
        REQUIRE(over.size() == ja.size());
        auto sub = fib.order.subposet(over);
        for (std::size_t x = 0; x < over.size(); ++x)
          for (std::size_t y = 0; y < over.size(); ++y) CHECK(sub.leq(x, y) == ja.order().leq(x, y));
      }

      // The transition is the unique inert map compatible with both factorizations.
      for (std::size_t a = 0; a < cc.size(); ++a)
        for (std::size_t a2 = 0; a2 < cc.size(); ++a2) {
          if (!cc.order().leq(a, a2)) continue;
          const auto& pa = fib.parts[a];
          const auto& pa2 = fib.parts[a2];
          auto xi = gamma_embed(2, *cc.arrow(a, a2));
          int found = 0;
          for (const auto& t : inert_by_filter(pa.active.tgt(), pa2.active.tgt()))
            if (compose(t, pa.active) == compose(pa2.active, xi) && compose(pa2.inert, t) == pa.inert) {
              ++found;
              CHECK(t == fib.transition(a, a2));
            }
          CHECK(found == 1);
        }

      // Projection and comparison functors are monotone.
      for (std::size_t x = 0; x < fib.nodes.size(); ++x)
        for (std::size_t y = 0; y < fib.nodes.size(); ++y)
          if (fib.order.leq(x, y)) {
            CHECK(cc.order().leq(fib.nodes[x].alpha, fib.nodes[y].alpha));
            CHECK(fib.target->order().leq(fib.image[x], fib.image[y]));
          }
    }
}

TEST_CASE("cofinality certificates") {
  // Some comma categories have no initial object (C_1 -> [0]() already gives
  // one: both endpoints sit over the single vertex). All are contractible.
  std::size_t commas = 0, without_initial = 0;
  for (const auto& src : enum_theta_objects(2, 5))
    for (const auto& tgt : enum_theta_objects(2, 5))
      for (const auto& f : enum_theta_hom(src, tgt))
        if (f.is_active()) {
          auto fib = active_fiber(f);
          auto cert = check_cofinal_via_initial(fib);
          commas += cert.initial.size();
          without_initial += cert.failures.size();
          CHECK(check_cofinal_via_contractibility(fib).ok);
          for (std::size_t e = 0; e < cert.initial.size(); ++e)
            if (cert.initial[e]) CHECK(fib.target->order().leq(e, fib.image[*cert.initial[e]]));
        }
  CHECK(commas == 46);
  CHECK(without_initial == 11);

  auto degenerate = *active_from_globe(1, t2({}));
  CHECK_FALSE(check_cofinal_via_initial(active_fiber(degenerate)).ok);

  for (int k = 0; k <= 3; ++k)
    for (const auto& f : act_out(globe(3, k), 5).flat()) CHECK(check_cofinal_via_contractibility(active_fiber(f)).ok);
}

TEST_CASE("lambda posets") {
  auto l0 = lambda_poset(2, 0);
  CHECK(l0.elements.size() == 1);
  CHECK(lambda_comma_failures(l0).empty());

  auto l2 = lambda_poset(2, 2);
  CHECK(l2.elements.size() == 5);
  CHECK(l2.order.is_partial_order());
  CHECK(nerve_contractibility(l2.order).contractible);
  CHECK(l2.base == t2({d(1), d(1)}));
  CHECK(lambda_comma_failures(l2).empty());
  // Intervals lie below their endpoints; the cell map reverses this.
  CHECK(l2.order.leq(1, 0));
  CHECK(l2.order.leq(1, 2));
  const auto& cells = cells_of(l2.base);
  CHECK(cells.order().leq(l2.to_cells[0], l2.to_cells[1]));

  for (int level = 1; level <= 3; ++level)
    for (int j = 0; j <= 3; ++j) {
      auto l = lambda_poset(level, j);
      CHECK(l.elements.size() == static_cast<std::size_t>(2 * j + 1));
      CHECK(nerve_contractibility(l.order).contractible);
      CHECK(lambda_comma_failures(l).empty());
    }
}

TEST_CASE("alpha and beta") {
  CHECK(alpha_object(0) == GlobPairObject{0, 0});
  CHECK(alpha_object(3) == GlobPairObject{1, 2});
  CHECK(beta_object({0, 2}) == 0);
  CHECK(beta_object({1, 2}) == 3);

  const int n = 3;  // G_4 = G_{n+1}
  for (int i = 0; i <= n + 1; ++i) CHECK(beta_object(alpha_object(i)) == i);
  for (int j = 0; j <= n + 1; ++j)
    for (int k = j; k <= n + 1; ++k)
      for (const auto& g : enum_glob_hom(j, k)) {
        auto a = alpha_morphism(g);
        CHECK(a.first.src == alpha_object(j).first);
        CHECK(a.second.tgt == alpha_object(k).second);
        CHECK(beta_morphism(a) == g);
      }

  // beta is the restriction of tau to globes.
  for (int a = 0; a <= 1; ++a)
    for (int b = a; b <= 1; ++b)
      for (int c = 0; c <= n; ++c)
        for (int e = c; e <= n; ++e)
          for (const auto& g1 : enum_glob_hom(a, b))
            for (const auto& g2 : enum_glob_hom(c, e)) {
              auto viat = tau(gamma_embed(1, g1).outer(), gamma_embed(n, g2));
              CHECK(viat == gamma_embed(n + 1, beta_morphism({g1, g2})));
            }

  // The generator clauses do not respect s_2 s_1 = t_2 s_1.
  auto s1 = GlobMorphism::generator(1, Polarity::Source);
  auto lhs = alpha_word({s1, GlobMorphism::generator(2, Polarity::Source)});
  auto rhs = alpha_word({s1, GlobMorphism::generator(2, Polarity::Target)});
  CHECK(lhs != rhs);
  CHECK(beta_morphism(lhs) == beta_morphism(rhs));

  auto g = gamma_1n(2, 3);
  CHECK(g.first == 1);
  CHECK(g.second == globe(2, 2));
}
