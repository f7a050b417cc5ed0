#include "thetakit/comparison.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "thetakit/error.hpp"

namespace thetakit {

namespace {

SimplexMap vertex_map(int r, int e) { return SimplexMap(0, r, {e}); }
SimplexMap edge_map(int r, int a, int b) { return SimplexMap(1, r, {a, b}); }
SimplexMap collapse_edge() { return SimplexMap(1, 0, {0, 0}); }

ThetaMorphism terminal_map(const ThetaObject& I) {
  const auto& h = enum_theta_hom(I, ThetaObject::empty(I.level()));
  if (h.size() != 1) throw InvariantError("[0]() is not terminal at " + I.to_string());
  return h.front();
}

// The column inclusion [1](I_i) -> I for i in 1..m.
ThetaMorphism column(const ThetaObject& I, int i) {
  const auto& child = I.children()[static_cast<std::size_t>(i - 1)];
  return ThetaMorphism(ThetaObject::make(I.level(), {child}), I, {i - 1, i}, {{ThetaMorphism::identity(child)}});
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& map, std::size_t size, const std::string& what) {
  if (!detail::is_bijection(map, size)) throw InvariantError(what + " is not a bijection");
  std::vector<std::size_t> inv(size);
  for (std::size_t i = 0; i < map.size(); ++i) inv[map[i]] = i;
  return inv;
}

void fail(std::vector<std::string>& failures, std::string msg) {
  if (failures.size() < 30) failures.push_back(std::move(msg));
}

// Fibre product over m columns glued at consecutive endpoints; returns the
// families (one element per column) in lexicographic order.
std::vector<std::vector<std::size_t>> chains(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& ends) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void()> go = [&]() {
    const auto i = cur.size();
    if (i == ends.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t y = 0; y < ends[i].size(); ++y) {
      if (i > 0 && ends[i - 1][cur.back()].second != ends[i][y].first) continue;
      cur.push_back(y);
      go();
      cur.pop_back();
    }
  };
  go();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

SimplexThetaCategory tau_domain(const ThetaPresheaf& F) {
  const auto& cat = F.index();
  if (cat.inert_only()) throw DomainError("tau pullback needs a presheaf on all of Theta, not only inert maps");
  const int n = cat.level() - 1;
  if (n < 0) throw DomainError("tau pullback needs level at least 1");
  int max_m = 0;
  while (F.supports(tau(max_m + 1, ThetaObject::empty(n)))) ++max_m;
  const int inner = n == 0 ? 1 : std::max(1, cat.max_cells() - 2);
  std::set<ThetaObject> support(F.support().begin(), F.support().end());
  return SimplexThetaCategory{
      SimplexCategory{max_m}, ThetaCategory(n, inner),
      [support](const std::pair<int, ThetaObject>& o) { return support.count(tau(o.first, o.second)) != 0; },
      "tau_support"};
}

SimplexThetaPresheaf tau_pullback(const ThetaPresheaf& F) {
  return restrict_along(
      tau_domain(F), F, [](const std::pair<int, ThetaObject>& o) { return tau(o.first, o.second); },
      [](const std::pair<SimplexMap, ThetaMorphism>& f) { return tau(f.first, f.second); });
}

ThetaPresheaf slice_one(const SimplexThetaPresheaf& Y) {
  const auto& cat = Y.index();
  const int n = cat.second.level();
  std::vector<ThetaObject> objs;
  int max_cells = 0;
  for (const auto& o : Y.support())
    if (o.first == 1) max_cells = std::max(max_cells, o.second.cell_count());
  ThetaCategory dom(n, max_cells);
  for (const auto& I : dom.objects())
    if (!Y.supports({1, I})) throw SupportError("slice needs ([1], " + I.to_string() + ")");
  return restrict_along(
      dom, Y, [](const ThetaObject& I) { return std::pair<int, ThetaObject>{1, I}; },
      [](const ThetaMorphism& g) { return std::pair<SimplexMap, ThetaMorphism>{SimplexMap::identity(1), g}; });
}

nlohmann::json TransferReport::to_json() const {
  return {{"ok", ok},
          {"constancy_checked", constancy_checked},
          {"delta_checked", delta_checked},
          {"decomposition_checked", decomposition_checked},
          {"slice_segal", slice_segal},
          {"failures", failures}};
}

TransferReport segal_transfer_check(const ThetaPresheaf& F) {
  TransferReport report;
  const auto Y = tau_pullback(F);
  const int n = F.index().level() - 1;

  // (1)
  const auto reduced = is_reduced(Y);
  report.constancy_checked = reduced.maps_checked;
  for (const auto& f : reduced.failures) fail(report.failures, "constancy: " + f);
  if (!reduced.ok) report.ok = false;

  // Endpoints of Y([1], I) in Y([0], I).
  auto ends_of = [&](const ThetaObject& I) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const auto& s = Y.action({vertex_map(1, 0), ThetaMorphism::identity(I)});
    const auto& t = Y.action({vertex_map(1, 1), ThetaMorphism::identity(I)});
    for (std::size_t y = 0; y < s.size(); ++y) out.emplace_back(s[y], t[y]);
    return out;
  };

  // (2) on Y, with all columns equal to I.
  for (const auto& [m, I] : Y.support()) {
    if (m < 2) continue;
    ++report.delta_checked;
    const auto ends = ends_of(I);
    const auto fibre = chains(std::vector(static_cast<std::size_t>(m), ends));
    std::set<std::vector<std::size_t>> image;
    for (std::size_t y = 0; y < Y.size({m, I}); ++y) {
      std::vector<std::size_t> spine;
      for (int i = 1; i <= m; ++i) spine.push_back(Y.apply({edge_map(m, i - 1, i), ThetaMorphism::identity(I)}, y));
      image.insert(spine);
    }
    if (image.size() != Y.size({m, I}) || image.size() != fibre.size()) {
      report.ok = false;
      fail(report.failures, "delta Segal map not bijective at ([" + std::to_string(m) + "], " + I.to_string() + ")");
    }
  }

  // (2') on F, columns arbitrary, glued over F([0]()).
  const auto pt = ThetaObject::empty(n + 1);
  for (const auto& I : F.support()) {
    const int m = I.length();
    if (m < 2) continue;
    ++report.decomposition_checked;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ends;
    for (int i = 1; i <= m; ++i) {
      const auto col = ThetaObject::make(n + 1, {I.children()[static_cast<std::size_t>(i - 1)]});
      const auto& s = F.action(ThetaMorphism(pt, col, {0}, {}));
      const auto& t = F.action(ThetaMorphism(pt, col, {1}, {}));
      std::vector<std::pair<std::size_t, std::size_t>> e;
      for (std::size_t y = 0; y < s.size(); ++y) e.emplace_back(s[y], t[y]);
      ends.push_back(std::move(e));
    }
    const auto fibre = chains(ends);
    std::set<std::vector<std::size_t>> image;
    for (std::size_t x = 0; x < F.size(I); ++x) {
      std::vector<std::size_t> spine;
      for (int i = 1; i <= m; ++i) spine.push_back(F.apply(column(I, i), x));
      image.insert(spine);
    }
    if (image.size() != F.size(I) || image.size() != fibre.size()) {
      report.ok = false;
      fail(report.failures, "column decomposition not bijective at " + I.to_string());
    }
  }

  // (3)
  const auto slice = slice_one(Y);
  const auto seg = is_segal(slice);
  const auto red = is_reduced(slice);
  report.slice_segal = seg.ok && red.ok;
  if (!report.slice_segal) {
    report.ok = false;
    for (const auto& f : seg.failures) fail(report.failures, "slice: " + f);
  }
  return report;
}

// ---------------------------------------------------------------------------

nlohmann::json UnitComparison::to_json() const {
  nlohmann::json g = nlohmann::json::object();
  for (const auto& [s, row] : grades) g[std::to_string(s)] = {{"lhs", row.lhs}, {"rhs", row.rhs}, {"bijection", row.bijection}};
  nlohmann::json w = nlohmann::json::array();
  for (const auto& [a, b] : witness) w.push_back({a, b});
  return {{"k", k}, {"ok", ok}, {"grades", g}, {"witness", w}, {"failures", failures}};
}

UnitComparison unit_comparison(const GlobularSet& X, int k, const ComparisonWindow& window) {
  const int top = X.index().n;
  if (k < 0 || k > top) throw DomainError("unit comparison needs 0 <= k <= n + 1");
  UnitComparison out;
  out.k = k;

  auto lhs_name = [&](const ThetaObject& K, const std::vector<std::size_t>& fam) {
    std::vector<std::string> parts;
    const auto& cells = cells_of(K).cells();
    for (std::size_t c = 0; c < fam.size(); ++c) parts.push_back(X.name(cells[c].dim, fam[c]));
    return lower_to(K, k).to_string() + family_name(parts);
  };

  if (k == 0) {
    if (window.bound && *window.bound < 1) return out;
    // Both sides are X(C_0): the only shape is the point, and the only
    // T_{1,n} element at ([0], C_0) is a 0-cell.
    auto& row = out.grades[1];
    row.lhs = row.rhs = X.size(0);
    for (std::size_t x = 0; x < X.size(0); ++x) out.witness.emplace_back("*(" + X.name(0, x) + ")", X.name(0, x));
    return out;
  }

  // Side A.
  std::vector<ThetaObject> shapes_a, shapes_b;
  int max_length = 0, bound = std::numeric_limits<int>::max();
  if (window.bound) {
    bound = *window.bound;
    shapes_a = enum_theta_objects(k, bound);
    shapes_b = bound >= 3 ? enum_theta_objects(k - 1, bound - 2) : std::vector<ThetaObject>{};
    max_length = (bound - 1) / 2;
  } else {
    if (window.widths.empty()) throw DomainError("comparison window needs a bound or widths");
    shapes_a = enum_theta_objects_window(k, window.widths);
    shapes_b = enum_theta_objects_window(k - 1, std::vector<int>(window.widths.begin() + 1, window.widths.end()));
    max_length = window.widths.front();
  }
  const auto lhs = free_value(X, k, shapes_a);

  // Side B.
  const auto t = beta_transport(X);
  if (!t.reduced) fail(out.failures, "beta transport is not reduced");
  const auto rhs = iterated_free_value(t, k - 1, shapes_b, max_length, bound);
  std::map<std::pair<ThetaObject, std::size_t>, std::size_t> slice_index;
  for (std::size_t p = 0; p < rhs.slice_value.size(); ++p) {
    const auto& e = rhs.slice_value.elements[p];
    slice_index[{e.shape, e.family}] = p;
  }
  std::map<std::vector<std::size_t>, std::size_t> rhs_index;
  std::map<std::size_t, std::size_t> rhs_vertex;
  std::unordered_map<ThetaObject, ConeSet> slice_cones;
  auto slice_cone = [&](const ThetaObject& K) -> const ConeSet& {
    auto it = slice_cones.find(K);
    if (it == slice_cones.end()) it = slice_cones.emplace(K, cell_limit(t.slice, K)).first;
    return it->second;
  };
  auto rhs_name = [&](const IteratedElement& e) {
    if (e.pieces.empty()) return "id(" + X.name(0, e.vertex) + ")";
    std::string s;
    for (auto p : e.pieces) {
      const auto& se = rhs.slice_value.elements[p];
      const auto& fam = slice_cone(se.shape).families[se.family];
      std::vector<std::string> parts;
      const auto& cells = cells_of(se.shape).cells();
      for (std::size_t c = 0; c < fam.size(); ++c) parts.push_back(t.slice.name(cells[c].dim, fam[c]));
      s += (s.empty() ? "" : ";") + lower_to(se.shape, k - 1).to_string() + family_name(parts);
    }
    return "<" + s + ">";
  };
  for (std::size_t b = 0; b < rhs.elements.size(); ++b) {
    const auto& e = rhs.elements[b];
    if (e.pieces.empty())
      rhs_vertex[e.vertex] = b;
    else
      rhs_index[e.pieces] = b;
    ++out.grades[e.grade].rhs;
  }

  // The map: columns of J, each read through sigma.
  std::unordered_map<ThetaObject, ConeSet> lhs_cones;
  std::vector<std::size_t> hits(rhs.elements.size(), 0);
  std::set<int> bad_grades;
  for (const auto& e : lhs.elements) {
    ++out.grades[e.grade()].lhs;
    auto it = lhs_cones.find(e.shape);
    if (it == lhs_cones.end()) it = lhs_cones.emplace(e.shape, cell_limit(X, e.shape)).first;
    const auto& fam = it->second.families[e.family];
    const auto J = lower_to(e.shape, k);
    const int j = J.length();
    std::optional<std::size_t> target;
    if (j == 0) {
      auto r = rhs_vertex.find(fam[0]);
      if (r != rhs_vertex.end()) target = r->second;
    } else {
      const auto& J_cells = cells_of(e.shape);
      std::vector<std::size_t> pieces;
      bool found = true;
      for (int i = 1; i <= j; ++i) {
        const auto& child = J.children()[static_cast<std::size_t>(i - 1)];
        const auto K = iota_pow(child, top - k);  // level top - 1
        const auto col = iota_pow(column(J, i), top - k);
        std::vector<std::size_t> slice_fam;
        for (const auto& c : cells_of(K).cells())
          slice_fam.push_back(fam[*J_cells.index_of(compose(col, sigma(c.map)))]);
        const auto idx = slice_cone(K).index_of(slice_fam);
        if (!idx) {
          found = false;
          break;
        }
        auto s = slice_index.find({K, *idx});
        if (s == slice_index.end()) {
          found = false;
          break;
        }
        pieces.push_back(s->second);
      }
      if (found) {
        auto r = rhs_index.find(pieces);
        if (r != rhs_index.end()) target = r->second;
      }
    }
    const auto name = lhs_name(e.shape, fam);
    if (!target) {
      bad_grades.insert(e.grade());
      fail(out.failures, "no image for " + name);
      continue;
    }
    if (rhs.elements[*target].grade != e.grade()) {
      bad_grades.insert(e.grade());
      fail(out.failures, "grade changes for " + name);
    }
    ++hits[*target];
    out.witness.emplace_back(name, rhs_name(rhs.elements[*target]));
  }
  for (std::size_t b = 0; b < hits.size(); ++b)
    if (hits[b] != 1) {
      bad_grades.insert(rhs.elements[b].grade);
      fail(out.failures, (hits[b] ? "hit twice: " : "missed: ") + rhs_name(rhs.elements[b]));
    }
  for (auto& [g, row] : out.grades)
    row.bijection = row.lhs == row.rhs && !bad_grades.count(g);
  for (const auto& [g, row] : out.grades)
    if (!row.bijection) out.ok = false;
  if (!out.failures.empty()) out.ok = false;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Index of reduced, Delta-Segal Y by its spine data.
class Reconstruction {
 public:
  explicit Reconstruction(const SimplexThetaPresheaf& Y) : Y_(Y), n_(Y.index().second.level()) {
    pt_ = ThetaObject::empty(n_);
  }

  const ThetaObject& pt() const { return pt_; }
  std::size_t base_size() const { return Y_.size({0, pt_}); }
  const std::string& base_name(std::size_t b) const { return Y_.name({0, pt_}, b); }

  // Y([0], I) -> Y([0], pt) inverse of the constancy bijection.
  const std::vector<std::size_t>& to_base(const ThetaObject& I) {
    auto it = to_base_.find(I);
    if (it != to_base_.end()) return it->second;
    const auto& map = Y_.action({SimplexMap::identity(0), terminal_map(I)});
    return to_base_.emplace(I, invert(map, Y_.size({0, I}), "Y(id, t) at " + I.to_string())).first->second;
  }

  // Endpoints in Y([0], pt) of the elements of Y([1], I).
  const std::vector<std::pair<std::size_t, std::size_t>>& ends(const ThetaObject& I) {
    auto it = ends_.find(I);
    if (it != ends_.end()) return it->second;
    const auto& inv = to_base(I);
    const auto& s = Y_.action({vertex_map(1, 0), ThetaMorphism::identity(I)});
    const auto& t = Y_.action({vertex_map(1, 1), ThetaMorphism::identity(I)});
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t y = 0; y < s.size(); ++y) out.emplace_back(inv[s[y]], inv[t[y]]);
    return ends_.emplace(I, std::move(out)).first->second;
  }

  // The element of Y([r], I) with the given spine, r >= 2.
  std::size_t glue(int r, const ThetaObject& I, const std::vector<std::size_t>& spine) {
    auto key = std::make_pair(r, I);
    auto it = spines_.find(key);
    if (it == spines_.end()) {
      std::map<std::vector<std::size_t>, std::size_t> index;
      for (std::size_t z = 0; z < Y_.size({r, I}); ++z) {
        std::vector<std::size_t> sp;
        for (int i = 1; i <= r; ++i) sp.push_back(Y_.apply({edge_map(r, i - 1, i), ThetaMorphism::identity(I)}, z));
        if (!index.emplace(sp, z).second)
          throw InvariantError("Y is not Delta-Segal at ([" + std::to_string(r) + "], " + I.to_string() + ")");
      }
      it = spines_.emplace(key, std::move(index)).first;
    }
    auto z = it->second.find(spine);
    if (z == it->second.end())
      throw InvariantError("no element of Y([" + std::to_string(r) + "], " + I.to_string() + ") with the given spine");
    return z->second;
  }

  const SimplexThetaPresheaf& Y() const { return Y_; }

 private:
  const SimplexThetaPresheaf& Y_;
  int n_;
  ThetaObject pt_;
  std::unordered_map<ThetaObject, std::vector<std::size_t>> to_base_;
  std::unordered_map<ThetaObject, std::vector<std::pair<std::size_t, std::size_t>>> ends_;
  std::map<std::pair<int, ThetaObject>, std::map<std::vector<std::size_t>, std::size_t>> spines_;
};

}  // namespace

ThetaPresheaf reconstruct(const SimplexThetaPresheaf& Y, int bound) {
  const int n = Y.index().second.level();
  Reconstruction R(Y);
  const ThetaCategory cat(n + 1, bound);
  ThetaPresheaf X(cat);
  // Element tuples per object; the empty tuple list at [0]() means the base.
  std::unordered_map<ThetaObject, std::vector<std::vector<std::size_t>>> tuples;
  std::unordered_map<ThetaObject, std::map<std::vector<std::size_t>, std::size_t>> index;
  for (const auto& I : cat.objects()) {
    auto& list = tuples[I];
    std::vector<std::string> names;
    if (I.length() == 0) {
      for (std::size_t b = 0; b < R.base_size(); ++b) {
        list.push_back({b});
        names.push_back(R.base_name(b));
      }
    } else {
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ends;
      for (const auto& c : I.children()) ends.push_back(R.ends(c));
      list = chains(ends);
      for (const auto& tup : list) {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < tup.size(); ++i) parts.push_back(Y.name({1, I.children()[i]}, tup[i]));
        names.push_back(family_name(parts));
      }
    }
    auto& idx = index[I];
    for (std::size_t x = 0; x < list.size(); ++x) idx.emplace(list[x], x);
    X.set_value(I, std::move(names));
  }

  auto vertex = [&](const ThetaObject& I, const std::vector<std::size_t>& tup, int v) -> std::size_t {
    if (I.length() == 0) return tup[0];
    const auto& c = I.children();
    if (v == 0) return R.ends(c[0])[tup[0]].first;
    return R.ends(c[static_cast<std::size_t>(v - 1)])[tup[static_cast<std::size_t>(v - 1)]].second;
  };

  // Built serially: the reconstruction caches are not shared across threads.
  for (const auto& I : cat.objects())
    for (const auto& Ip : cat.objects())
      for (const auto& g : cat.hom(I, Ip)) {
        std::vector<std::size_t> map;
        const auto& outer = g.outer_values();
        for (const auto& tp : tuples.at(Ip)) {
          std::vector<std::size_t> tup;
          if (I.length() == 0) {
            tup.push_back(vertex(Ip, tp, outer[0]));
          } else {
            for (int i = 1; i <= I.length(); ++i) {
              const auto& Ii = I.children()[static_cast<std::size_t>(i - 1)];
              const int lo = outer[static_cast<std::size_t>(i - 1)], hi = outer[static_cast<std::size_t>(i)];
              const int r = hi - lo;
              if (r == 0) {
                tup.push_back(Y.apply({collapse_edge(), terminal_map(Ii)}, vertex(Ip, tp, lo)));
                continue;
              }
              std::vector<std::size_t> spine;
              for (int jj = lo + 1; jj <= hi; ++jj)
                spine.push_back(Y.apply({SimplexMap::identity(1), g.inner(i, jj)}, tp[static_cast<std::size_t>(jj - 1)]));
              if (r == 1) {
                tup.push_back(spine[0]);
              } else {
                const auto z = R.glue(r, Ii, spine);
                tup.push_back(Y.apply({edge_map(r, 0, r), ThetaMorphism::identity(Ii)}, z));
              }
            }
          }
          auto it = index.at(I).find(tup);
          if (it == index.at(I).end()) throw InvariantError("reconstructed action leaves the value at " + I.to_string());
          map.push_back(it->second);
        }
        X.set_action(g, std::move(map));
      }
  return X;
}

RoundTrip roundtrip_theta(const ThetaPresheaf& F, const ThetaPresheaf& rebuilt, int bound) {
  RoundTrip rt;
  std::unordered_map<ThetaObject, std::vector<std::size_t>> phi;
  for (const auto& I : rebuilt.support()) {
    if (I.cell_count() > bound || !F.supports(I)) continue;
    ++rt.objects;
    std::vector<std::size_t> map;
    auto& w = rt.witness[I.to_string()];
    w = nlohmann::json::object();
    for (std::size_t x = 0; x < F.size(I); ++x) {
      std::string name;
      if (I.length() == 0) {
        name = F.name(I, x);
      } else {
        std::vector<std::string> parts;
        for (int i = 1; i <= I.length(); ++i) {
          const auto col = column(I, i);
          parts.push_back(F.name(col.src(), F.apply(col, x)));
        }
        name = family_name(parts);
      }
      const auto y = rebuilt.find(I, name);
      if (!y) {
        rt.ok = false;
        fail(rt.failures, "spine of " + F.name(I, x) + " missing at " + I.to_string());
        map.push_back(0);
        continue;
      }
      map.push_back(*y);
      w[F.name(I, x)] = rebuilt.name(I, *y);
    }
    if (!detail::is_bijection(map, rebuilt.size(I))) {
      rt.ok = false;
      fail(rt.failures, "spine map not bijective at " + I.to_string());
    }
    phi.emplace(I, std::move(map));
  }
  for (const auto& [I, pI] : phi)
    for (const auto& [Ip, pIp] : phi)
      for (const auto& g : enum_theta_hom(I, Ip)) {
        ++rt.morphisms;
        const auto& Fg = F.action(g);
        const auto& Xg = rebuilt.action(g);
        for (std::size_t x = 0; x < Fg.size(); ++x)
          if (pI[Fg[x]] != Xg[pIp[x]]) {
            rt.ok = false;
            fail(rt.failures, "not natural along " + F.index().morphism_key(g));
            break;
          }
      }
  return rt;
}

RoundTrip roundtrip_tau(const SimplexThetaPresheaf& Y, const SimplexThetaPresheaf& rebuilt_tau, int bound) {
  RoundTrip rt;
  const auto& cat = Y.index();
  const auto pt = ThetaObject::empty(cat.second.level());
  std::map<std::pair<int, ThetaObject>, std::vector<std::size_t>> psi;
  for (const auto& o : rebuilt_tau.support()) {
    const auto& [m, I] = o;
    if (tau(m, I).cell_count() > bound || !Y.supports(o)) continue;
    ++rt.objects;
    std::vector<std::size_t> map;
    auto& w = rt.witness[cat.object_key(o)];
    w = nlohmann::json::object();
    for (std::size_t y = 0; y < Y.size(o); ++y) {
      std::string name;
      if (m == 0) {
        const auto& to_pt = Y.action({SimplexMap::identity(0), terminal_map(I)});
        const auto b = std::find(to_pt.begin(), to_pt.end(), y) - to_pt.begin();
        name = Y.name({0, pt}, static_cast<std::size_t>(b));
      } else {
        std::vector<std::string> parts;
        for (int i = 1; i <= m; ++i)
          parts.push_back(Y.name({1, I}, Y.apply({edge_map(m, i - 1, i), ThetaMorphism::identity(I)}, y)));
        name = family_name(parts);
      }
      const auto z = rebuilt_tau.find(o, name);
      if (!z) {
        rt.ok = false;
        fail(rt.failures, "spine of " + Y.name(o, y) + " missing at " + cat.object_key(o));
        map.push_back(0);
        continue;
      }
      map.push_back(*z);
      w[Y.name(o, y)] = rebuilt_tau.name(o, *z);
    }
    if (!detail::is_bijection(map, rebuilt_tau.size(o))) {
      rt.ok = false;
      fail(rt.failures, "spine map not bijective at " + cat.object_key(o));
    }
    psi.emplace(o, std::move(map));
  }
  for (const auto& [a, pa] : psi)
    for (const auto& [b, pb] : psi)
      for (const auto& g : cat.hom(a, b)) {
        ++rt.morphisms;
        const auto& Yg = Y.action(g);
        const auto& Rg = rebuilt_tau.action(g);
        for (std::size_t y = 0; y < Yg.size(); ++y)
          if (pa[Yg[y]] != Rg[pb[y]]) {
            rt.ok = false;
            fail(rt.failures, "not natural along " + cat.morphism_key(g));
            break;
          }
      }
  return rt;
}

// ---------------------------------------------------------------------------

namespace {

DoubleSimplexCategory double_domain(const ThetaPresheaf& F, int max_m) {
  if (F.index().level() != 2 || F.index().inert_only()) throw DomainError("tau_{2,0} pullback needs a presheaf on all of Theta_2");
  std::set<ThetaObject> support(F.support().begin(), F.support().end());
  // The stepwise route passes through tau^* F, whose Theta_1 factor stops at
  // max_cells - 2 cells; both routes use the same domain.
  const int inner = F.index().max_cells() - 2;
  return DoubleSimplexCategory{
      SimplexCategory{max_m},
      ProductCategory<SimplexCategory, ThetaCategory>{SimplexCategory{max_m}, ThetaCategory(0, 1), {}, "all"},
      [support, inner](const DoubleSimplexCategory::Object& o) {
        return tau(o.second.first, o.second.second).cell_count() <= inner &&
               support.count(tau_iterated({o.first, o.second.first}, o.second.second)) != 0;
      },
      "tau2_support"};
}

}  // namespace

DoubleSimplexPresheaf tau2_direct(const ThetaPresheaf& F, int max_m) {
  return restrict_along(
      double_domain(F, max_m), F,
      [](const DoubleSimplexCategory::Object& o) { return tau_iterated({o.first, o.second.first}, o.second.second); },
      [](const DoubleSimplexCategory::Morphism& f) {
        return tau_iterated({f.first, f.second.first}, f.second.second);
      });
}

DoubleSimplexPresheaf tau2_stepwise(const ThetaPresheaf& F, int max_m) {
  const auto Y = tau_pullback(F);
  return restrict_along(
      double_domain(F, max_m), Y,
      [](const DoubleSimplexCategory::Object& o) {
        return std::pair<int, ThetaObject>{o.first, tau(o.second.first, o.second.second)};
      },
      [](const DoubleSimplexCategory::Morphism& f) {
        return std::pair<SimplexMap, ThetaMorphism>{f.first, tau(f.second.first, f.second.second)};
      });
}

}  // namespace thetakit
