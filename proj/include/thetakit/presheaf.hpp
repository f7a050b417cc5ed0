#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "thetakit/categories.hpp"
#include "thetakit/error.hpp"
#include "thetakit/globular.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

/// Finite-support presheaf of finite sets on C. Elements of F(a) are indices
/// 0..size-1 with a stable name each and an optional grade. The action of
/// f : a -> b is stored as a table F(b) -> F(a).
template <FiniteCategory C>
class Presheaf {
 public:
  using Category = C;
  using Object = typename C::Object;
  using Morphism = typename C::Morphism;

  struct ObjectHash {
    std::size_t operator()(const Object& o) const { return C::object_hash(o); }
  };
  struct MorphismHash {
    std::size_t operator()(const Morphism& m) const { return C::morphism_hash(m); }
  };

  explicit Presheaf(C index) : index_(std::move(index)) {}

  const C& index() const { return index_; }
  const std::vector<Object>& support() const { return support_; }
  bool supports(const Object& obj) const { return values_.count(obj) != 0; }

  void set_value(const Object& obj, std::vector<std::string> names, std::vector<int> grades = {}) {
    if (!grades.empty() && grades.size() != names.size())
      throw DomainError("grade list does not match value set at " + index_.object_key(obj));
    auto [it, inserted] = values_.try_emplace(obj);
    if (inserted) support_.push_back(obj);
    it->second = {std::move(names), std::move(grades)};
  }

  void set_action(const Morphism& f, std::vector<std::size_t> map) {
    const auto src = index_.source(f);
    const auto tgt = index_.target(f);
    if (map.size() != size(tgt)) throw DomainError("action table has wrong length at " + index_.morphism_key(f));
    const auto n = size(src);
    for (auto v : map)
      if (v >= n) throw DomainError("action value out of range at " + index_.morphism_key(f));
    actions_[f] = std::move(map);
  }

  std::size_t size(const Object& obj) const { return value(obj).names.size(); }
  const std::vector<std::string>& names(const Object& obj) const { return value(obj).names; }
  const std::string& name(const Object& obj, std::size_t i) const { return value(obj).names.at(i); }
  bool graded(const Object& obj) const { return !value(obj).grades.empty(); }
  const std::vector<int>& grades(const Object& obj) const { return value(obj).grades; }
  int grade(const Object& obj, std::size_t i) const {
    const auto& v = value(obj);
    return v.grades.empty() ? 0 : v.grades.at(i);
  }

  bool has_action(const Morphism& f) const { return actions_.count(f) != 0; }
  const std::vector<std::size_t>& action(const Morphism& f) const {
    auto it = actions_.find(f);
    if (it == actions_.end()) throw SupportError("no action recorded for " + index_.morphism_key(f));
    return it->second;
  }
  std::size_t apply(const Morphism& f, std::size_t x) const { return action(f).at(x); }
  std::size_t action_count() const { return actions_.size(); }

  std::optional<std::size_t> find(const Object& obj, const std::string& element) const {
    const auto& ns = names(obj);
    for (std::size_t i = 0; i < ns.size(); ++i)
      if (ns[i] == element) return i;
    return std::nullopt;
  }

  /// Records fn(f) as the action of every morphism between supported
  /// objects. fn must be safe to call concurrently.
  template <class Fn>
  void build_actions(Fn&& fn) {
    std::vector<std::pair<Object, Object>> pairs;
    for (const auto& a : support_)
      for (const auto& b : support_) pairs.emplace_back(a, b);
    std::vector<std::vector<std::pair<Morphism, std::vector<std::size_t>>>> results(pairs.size());
    const auto count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (long p = 0; p < count; ++p) {
      const auto& [a, b] = pairs[static_cast<std::size_t>(p)];
      for (const auto& f : index_.hom(a, b)) results[static_cast<std::size_t>(p)].emplace_back(f, fn(f));
    }
    for (auto& r : results)
      for (auto& [f, map] : r) set_action(f, std::move(map));
  }

 private:
  struct Value {
    std::vector<std::string> names;
    std::vector<int> grades;
  };

  const Value& value(const Object& obj) const {
    auto it = values_.find(obj);
    if (it == values_.end()) throw SupportError("object outside support: " + index_.object_key(obj));
    return it->second;
  }

  C index_;
  std::vector<Object> support_;
  std::unordered_map<Object, Value, ObjectHash> values_;
  std::unordered_map<Morphism, std::vector<std::size_t>, MorphismHash> actions_;
};

using GlobularSet = Presheaf<GlobularCategory>;
using ThetaPresheaf = Presheaf<ThetaCategory>;

/// Globular set given by its cells per dimension and the source and target
/// maps X(C_k) -> X(C_{k-1}) (index 0 of source/target is unused).
struct GlobularData {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::vector<std::size_t>> source;
  std::vector<std::vector<std::size_t>> target;
};

/// Builds the presheaf on G_n, n = cells.size() - 1; throws DomainError
/// unless the globular relations hold.
GlobularSet make_globular_set(const GlobularData& data);
GlobularData globular_data(const GlobularSet& X);

/// Compact JSON {"cells": [[...]], "source": [[...]], "target": [[...]]}.
nlohmann::json to_json(const GlobularData& data);
GlobularData globular_data_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Validation.

struct ValidationReport {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> violations;
};

/// Exhaustive functoriality check on the support: every morphism has an
/// action, identities act trivially and F(g o f) = F(f) o F(g).
template <FiniteCategory C>
ValidationReport validate(const Presheaf<C>& F, std::size_t max_violations = 20) {
  ValidationReport report;
  const auto& cat = F.index();
  const auto& sup = F.support();
  auto note = [&](std::string msg) {
    report.ok = false;
    if (report.violations.size() < max_violations) report.violations.push_back(std::move(msg));
  };
  for (const auto& a : sup) {
    const auto id = cat.identity(a);
    ++report.checks;
    if (!F.has_action(id)) {
      note("missing action for " + cat.morphism_key(id));
      continue;
    }
    const auto& m = F.action(id);
    for (std::size_t x = 0; x < m.size(); ++x)
      if (m[x] != x) {
        note("identity acts nontrivially at " + cat.object_key(a));
        break;
      }
  }
  for (const auto& a : sup)
    for (const auto& b : sup)
      for (const auto& f : cat.hom(a, b)) {
        ++report.checks;
        if (!F.has_action(f)) note("missing action for " + cat.morphism_key(f));
      }
  if (!report.ok) return report;

  std::vector<std::tuple<typename C::Object, typename C::Object, typename C::Object>> triples;
  for (const auto& a : sup)
    for (const auto& b : sup)
      for (const auto& c : sup) triples.emplace_back(a, b, c);
  std::vector<std::vector<std::string>> found(triples.size());
  std::vector<std::size_t> counted(triples.size(), 0);
  const auto count = static_cast<long>(triples.size());
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < count; ++t) {
    const auto& [a, b, c] = triples[static_cast<std::size_t>(t)];
    const auto hab = cat.hom(a, b);
    if (hab.empty()) continue;
    const auto hbc = cat.hom(b, c);
    for (const auto& f : hab)
      for (const auto& g : hbc) {
        ++counted[static_cast<std::size_t>(t)];
        const auto& fg = F.action(cat.compose(g, f));
        const auto& mf = F.action(f);
        const auto& mg = F.action(g);
        for (std::size_t z = 0; z < fg.size(); ++z)
          if (fg[z] != mf[mg[z]]) {
            if (found[static_cast<std::size_t>(t)].size() < max_violations)
              found[static_cast<std::size_t>(t)].push_back("composition law fails for " + cat.morphism_key(g) +
                                                           " after " + cat.morphism_key(f));
            break;
          }
      }
  }
  for (std::size_t t = 0; t < triples.size(); ++t) {
    report.checks += counted[t];
    for (auto& v : found[t]) note(std::move(v));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Restriction.

/// u^*F for a functor u : D -> C given by its object and morphism clauses.
/// Every object of D must map into the support of F.
template <FiniteCategory D, FiniteCategory C, class ObjMap, class MorMap>
Presheaf<D> restrict_along(const D& dom, const Presheaf<C>& F, ObjMap&& u_obj, MorMap&& u_mor) {
  Presheaf<D> out(dom);
  for (const auto& d : dom.objects()) {
    const auto c = u_obj(d);
    if (!F.supports(c))
      throw SupportError("restriction needs " + F.index().object_key(c) + ", which is outside the support");
    out.set_value(d, F.names(c), F.grades(c));
  }
  out.build_actions([&](const typename D::Morphism& m) { return F.action(u_mor(m)); });
  return out;
}

// ---------------------------------------------------------------------------
// Finite limits.

/// x_to == map[x_from] for every compatible family.
struct DiagramArrow {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<std::size_t> map;
};

struct Diagram {
  std::vector<std::size_t> sizes;
  std::vector<DiagramArrow> arrows;
};

/// Optional pruning: families whose summed weights exceed the budget are
/// dropped. weights[node][value] must be nonnegative.
struct LimitBudget {
  std::vector<std::vector<int>> weights;
  int budget = 0;
};

/// The compatible families of a diagram, sorted lexicographically.
struct ConeSet {
  std::vector<std::vector<std::size_t>> families;

  std::size_t size() const { return families.size(); }
  std::optional<std::size_t> index_of(const std::vector<std::size_t>& family) const;
};

ConeSet finite_limit(const Diagram& diagram, const LimitBudget* budget = nullptr);

/// The diagram of a globular set X over the cells of I (I at level X.n).
Diagram cell_diagram(const GlobularSet& X, const CellCategory& cells);
/// lim over (G/I)^op of X.
ConeSet cell_limit(const GlobularSet& X, const ThetaObject& obj);
/// Name of a family: the component names in cell order, in parentheses.
std::string family_name(const std::vector<std::string>& parts);

/// Restriction of a presheaf on Theta (or its inert part) along gamma.
GlobularSet gamma_restrict(const ThetaPresheaf& F);

// ---------------------------------------------------------------------------
// Segal extension and checks.

/// Right Kan extension of X along gamma, on the inert objects with at most
/// max_cells cells. Element i of the value at I is cell_limit(X, I).families[i].
ThetaPresheaf segal_extend(const GlobularSet& X, int max_cells);

/// Grade bookkeeping for graded presheaves: the active map that element
/// `element` of F(obj) sits over.
using ShapeFn = std::function<ThetaMorphism(const ThetaObject& obj, std::size_t element)>;

struct SegalOptions {
  /// Graded mode: compare F(I) against the cell-limit families whose glued
  /// grade is at most this bound. Needs `shape`.
  std::optional<int> grade_bound;
  ShapeFn shape;
  /// Also check F(J) -> lim_alpha F(J_alpha) for active f : I -> J inside
  /// the support (ungraded mode only).
  bool check_active = true;
};

struct SegalReport {
  bool ok = true;
  std::size_t objects_checked = 0;
  std::size_t active_checked = 0;
  std::vector<std::string> failures;
};

SegalReport is_segal(const ThetaPresheaf& F, const SegalOptions& options = {});

/// Cell count of the object obtained by gluing the targets of a compatible
/// family of active maps out of the cells of I (cells[c] : C_dim -> K_c).
/// Counts classes of cells of the K_c under the transition maps.
int glued_grade(const ThetaObject& obj, const std::vector<ThetaMorphism>& pieces);

struct ReducedReport {
  bool ok = true;
  std::size_t maps_checked = 0;
  std::vector<std::string> failures;
};

namespace detail {

template <class T>
struct is_simplex_product : std::false_type {};
template <FiniteCategory B>
struct is_simplex_product<ProductCategory<SimplexCategory, B>> : std::true_type {};

inline bool is_bijection(const std::vector<std::size_t>& map, std::size_t target_size) {
  if (map.size() != target_size) return false;
  std::vector<char> hit(target_size, 0);
  for (auto v : map) {
    if (v >= target_size || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

}  // namespace detail

/// Reduced condition with U = constant presheaves: for each Delta slot l,
/// maps varying only the coordinates right of l between objects whose l-th
/// coordinate is [0] are bijections. Presheaves on a single Theta_n are
/// vacuously reduced.
template <FiniteCategory C>
ReducedReport is_reduced(const Presheaf<C>& F) {
  ReducedReport report;
  if constexpr (detail::is_simplex_product<C>::value) {
    const auto& cat = F.index();
    using B = typename C::Factor2;
    auto check = [&](const typename C::Object& a, const typename C::Morphism& f) {
      ++report.maps_checked;
      if (!detail::is_bijection(F.action(f), F.size(a))) {
        report.ok = false;
        if (report.failures.size() < 20) report.failures.push_back("not a bijection: " + cat.morphism_key(f));
      }
    };
    for (const auto& a : F.support())
      for (const auto& b : F.support()) {
        if (a.first == 0 && b.first == 0)
          for (const auto& g : cat.second.hom(a.second, b.second)) check(a, {SimplexMap::identity(0), g});
        if constexpr (detail::is_simplex_product<B>::value) {
          if (a.first == b.first && a.second.first == 0 && b.second.first == 0)
            for (const auto& g : cat.second.second.hom(a.second.second, b.second.second))
              check(a, {SimplexMap::identity(a.first), {SimplexMap::identity(0), g}});
        }
      }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Inert left Kan extension.

/// A presheaf on Theta whose elements sit over active maps; shapes[I][x] is
/// the active map out of I carrying element x, and the grade of x is the
/// cell count of its target.
struct GradedPresheaf {
  ThetaPresheaf presheaf;
  std::unordered_map<ThetaObject, std::vector<ThetaMorphism>> shapes;

  const ThetaMorphism& shape(const ThetaObject& obj, std::size_t x) const { return shapes.at(obj).at(x); }
  ShapeFn shape_fn() const;
};

/// Elements of i_!F(I) truncated at `bound`: pairs (a, x) with a an active map
/// out of I and x in F(target a), ordered by act_out order then x.
std::vector<std::pair<ThetaMorphism, std::size_t>> left_kan_elements(const ThetaPresheaf& F, const ThetaObject& obj,
                                                                     int bound);

/// i_!F on all objects of Theta with at most `bound` cells. F must live on
/// the inert subcategory and support every object of that size.
GradedPresheaf left_kan_inert(const ThetaPresheaf& F, int bound);

// ---------------------------------------------------------------------------
// JSON.

template <FiniteCategory C>
nlohmann::json to_json(const Presheaf<C>& F) {
  const auto& cat = F.index();
  nlohmann::json j;
  j["index"] = cat.tag();
  j["support"] = nlohmann::json::array();
  j["sets"] = nlohmann::json::object();
  j["maps"] = nlohmann::json::object();
  nlohmann::json grades = nlohmann::json::object();
  for (const auto& a : F.support()) {
    const auto key = cat.object_key(a);
    j["support"].push_back(key);
    j["sets"][key] = F.names(a);
    if (F.graded(a)) grades[key] = F.grades(a);
  }
  if (!grades.empty()) j["grades"] = grades;
  for (const auto& a : F.support())
    for (const auto& b : F.support())
      for (const auto& f : cat.hom(a, b)) {
        if (!F.has_action(f)) continue;
        nlohmann::json m = nlohmann::json::object();
        const auto& act = F.action(f);
        for (std::size_t y = 0; y < act.size(); ++y) m[F.name(b, y)] = F.name(a, act[y]);
        j["maps"][cat.morphism_key(f)] = m;
      }
  return j;
}

/// Reads a presheaf on `index`; throws ParseError on malformed input.
template <FiniteCategory C>
Presheaf<C> presheaf_from_json(const C& index, const nlohmann::json& j) {
  using Object = typename C::Object;
  Presheaf<C> F(index);
  try {
    std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> lookup;
    for (const auto& key_json : j.at("support")) {
      const auto key = key_json.get<std::string>();
      const Object obj = index.parse_object(key);
      auto names = j.at("sets").at(key).get<std::vector<std::string>>();
      auto& table = lookup[index.object_key(obj)];
      for (std::size_t i = 0; i < names.size(); ++i)
        if (!table.emplace(names[i], i).second) throw ParseError("duplicate element " + names[i] + " at " + key);
      std::vector<int> grades;
      if (j.contains("grades") && j["grades"].contains(key)) grades = j["grades"][key].get<std::vector<int>>();
      F.set_value(obj, std::move(names), std::move(grades));
    }
    for (const auto& [key, m] : j.at("maps").items()) {
      const auto f = index.parse_morphism(key);
      const auto src = index.source(f);
      const auto tgt = index.target(f);
      if (!F.supports(src) || !F.supports(tgt)) throw ParseError("map outside support: " + key);
      const auto& src_table = lookup.at(index.object_key(src));
      const auto& tgt_table = lookup.at(index.object_key(tgt));
      std::vector<std::size_t> act(F.size(tgt), static_cast<std::size_t>(-1));
      for (const auto& [from, to] : m.items()) {
        auto it = tgt_table.find(from);
        auto jt = src_table.find(to.template get<std::string>());
        if (it == tgt_table.end() || jt == src_table.end()) throw ParseError("unknown element in map " + key);
        act[it->second] = jt->second;
      }
      for (auto v : act)
        if (v == static_cast<std::size_t>(-1)) throw ParseError("map " + key + " is not total");
      F.set_action(f, std::move(act));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed presheaf JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("inconsistent presheaf JSON: ") + e.what());
  }
  return F;
}

/// Graded Theta presheaf with its shape table ("shapes": {object: [morphism keys]}).
nlohmann::json to_json(const GradedPresheaf& G);
GradedPresheaf graded_from_json(const nlohmann::json& j);

}  // namespace thetakit
