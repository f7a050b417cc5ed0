#pragma once

#include <concepts>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "thetakit/error.hpp"
#include "thetakit/globular.hpp"
#include "thetakit/simplex.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

/// A finite category fragment that presheaves can live on. Keys are
/// deterministic strings used for serialization; parse_* invert them.
template <class C>
concept FiniteCategory = requires(const C& c, const typename C::Object& o, const typename C::Morphism& m,
                                  const std::string& s) {
  { c.objects() } -> std::convertible_to<std::vector<typename C::Object>>;
  { c.hom(o, o) } -> std::convertible_to<std::vector<typename C::Morphism>>;
  { c.identity(o) } -> std::same_as<typename C::Morphism>;
  { c.compose(m, m) } -> std::same_as<typename C::Morphism>;
  { c.source(m) } -> std::same_as<typename C::Object>;
  { c.target(m) } -> std::same_as<typename C::Object>;
  { c.object_key(o) } -> std::same_as<std::string>;
  { c.morphism_key(m) } -> std::same_as<std::string>;
  { c.parse_object(s) } -> std::same_as<typename C::Object>;
  { c.parse_morphism(s) } -> std::same_as<typename C::Morphism>;
  { C::object_hash(o) } -> std::same_as<std::size_t>;
  { C::morphism_hash(m) } -> std::same_as<std::size_t>;
  { c.tag() } -> std::same_as<nlohmann::json>;
};

/// Delta truncated to [0], ..., [max_n].
struct SimplexCategory {
  using Object = int;
  using Morphism = SimplexMap;

  int max_n = 3;

  std::vector<int> objects() const;
  std::vector<SimplexMap> hom(int a, int b) const { return enum_hom_simplex(a, b); }
  SimplexMap identity(int a) const { return SimplexMap::identity(a); }
  SimplexMap compose(const SimplexMap& g, const SimplexMap& f) const { return thetakit::compose(g, f); }
  int source(const SimplexMap& f) const { return f.src(); }
  int target(const SimplexMap& f) const { return f.tgt(); }
  std::string object_key(int a) const { return "[" + std::to_string(a) + "]"; }
  std::string morphism_key(const SimplexMap& f) const { return f.to_string(); }
  int parse_object(const std::string& s) const;
  SimplexMap parse_morphism(const std::string& s) const;
  static std::size_t object_hash(int a) { return std::hash<int>{}(a); }
  static std::size_t morphism_hash(const SimplexMap& f);
  nlohmann::json tag() const { return {{"category", "simplex"}, {"max_n", max_n}}; }
  bool is_point(int a) const { return a == 0; }
};

/// Theta_n (or its inert subcategory) on a finite set of objects: either all
/// objects with at most max_cells cells, or a width window.
class ThetaCategory {
 public:
  using Object = ThetaObject;
  using Morphism = ThetaMorphism;

  ThetaCategory(int level, int max_cells, bool inert_only = false);
  static ThetaCategory window(int level, std::vector<int> widths, bool inert_only = false);

  int level() const { return level_; }
  int max_cells() const { return max_cells_; }
  bool inert_only() const { return inert_only_; }
  const std::vector<int>& widths() const { return widths_; }
  bool contains(const ThetaObject& obj) const;

  std::vector<ThetaObject> objects() const { return objects_; }
  std::vector<ThetaMorphism> hom(const ThetaObject& a, const ThetaObject& b) const;
  ThetaMorphism identity(const ThetaObject& a) const { return ThetaMorphism::identity(a); }
  ThetaMorphism compose(const ThetaMorphism& g, const ThetaMorphism& f) const { return thetakit::compose(g, f); }
  ThetaObject source(const ThetaMorphism& f) const { return f.src(); }
  ThetaObject target(const ThetaMorphism& f) const { return f.tgt(); }
  std::string object_key(const ThetaObject& a) const { return a.to_string(); }
  std::string morphism_key(const ThetaMorphism& f) const;
  ThetaObject parse_object(const std::string& s) const { return parse_theta_object(level_, s); }
  ThetaMorphism parse_morphism(const std::string& s) const;
  static std::size_t object_hash(const ThetaObject& a) { return a.hash(); }
  static std::size_t morphism_hash(const ThetaMorphism& f) { return f.hash(); }
  nlohmann::json tag() const;
  static ThetaCategory from_tag(const nlohmann::json& tag);

 private:
  int level_;
  int max_cells_;
  bool inert_only_;
  std::vector<int> widths_;
  std::vector<ThetaObject> objects_;
};

/// The globular category G_n.
struct GlobularCategory {
  using Object = int;
  using Morphism = GlobMorphism;

  int n = 1;

  std::vector<int> objects() const;
  std::vector<GlobMorphism> hom(int a, int b) const { return enum_glob_hom(a, b); }
  GlobMorphism identity(int a) const { return GlobMorphism::identity(a); }
  GlobMorphism compose(const GlobMorphism& g, const GlobMorphism& f) const { return thetakit::compose(g, f); }
  int source(const GlobMorphism& f) const { return f.src; }
  int target(const GlobMorphism& f) const { return f.tgt; }
  std::string object_key(int a) const { return "C" + std::to_string(a); }
  std::string morphism_key(const GlobMorphism& f) const { return f.to_string(); }
  int parse_object(const std::string& s) const;
  GlobMorphism parse_morphism(const std::string& s) const;
  static std::size_t object_hash(int a) { return std::hash<int>{}(a); }
  static std::size_t morphism_hash(const GlobMorphism& f);
  nlohmann::json tag() const { return {{"category", "globular"}, {"n", n}}; }
};

/// A x B restricted to the objects accepted by `keep` (all when empty).
/// Keys join the factor keys with " x ".
template <FiniteCategory A, FiniteCategory B>
struct ProductCategory {
  using Object = std::pair<typename A::Object, typename B::Object>;
  using Morphism = std::pair<typename A::Morphism, typename B::Morphism>;
  using Factor1 = A;
  using Factor2 = B;

  A first;
  B second;
  std::function<bool(const Object&)> keep;
  std::string keep_name = "all";

  std::vector<Object> objects() const {
    std::vector<Object> out;
    for (const auto& a : first.objects())
      for (const auto& b : second.objects())
        if (!keep || keep({a, b})) out.emplace_back(a, b);
    return out;
  }
  std::vector<Morphism> hom(const Object& x, const Object& y) const {
    std::vector<Morphism> out;
    const auto ha = first.hom(x.first, y.first);
    const auto hb = second.hom(x.second, y.second);
    for (const auto& f : ha)
      for (const auto& g : hb) out.emplace_back(f, g);
    return out;
  }
  Morphism identity(const Object& x) const { return {first.identity(x.first), second.identity(x.second)}; }
  Morphism compose(const Morphism& g, const Morphism& f) const {
    return {first.compose(g.first, f.first), second.compose(g.second, f.second)};
  }
  Object source(const Morphism& f) const { return {first.source(f.first), second.source(f.second)}; }
  Object target(const Morphism& f) const { return {first.target(f.first), second.target(f.second)}; }
  std::string object_key(const Object& x) const { return first.object_key(x.first) + " x " + second.object_key(x.second); }
  std::string morphism_key(const Morphism& f) const {
    return first.morphism_key(f.first) + " x " + second.morphism_key(f.second);
  }
  Object parse_object(const std::string& s) const {
    auto [l, r] = split(s);
    return {first.parse_object(l), second.parse_object(r)};
  }
  Morphism parse_morphism(const std::string& s) const {
    auto [l, r] = split(s);
    return {first.parse_morphism(l), second.parse_morphism(r)};
  }
  static std::size_t object_hash(const Object& x) {
    return A::object_hash(x.first) * 0x9e3779b97f4a7c15ULL ^ B::object_hash(x.second);
  }
  static std::size_t morphism_hash(const Morphism& f) {
    return A::morphism_hash(f.first) * 0x9e3779b97f4a7c15ULL ^ B::morphism_hash(f.second);
  }
  nlohmann::json tag() const {
    return {{"category", "product"}, {"first", first.tag()}, {"second", second.tag()}, {"keep", keep_name}};
  }

 private:
  static std::pair<std::string, std::string> split(const std::string& s);
};

template <FiniteCategory A, FiniteCategory B>
std::pair<std::string, std::string> ProductCategory<A, B>::split(const std::string& s) {
  // The first factor's keys never contain " x ", so the first occurrence splits.
  const auto pos = s.find(" x ");
  if (pos == std::string::npos) throw ParseError("product key without \" x \": " + s);
  return {s.substr(0, pos), s.substr(pos + 3)};
}

/// Delta x Theta_n with objects ([m], I) where m <= max_n and I ranges over
/// the given Theta category.
using SimplexThetaCategory = ProductCategory<SimplexCategory, ThetaCategory>;

}  // namespace thetakit
