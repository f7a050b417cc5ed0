#include "thetakit/categories.hpp"

#include <algorithm>
#include <charconv>

#include "hash_util.hpp"
#include "thetakit/error.hpp"

namespace thetakit {

namespace {

int parse_int(std::string_view s, const std::string& whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) throw ParseError("bad integer in \"" + whole + "\"");
  return v;
}

// "[n]" -> n
int parse_bracket(std::string_view s, const std::string& whole) {
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') throw ParseError("expected [n] in \"" + whole + "\"");
  return parse_int(s.substr(1, s.size() - 2), whole);
}

struct ArrowParts {
  std::string_view src, tgt, body;
};

// "A->B:body"; objects never contain '-' or ':'.
ArrowParts split_arrow(std::string_view s, const std::string& whole) {
  const auto arrow = s.find("->");
  if (arrow == std::string_view::npos) throw ParseError("expected \"->\" in \"" + whole + "\"");
  const auto colon = s.find(':', arrow);
  if (colon == std::string_view::npos) throw ParseError("expected ':' in \"" + whole + "\"");
  return {s.substr(0, arrow), s.substr(arrow + 2, colon - arrow - 2), s.substr(colon + 1)};
}

}  // namespace

std::vector<int> SimplexCategory::objects() const {
  std::vector<int> out;
  for (int i = 0; i <= max_n; ++i) out.push_back(i);
  return out;
}

int SimplexCategory::parse_object(const std::string& s) const { return parse_bracket(s, s); }

SimplexMap SimplexCategory::parse_morphism(const std::string& s) const {
  const auto parts = split_arrow(s, s);
  const int a = parse_bracket(parts.src, s);
  const int b = parse_bracket(parts.tgt, s);
  auto body = parts.body;
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') throw ParseError("expected (values) in \"" + s + "\"");
  body = body.substr(1, body.size() - 2);
  std::vector<int> values;
  while (true) {
    const auto comma = body.find(',');
    values.push_back(parse_int(body.substr(0, comma), s));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  try {
    return SimplexMap(a, b, std::move(values));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid simplex map: ") + e.what());
  }
}

std::size_t SimplexCategory::morphism_hash(const SimplexMap& f) {
  std::size_t h = detail::hash_mix(std::hash<int>{}(f.src()), std::hash<int>{}(f.tgt()));
  for (int v : f.values()) h = detail::hash_mix(h, std::hash<int>{}(v));
  return h;
}

ThetaCategory::ThetaCategory(int level, int max_cells, bool inert_only)
    : level_(level), max_cells_(max_cells), inert_only_(inert_only), objects_(enum_theta_objects(level, max_cells)) {}

ThetaCategory ThetaCategory::window(int level, std::vector<int> widths, bool inert_only) {
  ThetaCategory c(level, 0, inert_only);
  c.objects_ = enum_theta_objects_window(level, widths);
  c.widths_ = std::move(widths);
  c.max_cells_ = 0;
  for (const auto& o : c.objects_) c.max_cells_ = std::max(c.max_cells_, o.cell_count());
  return c;
}

bool ThetaCategory::contains(const ThetaObject& obj) const {
  if (obj.level() != level_) return false;
  if (!widths_.empty()) return in_window(obj, widths_);
  return obj.cell_count() <= max_cells_;
}

std::vector<ThetaMorphism> ThetaCategory::hom(const ThetaObject& a, const ThetaObject& b) const {
  const auto& all = enum_theta_hom(a, b);
  if (!inert_only_) return all;
  std::vector<ThetaMorphism> out;
  for (const auto& f : all)
    if (f.is_inert()) out.push_back(f);
  return out;
}

std::string ThetaCategory::morphism_key(const ThetaMorphism& f) const {
  return f.src().to_string() + "->" + f.tgt().to_string() + ":" + f.to_string();
}

ThetaMorphism ThetaCategory::parse_morphism(const std::string& s) const {
  const auto parts = split_arrow(s, s);
  const auto src = parse_theta_object(level_, parts.src);
  const auto tgt = parse_theta_object(level_, parts.tgt);
  auto f = parse_theta_morphism(src, tgt, parts.body);
  if (inert_only_ && !f.is_inert()) throw ParseError("non-inert morphism in inert category: " + s);
  return f;
}

nlohmann::json ThetaCategory::tag() const {
  nlohmann::json j = {{"category", inert_only_ ? "theta_inert" : "theta"}, {"level", level_}};
  if (widths_.empty())
    j["max_cells"] = max_cells_;
  else
    j["window"] = widths_;
  return j;
}

ThetaCategory ThetaCategory::from_tag(const nlohmann::json& tag) {
  try {
    const auto kind = tag.at("category").get<std::string>();
    if (kind != "theta" && kind != "theta_inert") throw ParseError("not a theta index tag: " + kind);
    const bool inert = kind == "theta_inert";
    const int level = tag.at("level").get<int>();
    if (tag.contains("window")) return window(level, tag.at("window").get<std::vector<int>>(), inert);
    return ThetaCategory(level, tag.at("max_cells").get<int>(), inert);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad index tag: ") + e.what());
  }
}

std::vector<int> GlobularCategory::objects() const {
  std::vector<int> out;
  for (int i = 0; i <= n; ++i) out.push_back(i);
  return out;
}

int GlobularCategory::parse_object(const std::string& s) const {
  if (s.size() < 2 || s[0] != 'C') throw ParseError("expected Ck, got \"" + s + "\"");
  return parse_int(std::string_view(s).substr(1), s);
}

GlobMorphism GlobularCategory::parse_morphism(const std::string& s) const {
  if (s.rfind("id_", 0) == 0) return GlobMorphism::identity(parse_object(s.substr(3)));
  if (s.size() < 3 || (s[0] != 's' && s[0] != 't') || s[1] != ':')
    throw ParseError("expected s:Cj->Ck or t:Cj->Ck, got \"" + s + "\"");
  const auto rest = std::string_view(s).substr(2);
  const auto arrow = rest.find("->");
  if (arrow == std::string_view::npos) throw ParseError("expected \"->\" in \"" + s + "\"");
  const int j = parse_object(std::string(rest.substr(0, arrow)));
  const int k = parse_object(std::string(rest.substr(arrow + 2)));
  if (j >= k) throw ParseError("non-identity globular morphism needs j < k: " + s);
  return {j, k, s[0] == 's' ? Polarity::Source : Polarity::Target};
}

std::size_t GlobularCategory::morphism_hash(const GlobMorphism& f) {
  return detail::hash_mix(detail::hash_mix(std::hash<int>{}(f.src), std::hash<int>{}(f.tgt)),
                          f.polarity == Polarity::Source ? 1u : 2u);
}

static_assert(FiniteCategory<SimplexCategory>);
static_assert(FiniteCategory<ThetaCategory>);
static_assert(FiniteCategory<GlobularCategory>);
static_assert(FiniteCategory<SimplexThetaCategory>);

}  // namespace thetakit
