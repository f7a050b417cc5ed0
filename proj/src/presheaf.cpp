#include "thetakit/presheaf.hpp"

#include <numeric>

namespace thetakit {

std::optional<std::size_t> ConeSet::index_of(const std::vector<std::size_t>& family) const {
  auto it = std::lower_bound(families.begin(), families.end(), family);
  if (it == families.end() || *it != family) return std::nullopt;
  return static_cast<std::size_t>(it - families.begin());
}

namespace {

class LimitSearch {
 public:
  LimitSearch(const Diagram& d, const LimitBudget* budget)
      : d_(d), budget_(budget), out_(d.sizes.size()), in_(d.sizes.size()), val_(d.sizes.size(), kUnset) {
    for (std::size_t a = 0; a < d.arrows.size(); ++a) {
      const auto& arrow = d.arrows[a];
      if (arrow.from >= d.sizes.size() || arrow.to >= d.sizes.size() || arrow.map.size() != d.sizes[arrow.from])
        throw DomainError("malformed diagram arrow");
      out_[arrow.from].push_back(a);
      in_[arrow.to].push_back(a);
    }
    // Nodes nothing maps into are chosen first; everything downstream of
    // them is then forced by propagation.
    for (std::size_t v = 0; v < d.sizes.size(); ++v)
      if (in_[v].empty()) order_.push_back(v);
    for (std::size_t v = 0; v < d.sizes.size(); ++v)
      if (!in_[v].empty()) order_.push_back(v);
  }

  ConeSet run() {
    ConeSet cones;
    search(0, cones);
    std::sort(cones.families.begin(), cones.families.end());
    return cones;
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool assign(std::size_t v, std::size_t x) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{v, x}};
    while (!stack.empty()) {
      auto [u, y] = stack.back();
      stack.pop_back();
      if (val_[u] != kUnset) {
        if (val_[u] != y) return false;
        continue;
      }
      val_[u] = y;
      trail_.push_back(u);
      if (budget_) {
        weight_ += budget_->weights[u][y];
        if (weight_ > budget_->budget) return false;
      }
      for (auto a : in_[u]) {
        const auto& arrow = d_.arrows[a];
        if (val_[arrow.from] != kUnset && arrow.map[val_[arrow.from]] != y) return false;
      }
      for (auto a : out_[u]) stack.emplace_back(d_.arrows[a].to, d_.arrows[a].map[y]);
    }
    return true;
  }

  void undo(std::size_t mark, int weight) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
    weight_ = weight;
  }

  void search(std::size_t i, ConeSet& cones) {
    while (i < order_.size() && val_[order_[i]] != kUnset) ++i;
    if (i == order_.size()) {
      cones.families.push_back(val_);
      return;
    }
    const auto v = order_[i];
    for (std::size_t x = 0; x < d_.sizes[v]; ++x) {
      const auto mark = trail_.size();
      const int weight = weight_;
      if (assign(v, x)) search(i + 1, cones);
      undo(mark, weight);
    }
  }

  const Diagram& d_;
  const LimitBudget* budget_;
  std::vector<std::vector<std::size_t>> out_, in_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> val_;
  std::vector<std::size_t> trail_;
  int weight_ = 0;
};

}  // namespace

ConeSet finite_limit(const Diagram& diagram, const LimitBudget* budget) {
  if (budget && budget->weights.size() != diagram.sizes.size()) throw DomainError("budget weights do not match diagram");
  return LimitSearch(diagram, budget).run();
}

Diagram cell_diagram(const GlobularSet& X, const CellCategory& cells) {
  Diagram d;
  for (const auto& c : cells.cells()) d.sizes.push_back(X.size(c.dim));
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = 0; b < cells.size(); ++b)
      if (a != b && cells.order().leq(a, b)) d.arrows.push_back({b, a, X.action(*cells.arrow(a, b))});
  return d;
}

ConeSet cell_limit(const GlobularSet& X, const ThetaObject& obj) {
  return finite_limit(cell_diagram(X, cells_of(obj)));
}

std::string family_name(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + ")";
}

GlobularSet gamma_restrict(const ThetaPresheaf& F) {
  const int level = F.index().level();
  int top = -1;
  while (top < level && F.supports(globe(level, top + 1))) ++top;
  if (top < 0) throw SupportError("presheaf does not support the point");
  return restrict_along(
      GlobularCategory{top}, F, [&](int k) { return globe(level, k); },
      [&](const GlobMorphism& g) { return gamma_embed(level, g); });
}

ThetaPresheaf segal_extend(const GlobularSet& X, int max_cells) {
  const int level = X.index().n;
  ThetaPresheaf F(ThetaCategory(level, max_cells, true));
  std::unordered_map<ThetaObject, ConeSet> cones;
  for (const auto& obj : F.index().objects()) {
    auto limit = cell_limit(X, obj);
    const auto& cells = cells_of(obj);
    std::vector<std::string> names;
    for (const auto& fam : limit.families) {
      std::vector<std::string> parts;
      for (std::size_t c = 0; c < fam.size(); ++c) parts.push_back(X.name(cells.cells()[c].dim, fam[c]));
      names.push_back(family_name(parts));
    }
    F.set_value(obj, std::move(names));
    cones.emplace(obj, std::move(limit));
  }
  F.build_actions([&](const ThetaMorphism& i) {
    const auto& src_cells = cells_of(i.src());
    const auto& tgt_cells = cells_of(i.tgt());
    std::vector<std::size_t> reindex;
    for (const auto& c : src_cells.cells()) reindex.push_back(*tgt_cells.index_of(compose(i, c.map)));
    const auto& from = cones.at(i.tgt());
    const auto& to = cones.at(i.src());
    std::vector<std::size_t> map;
    for (const auto& fam : from.families) {
      std::vector<std::size_t> image;
      for (auto r : reindex) image.push_back(fam[r]);
      map.push_back(*to.index_of(image));
    }
    return map;
  });
  return F;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

int glued_grade(const ThetaObject& obj, const std::vector<ThetaMorphism>& pieces) {
  const auto& cells = cells_of(obj);
  if (pieces.size() != cells.size()) throw DomainError("family size does not match the cells of " + obj.to_string());
  const int level = obj.level();
  std::vector<std::size_t> offset(cells.size() + 1, 0);
  for (std::size_t c = 0; c < cells.size(); ++c) offset[c + 1] = offset[c] + cells_of(pieces[c].tgt()).size();
  UnionFind uf(offset.back());
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = 0; b < cells.size(); ++b) {
      if (a == b || !cells.order().leq(a, b)) continue;
      const auto fac = factorize(compose(pieces[b], gamma_embed(level, *cells.arrow(a, b))));
      if (fac.active != pieces[a]) throw InvariantError("active maps do not form a compatible family over " + obj.to_string());
      const auto& lower = cells_of(pieces[a].tgt());
      const auto& upper = cells_of(pieces[b].tgt());
      for (std::size_t e = 0; e < lower.size(); ++e)
        uf.unite(offset[a] + e, offset[b] + *upper.index_of(compose(fac.inert, lower.cells()[e].map)));
    }
  int classes = 0;
  for (std::size_t x = 0; x < offset.back(); ++x)
    if (uf.find(x) == x) ++classes;
  return classes;
}

namespace {

bool is_bijective_onto(const std::vector<std::optional<std::size_t>>& image, const std::vector<char>& wanted,
                       std::string& why) {
  std::vector<char> hit(wanted.size(), 0);
  for (std::size_t x = 0; x < image.size(); ++x) {
    if (!image[x]) {
      why = "element " + std::to_string(x) + " lands outside the limit";
      return false;
    }
    if (!wanted[*image[x]]) {
      why = "element " + std::to_string(x) + " lands on a family above the grade bound";
      return false;
    }
    if (hit[*image[x]]) {
      why = "two elements share the family " + std::to_string(*image[x]);
      return false;
    }
    hit[*image[x]] = 1;
  }
  for (std::size_t f = 0; f < wanted.size(); ++f)
    if (wanted[f] && !hit[f]) {
      why = "limit family " + std::to_string(f) + " is not hit";
      return false;
    }
  return true;
}

}  // namespace

SegalReport is_segal(const ThetaPresheaf& F, const SegalOptions& options) {
  SegalReport report;
  const auto& cat = F.index();
  const int level = cat.level();
  const bool graded = options.grade_bound.has_value();
  if (graded && !options.shape) throw DomainError("graded Segal check needs a shape function");
  auto fail = [&](std::string msg) {
    report.ok = false;
    if (report.failures.size() < 20) report.failures.push_back(std::move(msg));
  };

  for (const auto& obj : F.support()) {
    const auto& cells = cells_of(obj);
    bool supported = true;
    for (const auto& c : cells.cells())
      if (!F.supports(globe(level, c.dim))) supported = false;
    if (!supported) {
      fail(obj.to_string() + ": globes of its cells are outside the support");
      continue;
    }
    ++report.objects_checked;
    Diagram d;
    for (const auto& c : cells.cells()) d.sizes.push_back(F.size(globe(level, c.dim)));
    for (std::size_t a = 0; a < cells.size(); ++a)
      for (std::size_t b = 0; b < cells.size(); ++b)
        if (a != b && cells.order().leq(a, b))
          d.arrows.push_back({b, a, F.action(gamma_embed(level, *cells.arrow(a, b)))});
    const auto limit = finite_limit(d);

    std::vector<char> wanted(limit.size(), 1);
    if (graded)
      for (std::size_t f = 0; f < limit.size(); ++f) {
        std::vector<ThetaMorphism> pieces;
        for (std::size_t c = 0; c < cells.size(); ++c)
          pieces.push_back(options.shape(globe(level, cells.cells()[c].dim), limit.families[f][c]));
        wanted[f] = glued_grade(obj, pieces) <= *options.grade_bound;
      }

    std::vector<std::optional<std::size_t>> image;
    for (std::size_t x = 0; x < F.size(obj); ++x) {
      std::vector<std::size_t> fam;
      for (const auto& c : cells.cells()) fam.push_back(F.apply(c.map, x));
      image.push_back(limit.index_of(fam));
      if (graded && image.back() && F.graded(obj)) {
        std::vector<ThetaMorphism> pieces;
        for (std::size_t c = 0; c < cells.size(); ++c) pieces.push_back(options.shape(globe(level, cells.cells()[c].dim), fam[c]));
        if (glued_grade(obj, pieces) != F.grade(obj, x))
          fail(obj.to_string() + ": grade of element " + F.name(obj, x) + " differs from its glued grade");
      }
    }
    std::string why;
    if (!is_bijective_onto(image, wanted, why)) fail(obj.to_string() + ": Segal map is not a bijection (" + why + ")");
  }

  if (graded || !options.check_active) return report;

  for (const auto& obj : F.support()) {
    for (const auto& f : act_out(obj, cat.max_cells()).flat()) {
      if (!F.supports(f.tgt())) continue;
      const auto fiber = active_fiber(f);
      const auto& cells = *fiber.source;
      bool supported = true;
      for (const auto& part : fiber.parts)
        if (!F.supports(part.active.tgt())) supported = false;
      if (!supported) continue;
      ++report.active_checked;
      Diagram d;
      for (const auto& part : fiber.parts) d.sizes.push_back(F.size(part.active.tgt()));
      for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = 0; b < cells.size(); ++b)
          if (a != b && cells.order().leq(a, b)) d.arrows.push_back({b, a, F.action(fiber.transition(a, b))});
      const auto limit = finite_limit(d);
      std::vector<std::optional<std::size_t>> image;
      for (std::size_t y = 0; y < F.size(f.tgt()); ++y) {
        std::vector<std::size_t> fam;
        for (const auto& part : fiber.parts) fam.push_back(F.apply(part.inert, y));
        image.push_back(limit.index_of(fam));
      }
      std::string why;
      if (!is_bijective_onto(image, std::vector<char>(limit.size(), 1), why))
        fail(f.tgt().to_string() + ": decomposition along the active map from " + obj.to_string() +
             " is not a bijection (" + why + ")");
    }
  }
  return report;
}

ShapeFn GradedPresheaf::shape_fn() const {
  const auto* table = &shapes;
  return [table](const ThetaObject& obj, std::size_t x) { return table->at(obj).at(x); };
}

std::vector<std::pair<ThetaMorphism, std::size_t>> left_kan_elements(const ThetaPresheaf& F, const ThetaObject& obj,
                                                                     int bound) {
  std::vector<std::pair<ThetaMorphism, std::size_t>> out;
  for (const auto& [grade, maps] : act_out(obj, bound).entries)
    for (const auto& a : maps) {
      if (!F.supports(a.tgt())) throw SupportError("left Kan extension needs " + a.tgt().to_string());
      for (std::size_t x = 0; x < F.size(a.tgt()); ++x) out.emplace_back(a, x);
    }
  return out;
}

GradedPresheaf left_kan_inert(const ThetaPresheaf& F, int bound) {
  const int level = F.index().level();
  const ThetaCategory full(level, bound, false);
  GradedPresheaf G{ThetaPresheaf(full), {}};
  std::unordered_map<ThetaObject, std::unordered_map<ThetaMorphism, std::size_t>> offsets;
  for (const auto& obj : full.objects()) {
    std::vector<std::string> names;
    std::vector<int> grades;
    auto& shapes = G.shapes[obj];
    auto& offset = offsets[obj];
    for (const auto& [a, x] : left_kan_elements(F, obj, bound)) {
      offset.try_emplace(a, names.size());
      names.push_back(full.morphism_key(a) + "/" + F.name(a.tgt(), x));
      grades.push_back(a.tgt().cell_count());
      shapes.push_back(a);
    }
    G.presheaf.set_value(obj, std::move(names), std::move(grades));
  }
  G.presheaf.build_actions([&](const ThetaMorphism& g) {
    const auto& shapes = G.shapes.at(g.tgt());
    const auto& offset_src = offsets.at(g.src());
    const auto& offset_tgt = offsets.at(g.tgt());
    std::vector<std::size_t> map;
    for (std::size_t y = 0; y < shapes.size(); ++y) {
      const auto& a = shapes[y];
      const std::size_t x = y - offset_tgt.at(a);
      const auto fac = factorize(compose(a, g));
      map.push_back(offset_src.at(fac.active) + F.apply(fac.inert, x));
    }
    return map;
  });
  return G;
}

nlohmann::json to_json(const GradedPresheaf& G) {
  auto j = to_json(G.presheaf);
  const auto& cat = G.presheaf.index();
  nlohmann::json shapes = nlohmann::json::object();
  for (const auto& obj : G.presheaf.support()) {
    auto& list = shapes[cat.object_key(obj)];
    list = nlohmann::json::array();
    for (const auto& a : G.shapes.at(obj)) list.push_back(cat.morphism_key(a));
  }
  j["shapes"] = shapes;
  return j;
}

GradedPresheaf graded_from_json(const nlohmann::json& j) {
  try {
    auto cat = ThetaCategory::from_tag(j.at("index"));
    GradedPresheaf G{presheaf_from_json(cat, j), {}};
    const ThetaCategory full(cat.level(), cat.max_cells(), false);
    for (const auto& obj : G.presheaf.support()) {
      auto& list = G.shapes[obj];
      for (const auto& key : j.at("shapes").at(cat.object_key(obj))) {
        auto a = full.parse_morphism(key.get<std::string>());
        if (a.src() != obj || !a.is_active()) throw ParseError("shape " + key.get<std::string>() + " is not active out of " + obj.to_string());
        list.push_back(std::move(a));
      }
      if (list.size() != G.presheaf.size(obj)) throw ParseError("shape list has wrong length at " + obj.to_string());
    }
    return G;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graded presheaf JSON: ") + e.what());
  }
}

GlobularSet make_globular_set(const GlobularData& data) {
  const int n = static_cast<int>(data.cells.size()) - 1;
  if (n < 0) throw DomainError("a globular set needs at least the 0-cells");
  if (data.source.size() != data.cells.size() || data.target.size() != data.cells.size())
    throw DomainError("source/target lists must have one entry per dimension");
  for (int k = 1; k <= n; ++k) {
    const auto& s = data.source[static_cast<std::size_t>(k)];
    const auto& t = data.target[static_cast<std::size_t>(k)];
    const auto here = data.cells[static_cast<std::size_t>(k)].size();
    const auto below = data.cells[static_cast<std::size_t>(k) - 1].size();
    if (s.size() != here || t.size() != here) throw DomainError("source/target of dimension " + std::to_string(k) + " have wrong length");
    for (std::size_t x = 0; x < here; ++x)
      if (s[x] >= below || t[x] >= below) throw DomainError("boundary out of range in dimension " + std::to_string(k));
    if (k >= 2) {
      const auto& s1 = data.source[static_cast<std::size_t>(k) - 1];
      const auto& t1 = data.target[static_cast<std::size_t>(k) - 1];
      for (std::size_t x = 0; x < here; ++x)
        if (s1[s[x]] != s1[t[x]] || t1[s[x]] != t1[t[x]])
          throw DomainError("globular relations fail at " + data.cells[static_cast<std::size_t>(k)][x]);
    }
  }
  GlobularSet X(GlobularCategory{n});
  for (int k = 0; k <= n; ++k) X.set_value(k, data.cells[static_cast<std::size_t>(k)]);
  X.build_actions([&](const GlobMorphism& g) {
    std::vector<std::size_t> map;
    for (std::size_t x = 0; x < data.cells[static_cast<std::size_t>(g.tgt)].size(); ++x) {
      std::size_t y = x;
      // Sources down to dimension j+1, then the polarity of the first generator.
      for (int d = g.tgt; d > g.src + 1; --d) y = data.source[static_cast<std::size_t>(d)][y];
      if (g.tgt > g.src)
        y = (g.polarity == Polarity::Source ? data.source : data.target)[static_cast<std::size_t>(g.src) + 1][y];
      map.push_back(y);
    }
    return map;
  });
  return X;
}

GlobularData globular_data(const GlobularSet& X) {
  GlobularData data;
  const int n = X.index().n;
  for (int k = 0; k <= n; ++k) {
    data.cells.push_back(X.names(k));
    if (k == 0) {
      data.source.emplace_back();
      data.target.emplace_back();
    } else {
      data.source.push_back(X.action(GlobMorphism::generator(k, Polarity::Source)));
      data.target.push_back(X.action(GlobMorphism::generator(k, Polarity::Target)));
    }
  }
  return data;
}

nlohmann::json to_json(const GlobularData& data) {
  return {{"cells", data.cells}, {"source", data.source}, {"target", data.target}};
}

GlobularData globular_data_from_json(const nlohmann::json& j) {
  try {
    GlobularData data;
    data.cells = j.at("cells").get<std::vector<std::vector<std::string>>>();
    auto read = [&](const char* key) {
      auto v = j.value(key, std::vector<std::vector<std::size_t>>{});
      // The 0-cell entry may be omitted.
      if (v.size() + 1 == data.cells.size()) v.insert(v.begin(), std::vector<std::size_t>{});
      return v;
    };
    data.source = read("source");
    data.target = read("target");
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed globular set JSON: ") + e.what());
  }
}

}  // namespace thetakit
