#include "thetakit/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "thetakit/error.hpp"

namespace thetakit::oracle {

namespace {

struct Skeleton {
  std::vector<std::string> vertices, edges, cells;
  std::vector<std::size_t> src, tgt;            // edges
  std::vector<std::size_t> cell_src, cell_tgt;  // 2-cells
};

Skeleton skeleton(const GlobularSet& X) {
  const auto data = globular_data(X);
  Skeleton s;
  s.vertices = data.cells.at(0);
  if (data.cells.size() > 1) {
    s.edges = data.cells[1];
    s.src = data.source[1];
    s.tgt = data.target[1];
  }
  if (data.cells.size() > 2) {
    s.cells = data.cells[2];
    s.cell_src = data.source[2];
    s.cell_tgt = data.target[2];
  }
  return s;
}

std::string path_string(const Path& p, const std::vector<std::string>& vertices, const std::vector<std::string>& edges) {
  if (p.edges.empty()) return vertices[p.start];
  std::string out;
  for (auto e : p.edges) out += (out.empty() ? "" : ".") + edges[e];
  return out;
}

// All paths of length <= L, by extension, sorted.
std::vector<Path> all_paths(const Skeleton& s, int max_length) {
  std::vector<Path> out, frontier;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) frontier.push_back({v, {}});
  for (int len = 0; len <= max_length; ++len) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<Path> next;
    for (const auto& p : frontier) {
      const auto end = p.edges.empty() ? p.start : s.tgt[p.edges.back()];
      for (std::size_t e = 0; e < s.edges.size(); ++e)
        if (s.src[e] == end) {
          auto q = p;
          q.edges.push_back(e);
          next.push_back(std::move(q));
        }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    return a.edges.size() != b.edges.size() ? a.edges.size() < b.edges.size() : a < b;
  });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

FreeCategory::FreeCategory(const GlobularSet& X, int max_length) : max_length_(max_length) {
  if (max_length < 0) throw DomainError("path length bound must be nonnegative");
  const auto s = skeleton(X);
  vertices_ = s.vertices.size();
  src_ = s.src;
  tgt_ = s.tgt;
  vertex_names_ = s.vertices;
  edge_names_ = s.edges;
  morphisms_ = all_paths(s, max_length);
  for (std::size_t i = 0; i < morphisms_.size(); ++i) index_.emplace(morphisms_[i], i);
}

std::optional<std::size_t> FreeCategory::find(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FreeCategory::end(const Path& p) const { return p.edges.empty() ? p.start : tgt_[p.edges.back()]; }

std::size_t FreeCategory::identity(std::size_t v) const { return index_.at(Path{v, {}}); }

std::size_t FreeCategory::unit(std::size_t edge) const {
  if (max_length_ < 1) throw BoundError("length bound 0 has no edges");
  return index_.at(Path{src_.at(edge), {edge}});
}

std::optional<std::size_t> FreeCategory::compose(std::size_t a, std::size_t b) const {
  const auto& p = morphisms_.at(a);
  const auto& q = morphisms_.at(b);
  if (end(p) != q.start) return std::nullopt;
  Path r = p;
  r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
  return find(r);
}

std::string FreeCategory::name(std::size_t i) const {
  return path_string(morphisms_.at(i), vertex_names_, edge_names_);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t composite_key(Op op, std::size_t a, std::size_t b) {
  return (static_cast<std::uint64_t>(op) << 62) | (static_cast<std::uint64_t>(a) << 31) | static_cast<std::uint64_t>(b);
}

int profile_grade(const std::vector<int>& profile) {
  int g = static_cast<int>(profile.size()) + 1;
  for (int k : profile) g += 2 * k + 1;
  return g;
}

}  // namespace

Free2Category::Free2Category(const GlobularSet& X, std::vector<int> widths, int node_bound) {
  if (widths.size() != 2 || widths[0] < 0 || widths[1] < 0) throw DomainError("widths must be {columns, cells per column}");
  const int M = widths[0], K = widths[1];
  const auto s = skeleton(X);
  vertex_names_ = s.vertices;
  edge_names_ = s.edges;
  cell_names_ = s.cells;
  paths_ = all_paths(s, M);
  for (std::size_t i = 0; i < paths_.size(); ++i) path_index_.emplace(paths_[i], i);
  auto end_of = [&](std::size_t p) {
    const auto& path = paths_[p];
    return path.edges.empty() ? path.start : s.tgt[path.edges.back()];
  };
  auto concat = [&](std::size_t p, std::size_t q) -> std::optional<std::size_t> {
    if (end_of(p) != paths_[q].start) return std::nullopt;
    auto r = paths_[p];
    r.edges.insert(r.edges.end(), paths_[q].edges.begin(), paths_[q].edges.end());
    auto it = path_index_.find(r);
    if (it == path_index_.end()) return std::nullopt;
    return it->second;
  };

  std::vector<std::vector<std::size_t>> strata(static_cast<std::size_t>(std::max(node_bound, 1) + 1));
  std::vector<std::size_t> id_leaf(paths_.size());
  if (node_bound >= 1) {
    if (M >= 1 && K >= 1)
      for (std::size_t c = 0; c < s.cells.size(); ++c) {
        Term t;
        t.op = Op::Gen;
        t.a = c;
        t.src = path_index_.at(Path{s.src[s.cell_src[c]], {s.cell_src[c]}});
        t.tgt = path_index_.at(Path{s.src[s.cell_tgt[c]], {s.cell_tgt[c]}});
        t.profile = {1};
        strata[1].push_back(terms_.size());
        terms_.push_back(std::move(t));
      }
    for (std::size_t p = 0; p < paths_.size(); ++p) {
      Term t;
      t.op = Op::Id;
      t.a = p;
      t.src = t.tgt = p;
      t.profile.assign(paths_[p].edges.size(), 0);
      id_leaf[p] = terms_.size();
      strata[1].push_back(terms_.size());
      terms_.push_back(std::move(t));
    }
  }
  // Boundary-directed generation by size; every composite is new, so the
  // strata never contain duplicates.
  for (int size = 3; size <= node_bound; ++size)
    for (int s1 = 1; s1 <= size - 2; ++s1) {
      const int s2 = size - 1 - s1;
      for (auto a : strata[static_cast<std::size_t>(s1)])
        for (auto b : strata[static_cast<std::size_t>(s2)]) {
          const Term& ta = terms_[a];
          const Term& tb = terms_[b];
          if (ta.profile.size() + tb.profile.size() <= static_cast<std::size_t>(M)) {
            auto src = concat(ta.src, tb.src);
            if (src) {
              Term t;
              t.op = Op::Horizontal;
              t.a = a;
              t.b = b;
              t.src = *src;
              t.tgt = *concat(ta.tgt, tb.tgt);
              t.profile = ta.profile;
              t.profile.insert(t.profile.end(), tb.profile.begin(), tb.profile.end());
              t.size = size;
              composites_.emplace(composite_key(Op::Horizontal, a, b), terms_.size());
              strata[static_cast<std::size_t>(size)].push_back(terms_.size());
              terms_.push_back(std::move(t));
            }
          }
          const Term& ta2 = terms_[a];
          const Term& tb2 = terms_[b];
          if (ta2.tgt == tb2.src) {
            std::vector<int> prof(ta2.profile.size());
            bool fits = true;
            for (std::size_t i = 0; i < prof.size(); ++i) {
              prof[i] = ta2.profile[i] + tb2.profile[i];
              fits = fits && prof[i] <= K;
            }
            if (fits) {
              Term t;
              t.op = Op::Vertical;
              t.a = a;
              t.b = b;
              t.src = ta2.src;
              t.tgt = tb2.tgt;
              t.profile = std::move(prof);
              t.size = size;
              composites_.emplace(composite_key(Op::Vertical, a, b), terms_.size());
              strata[static_cast<std::size_t>(size)].push_back(terms_.size());
              terms_.push_back(std::move(t));
            }
          }
        }
    }

  parent_.resize(terms_.size());
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  auto is_unit_leaf = [&](std::size_t t) { return terms_[t].op == Op::Id && paths_[terms_[t].a].edges.empty(); };
  auto axiom = [&](std::size_t t, std::optional<std::size_t> r) {
    if (!r) return;
    ++axioms_;
    unite(t, *r);
  };
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const Term& term = terms_[t];
    if (term.op == Op::Horizontal) {
      const auto a = term.a, b = term.b;
      if (terms_[a].op == Op::Horizontal) {
        auto inner = lookup(Op::Horizontal, terms_[a].b, b);
        if (inner) axiom(t, lookup(Op::Horizontal, terms_[a].a, *inner));
      }
      if (is_unit_leaf(a)) axiom(t, b);
      if (is_unit_leaf(b)) axiom(t, a);
      if (terms_[a].op == Op::Id && terms_[b].op == Op::Id) axiom(t, id_leaf[term.src]);
    } else if (term.op == Op::Vertical) {
      const auto a = term.a, b = term.b;
      if (terms_[a].op == Op::Vertical) {
        auto inner = lookup(Op::Vertical, terms_[a].b, b);
        if (inner) axiom(t, lookup(Op::Vertical, terms_[a].a, *inner));
      }
      if (terms_[a].op == Op::Id) axiom(t, b);
      if (terms_[b].op == Op::Id) axiom(t, a);
      if (terms_[a].op == Op::Horizontal && terms_[b].op == Op::Horizontal) {
        const auto x = terms_[a].a, y = terms_[a].b, z = terms_[b].a, w = terms_[b].b;
        if (terms_[x].tgt == terms_[z].src) {
          auto left = lookup(Op::Vertical, x, z);
          auto right = lookup(Op::Vertical, y, w);
          if (left && right) axiom(t, lookup(Op::Horizontal, *left, *right));
        }
      }
    }
  }
  // Congruence closure: merge composites whose children are merged, until
  // nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    std::unordered_map<std::uint64_t, std::size_t> signature;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      const Term& term = terms_[t];
      if (term.op != Op::Horizontal && term.op != Op::Vertical) continue;
      const auto key = composite_key(term.op, find(term.a), find(term.b));
      auto [it, fresh] = signature.emplace(key, t);
      if (!fresh && unite(it->second, t)) changed = true;
    }
  }

  class_of_.resize(terms_.size());
  std::unordered_map<std::size_t, std::size_t> root_class;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto r = find(t);
    auto [it, fresh] = root_class.emplace(r, classes_.size());
    if (fresh) classes_.push_back({t, terms_[t].profile, profile_grade(terms_[t].profile), 0});
    class_of_[t] = it->second;
    auto& cls = classes_[it->second];
    ++cls.members;
    if (cls.profile != terms_[t].profile) throw InvariantError("rewriting merged terms with different profiles");
    if (terms_[t].size < terms_[cls.representative].size) cls.representative = t;
  }
}

std::size_t Free2Category::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool Free2Category::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (y < x) std::swap(x, y);
  parent_[y] = x;
  return true;
}

std::optional<std::size_t> Free2Category::lookup(Op op, std::size_t a, std::size_t b) const {
  auto it = composites_.find(composite_key(op, a, b));
  if (it == composites_.end()) return std::nullopt;
  return it->second;
}

std::string Free2Category::to_string(std::size_t t) const {
  const Term& term = terms_.at(t);
  switch (term.op) {
    case Op::Gen:
      return cell_names_[term.a];
    case Op::Id:
      return "1(" + path_string(paths_[term.a], vertex_names_, edge_names_) + ")";
    case Op::Horizontal:
      return "(" + to_string(term.a) + " *0 " + to_string(term.b) + ")";
    case Op::Vertical:
      return "(" + to_string(term.a) + " *1 " + to_string(term.b) + ")";
  }
  return {};
}

std::map<int, std::size_t> Free2Category::grade_counts() const {
  std::map<int, std::size_t> out;
  for (const auto& c : classes_) ++out[c.grade];
  return out;
}

nlohmann::json Free2Category::to_json() const {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : classes_)
    classes.push_back({{"representative", to_string(c.representative)},
                       {"profile", c.profile},
                       {"grade", c.grade},
                       {"members", c.members}});
  return {{"terms", terms_.size()}, {"axiom_instances", axioms_}, {"classes", classes}};
}

Free2Category free_2cat_rewrite(const GlobularSet& X, const std::vector<int>& widths, int slack) {
  if (widths.size() != 2) throw DomainError("widths must be {columns, cells per column}");
  const int base = std::max(1, 2 * widths[0] * widths[1] - 1) + slack;
  Free2Category small(X, widths, base);
  Free2Category large(X, widths, base + 2);
  if (small.grade_counts() != large.grade_counts())
    throw BoundError("rewriting classes change between node bounds " + std::to_string(base) + " and " +
                     std::to_string(base + 2));
  return large;
}

// ---------------------------------------------------------------------------

std::vector<std::string> strict_law_violations(const Strict2Category& C) {
  std::vector<std::string> out;
  auto note = [&](std::string s) {
    if (out.size() < 20) out.push_back(std::move(s));
  };
  const auto nA = C.arrows.size(), nC = C.cells.size();
  auto comp = [&](std::size_t f, std::size_t g) -> std::optional<std::size_t> {
    auto it = C.compose.find({f, g});
    if (it == C.compose.end()) return std::nullopt;
    return it->second;
  };
  auto vert = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    auto it = C.vertical.find({a, b});
    if (it == C.vertical.end()) return std::nullopt;
    return it->second;
  };
  auto horiz = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    auto it = C.horizontal.find({a, b});
    if (it == C.horizontal.end()) return std::nullopt;
    return it->second;
  };
  auto csrc0 = [&](std::size_t a) { return C.arrow_src[C.cell_src[a]]; };
  auto ctgt0 = [&](std::size_t a) { return C.arrow_tgt[C.cell_src[a]]; };

  for (std::size_t a = 0; a < nC; ++a)
    if (C.arrow_src[C.cell_src[a]] != C.arrow_src[C.cell_tgt[a]] ||
        C.arrow_tgt[C.cell_src[a]] != C.arrow_tgt[C.cell_tgt[a]])
      note("2-cell " + C.cells[a] + " has non-parallel boundary");
  for (std::size_t x = 0; x < C.objects.size(); ++x) {
    const auto i = C.id_arrow[x];
    if (C.arrow_src[i] != x || C.arrow_tgt[i] != x) note("identity of " + C.objects[x] + " has wrong ends");
  }
  for (std::size_t f = 0; f < nA; ++f) {
    const auto i = C.id_cell[f];
    if (C.cell_src[i] != f || C.cell_tgt[i] != f) note("identity of " + C.arrows[f] + " has wrong ends");
    if (comp(C.id_arrow[C.arrow_src[f]], f) != f || comp(f, C.id_arrow[C.arrow_tgt[f]]) != f)
      note("unit law fails for " + C.arrows[f]);
  }
  for (std::size_t f = 0; f < nA; ++f)
    for (std::size_t g = 0; g < nA; ++g) {
      const auto fg = comp(f, g);
      if (fg.has_value() != (C.arrow_tgt[f] == C.arrow_src[g])) {
        note("composite " + C.arrows[f] + ";" + C.arrows[g] + " defined wrongly");
        continue;
      }
      if (!fg) continue;
      if (C.arrow_src[*fg] != C.arrow_src[f] || C.arrow_tgt[*fg] != C.arrow_tgt[g])
        note("composite " + C.arrows[f] + ";" + C.arrows[g] + " has wrong ends");
      if (horiz(C.id_cell[f], C.id_cell[g]) != C.id_cell[*fg])
        note("identity 2-cells do not compose at " + C.arrows[f] + ";" + C.arrows[g]);
      for (std::size_t h = 0; h < nA; ++h) {
        const auto gh = comp(g, h);
        if (!gh) continue;
        if (comp(*fg, h) != comp(f, *gh)) note("associativity fails at " + C.arrows[f] + ";" + C.arrows[g] + ";" + C.arrows[h]);
      }
    }
  for (std::size_t a = 0; a < nC; ++a) {
    if (vert(C.id_cell[C.cell_src[a]], a) != a || vert(a, C.id_cell[C.cell_tgt[a]]) != a)
      note("vertical unit law fails for " + C.cells[a]);
    const auto u0 = C.id_cell[C.id_arrow[csrc0(a)]], u1 = C.id_cell[C.id_arrow[ctgt0(a)]];
    if (horiz(u0, a) != a || horiz(a, u1) != a) note("horizontal unit law fails for " + C.cells[a]);
  }
  for (std::size_t a = 0; a < nC; ++a)
    for (std::size_t b = 0; b < nC; ++b) {
      const auto ab = vert(a, b);
      if (ab.has_value() != (C.cell_tgt[a] == C.cell_src[b])) {
        note("vertical " + C.cells[a] + "," + C.cells[b] + " defined wrongly");
      } else if (ab && (C.cell_src[*ab] != C.cell_src[a] || C.cell_tgt[*ab] != C.cell_tgt[b])) {
        note("vertical " + C.cells[a] + "," + C.cells[b] + " has wrong boundary");
      }
      const auto h = horiz(a, b);
      if (h.has_value() != (ctgt0(a) == csrc0(b))) {
        note("horizontal " + C.cells[a] + "," + C.cells[b] + " defined wrongly");
      } else if (h && (C.cell_src[*h] != comp(C.cell_src[a], C.cell_src[b]) ||
                       C.cell_tgt[*h] != comp(C.cell_tgt[a], C.cell_tgt[b]))) {
        note("horizontal " + C.cells[a] + "," + C.cells[b] + " has wrong boundary");
      }
      for (std::size_t c = 0; c < nC; ++c) {
        if (ab) {
          const auto bc = vert(b, c);
          if (bc && vert(*ab, c) != vert(a, *bc)) note("vertical associativity fails");
        }
        if (h) {
          const auto hc = horiz(b, c);
          if (hc && horiz(*h, c) != horiz(a, *hc)) note("horizontal associativity fails");
        }
      }
    }
  // Interchange: (a *0 c) *1 (b *0 d) = (a *1 b) *0 (c *1 d).
  for (std::size_t a = 0; a < nC; ++a)
    for (std::size_t b = 0; b < nC; ++b) {
      const auto ab = vert(a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < nC; ++c) {
        const auto ac = horiz(a, c);
        if (!ac) continue;
        for (std::size_t d = 0; d < nC; ++d) {
          const auto cd = vert(c, d);
          if (!cd) continue;
          const auto bd = horiz(b, d);
          if (!bd) continue;
          const auto lhs = vert(*ac, *bd);
          const auto rhs = horiz(*ab, *cd);
          if (!lhs || lhs != rhs)
            note("interchange fails at " + C.cells[a] + "," + C.cells[b] + "," + C.cells[c] + "," + C.cells[d]);
        }
      }
    }
  return out;
}

Strict2Category locally_discrete(std::string name, std::vector<std::string> objects, std::vector<std::string> arrows,
                                 std::vector<std::size_t> src, std::vector<std::size_t> tgt,
                                 const std::function<std::size_t(std::size_t, std::size_t)>& comp) {
  Strict2Category C;
  C.name = std::move(name);
  C.objects = std::move(objects);
  C.arrows = std::move(arrows);
  C.arrow_src = std::move(src);
  C.arrow_tgt = std::move(tgt);
  for (std::size_t x = 0; x < C.objects.size(); ++x) C.id_arrow.push_back(x);
  for (std::size_t f = 0; f < C.arrows.size(); ++f) {
    C.cells.push_back("1_" + C.arrows[f]);
    C.cell_src.push_back(f);
    C.cell_tgt.push_back(f);
    C.id_cell.push_back(f);
    C.vertical[{f, f}] = f;
  }
  for (std::size_t f = 0; f < C.arrows.size(); ++f)
    for (std::size_t g = 0; g < C.arrows.size(); ++g)
      if (C.arrow_tgt[f] == C.arrow_src[g]) {
        const auto fg = comp(f, g);
        C.compose[{f, g}] = fg;
        C.horizontal[{f, g}] = fg;
      }
  return C;
}

std::vector<Strict2Category> strict_corpus() {
  std::vector<Strict2Category> out;
  auto unit_absorb = [](std::size_t objects) {
    return [objects](std::size_t f, std::size_t g) -> std::size_t {
      if (f < objects) return g;
      if (g < objects) return f;
      throw InvariantError("no composite given");
    };
  };
  out.push_back(locally_discrete("terminal", {"*"}, {"1"}, {0}, {0}, unit_absorb(1)));
  out.push_back(locally_discrete("arrow", {"a", "b"}, {"1a", "1b", "f"}, {0, 1, 0}, {0, 1, 1}, unit_absorb(2)));
  out.push_back(locally_discrete("chain", {"a", "b", "c"}, {"1a", "1b", "1c", "f", "g", "gf"}, {0, 1, 2, 0, 1, 0},
                                 {0, 1, 2, 1, 2, 2}, [](std::size_t f, std::size_t g) -> std::size_t {
                                   if (f < 3) return g;
                                   if (g < 3) return f;
                                   if (f == 3 && g == 4) return 5;
                                   throw InvariantError("no composite given");
                                 }));
  out.push_back(locally_discrete("z2", {"*"}, {"e", "s"}, {0, 0}, {0, 0},
                                 [](std::size_t f, std::size_t g) -> std::size_t { return f ^ g; }));

  {
    // alpha : f => g between a and b.
    auto C = locally_discrete("two_cell", {"a", "b"}, {"1a", "1b", "f", "g"}, {0, 1, 0, 0}, {0, 1, 1, 1}, unit_absorb(2));
    const std::size_t alpha = C.cells.size();
    C.cells.push_back("alpha");
    C.cell_src.push_back(2);
    C.cell_tgt.push_back(3);
    C.vertical[{C.id_cell[2], alpha}] = alpha;
    C.vertical[{alpha, C.id_cell[3]}] = alpha;
    C.horizontal[{C.id_cell[0], alpha}] = alpha;
    C.horizontal[{alpha, C.id_cell[1]}] = alpha;
    out.push_back(std::move(C));
  }
  {
    // One object, one arrow, 2-cells Z/2 under both composites.
    Strict2Category C;
    C.name = "eckmann_hilton";
    C.objects = {"*"};
    C.arrows = {"1"};
    C.arrow_src = C.arrow_tgt = {0};
    C.cells = {"0", "1"};
    C.cell_src = C.cell_tgt = {0, 0};
    C.id_arrow = {0};
    C.id_cell = {0};
    C.compose[{0, 0}] = 0;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) C.vertical[{a, b}] = C.horizontal[{a, b}] = a ^ b;
    out.push_back(std::move(C));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Labeling {
  std::vector<std::size_t> vertices;
  std::vector<std::vector<std::size_t>> arrows;  // per column: f_0 .. f_k
  std::vector<std::vector<std::size_t>> cells;   // per column: alpha_1 .. alpha_k
};

int column_height(const ThetaObject& I, int i) {
  const auto& child = I.children()[static_cast<std::size_t>(i - 1)];
  return child.level() == 0 ? 0 : child.length();
}

// Key: {x} for [0](), otherwise per column f_0 then alpha_1..alpha_k.
Labeling decode(const Strict2Category& C, const ThetaObject& I, const std::vector<std::size_t>& key) {
  Labeling L;
  const int m = I.length();
  if (m == 0) {
    L.vertices = {key[0]};
    return L;
  }
  std::size_t pos = 0;
  for (int i = 1; i <= m; ++i) {
    const int k = column_height(I, i);
    std::vector<std::size_t> arrows{key[pos++]};
    std::vector<std::size_t> cells;
    for (int j = 1; j <= k; ++j) {
      cells.push_back(key[pos++]);
      arrows.push_back(C.cell_tgt[cells.back()]);
    }
    if (i == 1) L.vertices.push_back(C.arrow_src[arrows[0]]);
    L.vertices.push_back(C.arrow_tgt[arrows[0]]);
    L.arrows.push_back(std::move(arrows));
    L.cells.push_back(std::move(cells));
  }
  return L;
}

std::vector<std::vector<std::size_t>> labelings(const Strict2Category& C, const ThetaObject& I) {
  std::vector<std::vector<std::size_t>> out;
  const int m = I.length();
  if (m == 0) {
    for (std::size_t x = 0; x < C.objects.size(); ++x) out.push_back({x});
    return out;
  }
  std::vector<std::size_t> key;
  std::function<void(int, std::optional<std::size_t>)> column = [&](int i, std::optional<std::size_t> from) {
    if (i > m) {
      out.push_back(key);
      return;
    }
    const int k = column_height(I, i);
    for (std::size_t f = 0; f < C.arrows.size(); ++f) {
      if (from && C.arrow_src[f] != *from) continue;
      key.push_back(f);
      std::function<void(int, std::size_t)> stack = [&](int j, std::size_t cur) {
        if (j > k) {
          column(i + 1, C.arrow_tgt[f]);
          return;
        }
        for (std::size_t a = 0; a < C.cells.size(); ++a) {
          if (C.cell_src[a] != cur) continue;
          key.push_back(a);
          stack(j + 1, C.cell_tgt[a]);
          key.pop_back();
        }
      };
      stack(1, f);
      key.pop_back();
    }
  };
  column(1, std::nullopt);
  return out;
}

std::string labeling_name(const Strict2Category& C, const ThetaObject& I, const std::vector<std::size_t>& key) {
  if (I.length() == 0) return C.objects[key[0]];
  std::string out;
  std::size_t pos = 0;
  for (int i = 1; i <= I.length(); ++i) {
    if (i > 1) out += "|";
    out += C.arrows[key[pos++]];
    for (int j = 1; j <= column_height(I, i); ++j) out += ";" + C.cells[key[pos++]];
  }
  return out;
}

template <class Map>
std::size_t table(const Map& map, std::size_t a, std::size_t b, const char* what) {
  auto it = map.find({a, b});
  if (it == map.end()) throw DomainError(std::string("composition table has no ") + what + " composite");
  return it->second;
}

// Labeling of I pulled back from I' along g.
std::vector<std::size_t> pull_back(const Strict2Category& C, const ThetaMorphism& g, const Labeling& L) {
  const auto& I = g.src();
  const auto& outer = g.outer_values();
  if (I.length() == 0) return {L.vertices[static_cast<std::size_t>(outer[0])]};
  std::vector<std::size_t> key;
  for (int i = 1; i <= I.length(); ++i) {
    const int a = outer[static_cast<std::size_t>(i - 1)], b = outer[static_cast<std::size_t>(i)];
    const int k = column_height(I, i);
    if (a == b) {
      const auto f = C.id_arrow[L.vertices[static_cast<std::size_t>(a)]];
      key.push_back(f);
      for (int j = 1; j <= k; ++j) key.push_back(C.id_cell[f]);
      continue;
    }
    auto psi = [&](int l, int j) -> int {
      if (k == 0 && g.inner(i, l).level() == 0) return 0;
      return g.inner(i, l).outer_values()[static_cast<std::size_t>(j)];
    };
    auto col = [&](int l) { return static_cast<std::size_t>(l - 1); };
    std::size_t f = L.arrows[col(a + 1)][static_cast<std::size_t>(psi(a + 1, 0))];
    for (int l = a + 2; l <= b; ++l) f = table(C.compose, f, L.arrows[col(l)][static_cast<std::size_t>(psi(l, 0))], "1-cell");
    key.push_back(f);
    for (int j = 1; j <= k; ++j) {
      std::optional<std::size_t> h;
      for (int l = a + 1; l <= b; ++l) {
        const int lo = psi(l, j - 1), hi = psi(l, j);
        std::size_t v;
        if (lo == hi) {
          v = C.id_cell[L.arrows[col(l)][static_cast<std::size_t>(lo)]];
        } else {
          v = L.cells[col(l)][static_cast<std::size_t>(lo)];
          for (int t = lo + 2; t <= hi; ++t) v = table(C.vertical, v, L.cells[col(l)][static_cast<std::size_t>(t - 1)], "vertical");
        }
        h = h ? table(C.horizontal, *h, v, "horizontal") : v;
      }
      key.push_back(*h);
    }
  }
  return key;
}

}  // namespace

ThetaPresheaf nerve(const Strict2Category& C, const ThetaCategory& cat) {
  if (cat.level() < 1 || cat.level() > 2) throw DomainError("nerves are built on Theta_1 and Theta_2");
  ThetaPresheaf F(cat);
  std::unordered_map<ThetaObject, std::vector<std::vector<std::size_t>>> keys;
  std::unordered_map<ThetaObject, std::map<std::vector<std::size_t>, std::size_t>> index;
  for (const auto& I : cat.objects()) {
    auto& list = keys[I];
    list = labelings(C, I);
    std::vector<std::string> names;
    auto& idx = index[I];
    for (std::size_t x = 0; x < list.size(); ++x) {
      names.push_back(labeling_name(C, I, list[x]));
      idx.emplace(list[x], x);
    }
    F.set_value(I, std::move(names));
  }
  F.build_actions([&](const ThetaMorphism& g) {
    std::vector<std::size_t> map;
    const auto& src_index = index.at(g.src());
    for (const auto& key : keys.at(g.tgt())) {
      const auto pulled = pull_back(C, g, decode(C, g.tgt(), key));
      auto it = src_index.find(pulled);
      if (it == src_index.end()) throw InvariantError("pulled back labeling is not a labeling");
      map.push_back(it->second);
    }
    return map;
  });
  return F;
}

// ---------------------------------------------------------------------------

namespace {

using Encoding = std::vector<std::size_t>;

struct RawSet {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> src, tgt;  // per dim, dim 0 empty
};

Encoding encode(const RawSet& s, const std::vector<std::vector<std::size_t>>& perm) {
  Encoding e(s.sizes.begin(), s.sizes.end());
  for (std::size_t d = 1; d < s.sizes.size(); ++d) {
    std::vector<std::pair<std::size_t, std::size_t>> cells(s.sizes[d]);
    for (std::size_t x = 0; x < s.sizes[d]; ++x)
      cells[perm[d][x]] = {perm[d - 1][s.src[d][x]], perm[d - 1][s.tgt[d][x]]};
    for (const auto& [a, b] : cells) {
      e.push_back(a);
      e.push_back(b);
    }
  }
  return e;
}

Encoding canonical(const RawSet& s) {
  const auto dims = s.sizes.size();
  std::vector<std::vector<std::size_t>> perm(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    perm[d].resize(s.sizes[d]);
    std::iota(perm[d].begin(), perm[d].end(), std::size_t{0});
  }
  Encoding best = encode(s, perm);
  std::function<void(std::size_t)> go = [&](std::size_t d) {
    if (d == dims) {
      best = std::min(best, encode(s, perm));
      return;
    }
    std::sort(perm[d].begin(), perm[d].end());
    do go(d + 1);
    while (std::next_permutation(perm[d].begin(), perm[d].end()));
  };
  go(0);
  return best;
}

const char* prefix(std::size_t d) {
  static const char* names[] = {"x", "f", "a", "p", "q"};
  return d < 5 ? names[d] : "c";
}

}  // namespace

std::vector<GlobularData> enumerate_globular_sets(const std::vector<int>& max_per_dim) {
  const auto dims = max_per_dim.size();
  if (dims == 0) throw DomainError("need at least dimension 0");
  std::set<Encoding> seen;
  std::vector<GlobularData> out;
  RawSet cur;
  cur.sizes.assign(dims, 0);
  cur.src.assign(dims, {});
  cur.tgt.assign(dims, {});

  auto emit = [&]() {
    const auto key = canonical(cur);
    if (!seen.insert(key).second) return;
    GlobularData data;
    data.cells.resize(dims);
    data.source.resize(dims);
    data.target.resize(dims);
    std::size_t pos = dims;
    for (std::size_t d = 0; d < dims; ++d) {
      for (std::size_t x = 0; x < key[d]; ++x) {
        data.cells[d].push_back(prefix(d) + std::to_string(x));
        if (d > 0) {
          data.source[d].push_back(key[pos++]);
          data.target[d].push_back(key[pos++]);
        }
      }
    }
    out.push_back(std::move(data));
  };

  std::function<void(std::size_t)> dim = [&](std::size_t d) {
    if (d == dims) {
      emit();
      return;
    }
    const std::size_t below = d == 0 ? 1 : cur.sizes[d - 1];
    const std::size_t limit = below == 0 ? 0 : static_cast<std::size_t>(max_per_dim[d]);
    // Boundary pairs allowed in dimension d.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (d > 0)
      for (std::size_t a = 0; a < cur.sizes[d - 1]; ++a)
        for (std::size_t b = 0; b < cur.sizes[d - 1]; ++b) {
          if (d >= 2 && (cur.src[d - 1][a] != cur.src[d - 1][b] || cur.tgt[d - 1][a] != cur.tgt[d - 1][b])) continue;
          pairs.emplace_back(a, b);
        }
    for (std::size_t size = 0; size <= limit; ++size) {
      cur.sizes[d] = size;
      if (d == 0) {
        dim(1);
        continue;
      }
      // Cells in nondecreasing pair order; the rest is up to relabeling.
      std::vector<std::size_t> choice;
      std::function<void(std::size_t)> pick = [&](std::size_t from) {
        if (choice.size() == size) {
          cur.src[d].clear();
          cur.tgt[d].clear();
          for (auto c : choice) {
            cur.src[d].push_back(pairs[c].first);
            cur.tgt[d].push_back(pairs[c].second);
          }
          dim(d + 1);
          return;
        }
        for (std::size_t c = from; c < pairs.size(); ++c) {
          choice.push_back(c);
          pick(c);
          choice.pop_back();
        }
      };
      if (size == 0 || !pairs.empty()) pick(0);
    }
    cur.sizes[d] = 0;
    cur.src[d].clear();
    cur.tgt[d].clear();
  };
  dim(0);
  return out;
}

std::vector<std::pair<std::string, GlobularSet>> globular_corpus() {
  auto make = [](std::vector<std::vector<std::string>> cells, std::vector<std::vector<std::size_t>> src,
                 std::vector<std::vector<std::size_t>> tgt) {
    return make_globular_set(GlobularData{std::move(cells), std::move(src), std::move(tgt)});
  };
  std::vector<std::pair<std::string, GlobularSet>> out;
  out.emplace_back("point", make({{"x"}, {}, {}}, {{}, {}, {}}, {{}, {}, {}}));
  out.emplace_back("arrow", make({{"x", "y"}, {"f"}, {}}, {{}, {0}, {}}, {{}, {1}, {}}));
  out.emplace_back("loop", make({{"x"}, {"f"}, {}}, {{}, {0}, {}}, {{}, {0}, {}}));
  out.emplace_back("one_cell_each", make({{"c0"}, {"c1"}, {"c2"}}, {{}, {0}, {0}}, {{}, {0}, {0}}));
  out.emplace_back("two_cell", make({{"x", "y"}, {"f", "g"}, {"a"}}, {{}, {0, 0}, {0}}, {{}, {1, 1}, {1}}));
  out.emplace_back("small_2d",
                   make({{"x", "y"}, {"f", "g", "u"}, {"a", "b"}}, {{}, {0, 0, 0}, {0, 2}}, {{}, {1, 1, 0}, {1, 2}}));
  out.emplace_back("vertical_pair",
                   make({{"x", "y"}, {"f", "g", "h"}, {"a", "b"}}, {{}, {0, 0, 0}, {0, 1}}, {{}, {1, 1, 1}, {1, 2}}));
  out.emplace_back("interchange", make({{"x", "y", "z"}, {"f", "g", "h", "k"}, {"a", "b"}},
                                       {{}, {0, 0, 1, 1}, {0, 2}}, {{}, {1, 1, 2, 2}, {1, 3}}));
  return out;
}

ThetaPresheaf representable(const ThetaCategory& cat, const ThetaObject& target) {
  ThetaPresheaf F(cat);
  std::map<ThetaObject, std::vector<ThetaMorphism>> homs;
  for (const auto& obj : cat.objects()) {
    homs[obj] = cat.hom(obj, target);
    std::vector<std::string> names;
    for (const auto& h : homs[obj]) names.push_back(h.to_string());
    F.set_value(obj, std::move(names));
  }
  for (const auto& a : cat.objects())
    for (const auto& b : cat.objects())
      for (const auto& f : cat.hom(a, b)) {
        std::vector<std::size_t> map;
        const auto& list = homs[a];
        for (const auto& h : homs[b])
          map.push_back(static_cast<std::size_t>(std::find(list.begin(), list.end(), compose(h, f)) - list.begin()));
        F.set_action(f, std::move(map));
      }
  return F;
}

GlobularSet one_cell_each(int n) {
  GlobularData data;
  for (int k = 0; k <= n; ++k) {
    data.cells.push_back({"c" + std::to_string(k)});
    data.source.push_back(k == 0 ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});
    data.target.push_back(k == 0 ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});
  }
  return make_globular_set(data);
}

}  // namespace thetakit::oracle
