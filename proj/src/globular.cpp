#include <algorithm>

#include "memo.hpp"
#include "thetakit/error.hpp"
#include "thetakit/globular.hpp"

namespace thetakit {

std::string GlobMorphism::to_string() const {
  if (is_identity()) return "id_C" + std::to_string(src);
  return std::string(polarity == Polarity::Source ? "s" : "t") + ":C" + std::to_string(src) + "->C" +
         std::to_string(tgt);
}

GlobMorphism compose(const GlobMorphism& g, const GlobMorphism& f) {
  if (f.tgt != g.src) throw DomainError("cannot compose globular " + g.to_string() + " after " + f.to_string());
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  return {f.src, g.tgt, f.polarity};
}

std::vector<GlobMorphism> enum_glob_hom(int j, int k) {
  if (j > k) return {};
  if (j == k) return {GlobMorphism::identity(j)};
  return {{j, k, Polarity::Source}, {j, k, Polarity::Target}};
}

ThetaObject gamma_embed(int level, int k) { return globe(level, k); }

ThetaMorphism gamma_embed(int level, const GlobMorphism& g) {
  if (g.src < 0 || g.src > g.tgt || g.tgt > level) throw DomainError("globular morphism outside G_" + std::to_string(level));
  if (g.is_identity()) return ThetaMorphism::identity(globe(level, g.src));
  if (g.src == 0)
    return ThetaMorphism(globe(level, 0), globe(level, g.tgt), {g.polarity == Polarity::Source ? 0 : 1}, {});
  return sigma(gamma_embed(level - 1, GlobMorphism{g.src - 1, g.tgt - 1, g.polarity}));
}

std::optional<GlobMorphism> gamma_preimage(const ThetaMorphism& f) {
  auto j = globe_dimension(f.src());
  auto k = globe_dimension(f.tgt());
  if (!j || !k) return std::nullopt;
  for (const auto& g : enum_glob_hom(*j, *k))
    if (gamma_embed(f.level(), g) == f) return g;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<ThetaMorphism> inert_cells(const ThetaObject& obj, int k) {
  const int level = obj.level();
  if (k < 0 || k > level) throw DomainError("no " + std::to_string(k) + "-cells at level " + std::to_string(level));
  std::vector<ThetaMorphism> out;
  if (level == 0) {
    out.push_back(ThetaMorphism::identity(obj));
    return out;
  }
  const int m = obj.length();
  if (k == 0) {
    for (int v = 0; v <= m; ++v) out.emplace_back(globe(level, 0), obj, std::vector<int>{v}, ThetaMorphism::Rows{});
    return out;
  }
  for (int v = 0; v < m; ++v)
    for (auto& inner : inert_cells(obj.children()[static_cast<std::size_t>(v)], k - 1))
      out.emplace_back(globe(level, k), obj, std::vector<int>{v, v + 1}, ThetaMorphism::Rows{{std::move(inner)}});
  return out;
}

CellCategory::CellCategory(ThetaObject base) : base_(base) {
  for (int k = 0; k <= base.level(); ++k) {
    auto maps = inert_cells(base, k);
    std::sort(maps.begin(), maps.end());
    for (auto& m : maps) cells_.push_back({k, std::move(m)});
  }
  const std::size_t n = cells_.size();
  order_ = FinitePoset(n);
  arrows_.assign(n * n, std::nullopt);
  for (std::size_t a = 0; a < n; ++a) {
    index_.emplace(cells_[a].map, a);
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& g : enum_glob_hom(cells_[a].dim, cells_[b].dim))
        if (compose(cells_[b].map, gamma_embed(base.level(), g)) == cells_[a].map) {
          order_.set_leq(a, b);
          arrows_[a * n + b] = g;
        }
  }
}

std::optional<GlobMorphism> CellCategory::arrow(std::size_t a, std::size_t b) const { return arrows_[a * size() + b]; }

std::optional<std::size_t> CellCategory::index_of(const ThetaMorphism& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> CellCategory::cells_of_dim(int dim) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].dim == dim) out.push_back(i);
  return out;
}

const CellCategory& cells_of(const ThetaObject& obj) {
  static detail::MemoTable<ThetaObject, CellCategory> memo;
  return memo.get(obj, [&] { return CellCategory(obj); });
}

// ---------------------------------------------------------------------------

ThetaMorphism ActiveFiber::transition(std::size_t alpha, std::size_t alpha2) const {
  auto xi = source->arrow(alpha, alpha2);
  if (!xi) throw DomainError("no arrow between the given cells");
  return factorize(compose(parts[alpha2].active, gamma_embed(f.level(), *xi))).inert;
}

ActiveFiber active_fiber(const ThetaMorphism& f) {
  if (!f.is_active()) throw DomainError("active_fiber needs an active map, got " + f.to_string());
  ActiveFiber out{f, &cells_of(f.src()), &cells_of(f.tgt()), {}, {}, {}, {}};
  const auto& src_cells = out.source->cells();
  for (const auto& alpha : src_cells) out.parts.push_back(factorize(compose(f, alpha.map)));

  std::vector<std::size_t> first_node(src_cells.size());
  for (std::size_t a = 0; a < src_cells.size(); ++a) {
    first_node[a] = out.nodes.size();
    const auto& fiber = cells_of(out.parts[a].active.tgt());
    for (std::size_t c = 0; c < fiber.size(); ++c) {
      out.nodes.push_back({a, c});
      auto idx = out.target->index_of(compose(out.parts[a].inert, fiber.cells()[c].map));
      if (!idx) throw InvariantError("composite of inert maps is not a cell of the target");
      out.image.push_back(*idx);
    }
  }

  out.order = FinitePoset(out.nodes.size());
  for (std::size_t a = 0; a < src_cells.size(); ++a)
    for (std::size_t a2 = 0; a2 < src_cells.size(); ++a2) {
      if (a == a2 || !out.source->order().leq(a, a2)) continue;
      const auto t = out.transition(a, a2);
      const auto& fib = cells_of(out.parts[a].active.tgt());
      const auto& fib2 = cells_of(out.parts[a2].active.tgt());
      for (std::size_t c = 0; c < fib.size(); ++c) {
        auto moved = fib2.index_of(compose(t, fib.cells()[c].map));
        if (!moved) throw InvariantError("transition does not carry cells to cells");
        for (std::size_t c2 = 0; c2 < fib2.size(); ++c2)
          if (fib2.order().leq(*moved, c2)) out.order.set_leq(first_node[a] + c, first_node[a2] + c2);
      }
    }
  for (std::size_t a = 0; a < src_cells.size(); ++a) {
    const auto& fib = cells_of(out.parts[a].active.tgt());
    for (std::size_t c = 0; c < fib.size(); ++c)
      for (std::size_t c2 = 0; c2 < fib.size(); ++c2)
        if (fib.order().leq(c, c2)) out.order.set_leq(first_node[a] + c, first_node[a] + c2);
  }
  return out;
}

std::vector<std::size_t> comma_under(const ActiveFiber& fiber, std::size_t e) {
  std::vector<std::size_t> under;
  for (std::size_t x = 0; x < fiber.nodes.size(); ++x)
    if (fiber.target->order().leq(e, fiber.image[x])) under.push_back(x);
  return under;
}

CofinalityCertificate check_cofinal_via_initial(const ActiveFiber& fiber) {
  CofinalityCertificate cert;
  for (std::size_t e = 0; e < fiber.target->size(); ++e) {
    auto init = fiber.order.minimum(comma_under(fiber, e));
    cert.initial.push_back(init);
    if (!init) {
      cert.ok = false;
      cert.failures.push_back(e);
    }
  }
  return cert;
}

CommaContractibility check_cofinal_via_contractibility(const ActiveFiber& fiber) {
  CommaContractibility out;
  for (std::size_t e = 0; e < fiber.target->size(); ++e)
    if (!nerve_contractibility(fiber.order.subposet(comma_under(fiber, e))).contractible) {
      out.ok = false;
      out.failures.push_back(e);
    }
  return out;
}

// ---------------------------------------------------------------------------

LambdaPoset lambda_poset(int level, int j) {
  if (level < 1 || j < 0) throw DomainError("lambda_poset needs level >= 1 and j >= 0");
  LambdaPoset out;
  out.j = j;
  for (int i = 0; i <= j; ++i) {
    out.elements.emplace_back(i, i);
    if (i < j) out.elements.emplace_back(i, i + 1);
  }
  out.order = FinitePoset(out.elements.size());
  for (std::size_t x = 0; x < out.elements.size(); ++x)
    for (std::size_t y = 0; y < out.elements.size(); ++y) {
      auto [a, b] = out.elements[x];
      auto [a2, b2] = out.elements[y];
      if (a <= a2 && a2 <= b2 && b2 <= b) out.order.set_leq(x, y);
    }

  const ThetaObject column = globe(level - 1, level - 1);
  out.base = ThetaObject::make(level, std::vector<ThetaObject>(static_cast<std::size_t>(j), column));
  const auto& cells = cells_of(out.base);
  for (auto [a, b] : out.elements) {
    std::optional<std::size_t> idx;
    if (a == b)
      idx = cells.index_of(ThetaMorphism(globe(level, 0), out.base, {a}, {}));
    else
      idx = cells.index_of(ThetaMorphism(globe(level, level), out.base, {a, b}, {{ThetaMorphism::identity(column)}}));
    if (!idx) throw InvariantError("lambda element does not name a cell");
    out.to_cells.push_back(*idx);
  }
  return out;
}

std::vector<std::size_t> lambda_comma_failures(const LambdaPoset& lambda) {
  const auto& cells = cells_of(lambda.base);
  std::vector<std::size_t> failures;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<std::size_t> over;
    for (std::size_t x = 0; x < lambda.elements.size(); ++x)
      if (cells.order().leq(c, lambda.to_cells[x])) over.push_back(x);
    if (!nerve_contractibility(lambda.order.subposet(over)).contractible) failures.push_back(c);
  }
  return failures;
}

// ---------------------------------------------------------------------------

GlobPairMorphism compose(const GlobPairMorphism& g, const GlobPairMorphism& f) {
  return {compose(g.first, f.first), compose(g.second, f.second)};
}

GlobPairObject alpha_object(int i) {
  if (i < 0) throw DomainError("negative globe dimension");
  return i == 0 ? GlobPairObject{0, 0} : GlobPairObject{1, i - 1};
}

namespace {

GlobPairMorphism alpha_generator(const GlobMorphism& g) {
  if (g.tgt == 1) return {g, GlobMorphism::identity(0)};
  return {GlobMorphism::identity(1), GlobMorphism{g.src - 1, g.tgt - 1, g.polarity}};
}

}  // namespace

GlobPairMorphism alpha_morphism(const GlobMorphism& g) {
  if (g.is_identity()) {
    auto [a, b] = alpha_object(g.src);
    return {GlobMorphism::identity(a), GlobMorphism::identity(b)};
  }
  std::vector<GlobMorphism> word;
  word.push_back(GlobMorphism::generator(g.src + 1, g.polarity));
  for (int i = g.src + 2; i <= g.tgt; ++i) word.push_back(GlobMorphism::generator(i, Polarity::Source));
  return alpha_word(word);
}

GlobPairMorphism alpha_word(const std::vector<GlobMorphism>& word) {
  if (word.empty()) throw DomainError("alpha_word needs a nonempty word");
  GlobPairMorphism out = alpha_generator(word.front());
  for (std::size_t i = 1; i < word.size(); ++i) out = compose(alpha_generator(word[i]), out);
  return out;
}

int beta_object(const GlobPairObject& obj) { return obj.first == 0 ? 0 : obj.second + 1; }

GlobMorphism beta_morphism(const GlobPairMorphism& g) {
  const auto& [g1, g2] = g;
  if (g1.tgt == 0) return GlobMorphism::identity(0);
  if (g1.src == 1) return g2.is_identity() ? GlobMorphism::identity(g2.src + 1) : GlobMorphism{g2.src + 1, g2.tgt + 1, g2.polarity};
  return {0, g2.tgt + 1, g1.polarity};
}

std::pair<int, ThetaObject> gamma_1n(int n, int i) {
  auto [a, b] = alpha_object(i);
  return {a, globe(n, b)};
}

}  // namespace thetakit
