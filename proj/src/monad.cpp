#include "thetakit/monad.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "thetakit/error.hpp"
#include "thetakit/json_io.hpp"

namespace thetakit {

namespace {

// The family of X over the cells of `sub`, read off a family over the cells
// of `obj` along the inert map i : sub -> obj.
std::vector<std::size_t> restrict_family(const ThetaMorphism& i, const std::vector<std::size_t>& family) {
  const auto& tgt_cells = cells_of(i.tgt());
  std::vector<std::size_t> out;
  for (const auto& c : cells_of(i.src()).cells()) out.push_back(family[*tgt_cells.index_of(compose(i, c.map))]);
  return out;
}

std::size_t top_cell(const ThetaObject& globe_obj, int k) { return cells_of(globe_obj).cells_of_dim(k).front(); }

}  // namespace

std::map<int, std::size_t> FreeValue::grade_counts() const {
  std::map<int, std::size_t> out;
  for (const auto& e : elements) ++out[e.grade()];
  return out;
}

FreeValue free_value(const GlobularSet& X, int k, const std::vector<ThetaObject>& shapes) {
  const int n = X.index().n;
  if (k < 0 || k > n) throw DomainError("free value needs 0 <= k <= n");
  FreeValue v{n, k, {}};
  for (const auto& J : shapes) {
    if (J.level() != k) throw DomainError("shape " + J.to_string() + " is not in Theta_" + std::to_string(k));
    const auto K = iota_pow(J, n - k);
    if (!active_from_globe(k, K)) throw InvariantError("no active map from the globe into " + K.to_string());
    const auto cones = cell_limit(X, K);
    for (std::size_t f = 0; f < cones.size(); ++f) v.elements.push_back({K, f});
  }
  return v;
}

FreeValue free_value(const GlobularSet& X, int k, int bound) { return free_value(X, k, enum_theta_objects(k, bound)); }

FreeValue free_value_via_kan(const GlobularSet& X, int k, int bound) {
  const int n = X.index().n;
  const auto F = segal_extend(X, bound);
  FreeValue v{n, k, {}};
  for (const auto& [a, x] : left_kan_elements(F, globe(n, k), bound)) v.elements.push_back({a.tgt(), x});
  return v;
}

nlohmann::json to_json(const FreeValue& v, const GlobularSet& X) {
  nlohmann::json out = nlohmann::json::array();
  std::unordered_map<ThetaObject, ConeSet> cones;
  for (const auto& e : v.elements) {
    auto it = cones.find(e.shape);
    if (it == cones.end()) it = cones.emplace(e.shape, cell_limit(X, e.shape)).first;
    const auto& fam = it->second.families.at(e.family);
    const auto& cells = cells_of(e.shape).cells();
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t c = 0; c < fam.size(); ++c) labels.push_back(X.name(cells[c].dim, fam[c]));
    out.push_back({{"shape", to_json(lower_to(e.shape, v.k))}, {"grade", e.grade()}, {"labels", labels}});
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_compatible_family(const ThetaObject& J, const std::vector<ThetaMorphism>& pieces) {
  const auto& cells = cells_of(J);
  if (pieces.size() != cells.size()) return false;
  const int level = J.level();
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (pieces[c].src() != globe(level, cells.cells()[c].dim) || !pieces[c].is_active()) return false;
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = 0; b < cells.size(); ++b)
      if (a != b && cells.order().leq(a, b) &&
          act_pullback(gamma_embed(level, *cells.arrow(a, b)), pieces[b]) != pieces[a])
        return false;
  return true;
}

std::vector<ThetaMorphism> act_restrictions(const ThetaMorphism& f) {
  std::vector<ThetaMorphism> out;
  for (const auto& c : cells_of(f.src()).cells()) out.push_back(act_pullback(c.map, f));
  return out;
}

ThetaMorphism subst(const ThetaObject& J, const std::vector<ThetaMorphism>& pieces) {
  if (!is_compatible_family(J, pieces)) throw DomainError("incompatible family of active maps over " + J.to_string());
  int conservative = 0;
  for (const auto& p : pieces) conservative += p.tgt().cell_count();
  // The glued grade is exact; the conservative bound is only a sanity check.
  const int grade = glued_grade(J, pieces);
  if (grade > conservative) throw InvariantError("glued grade exceeds the conservative bound at " + J.to_string());
  const auto& act = act_out(J, grade);
  auto it = act.entries.find(grade);
  if (it == act.entries.end()) throw BoundError("no active map out of " + J.to_string() + " of grade " + std::to_string(grade));
  std::optional<ThetaMorphism> found;
  for (const auto& f : it->second) {
    if (act_restrictions(f) != pieces) continue;
    if (found) throw InvariantError("two active maps out of " + J.to_string() + " restrict to the same family");
    found = f;
  }
  if (!found) throw BoundError("no active map out of " + J.to_string() + " restricts to the family");
  return *found;
}

// ---------------------------------------------------------------------------

FreeModel::FreeModel(GlobularSet base, int bound, std::optional<DimensionBudget> budget)
    : level_(base.index().n),
      bound_(bound),
      base_(std::move(base)),
      value_(GlobularCategory{level_}),
      budget_(std::move(budget)) {
  auto limit = [&](const ThetaObject& K) {
    if (!budget_) return cell_limit(base_, K);
    const auto& cells = cells_of(K);
    LimitBudget b{{}, budget_->budget};
    for (const auto& c : cells.cells()) b.weights.push_back(budget_->weights.at(static_cast<std::size_t>(c.dim)));
    return finite_limit(cell_diagram(base_, cells), &b);
  };
  elements_.resize(static_cast<std::size_t>(level_ + 1));
  offsets_.resize(static_cast<std::size_t>(level_ + 1));
  for (int k = 0; k <= level_; ++k) {
    std::vector<std::string> names;
    std::vector<int> grades;
    auto& elems = elements_[static_cast<std::size_t>(k)];
    for (const auto& J : enum_theta_objects(k, bound)) {
      const auto K = iota_pow(J, level_ - k);
      auto it = cones_.find(K);
      if (it == cones_.end()) it = cones_.emplace(K, limit(K)).first;
      offsets_[static_cast<std::size_t>(k)].emplace(K, elems.size());
      const auto& cells = cells_of(K).cells();
      for (std::size_t f = 0; f < it->second.size(); ++f) {
        std::vector<std::string> parts;
        const auto& fam = it->second.families[f];
        for (std::size_t c = 0; c < fam.size(); ++c) parts.push_back(base_.name(cells[c].dim, fam[c]));
        names.push_back(J.to_string() + family_name(parts));
        grades.push_back(K.cell_count());
        elems.push_back({K, f});
      }
    }
    value_.set_value(k, std::move(names), std::move(grades));
  }
  for (int k = 0; k <= level_; ++k)
    for (int j = 0; j <= k; ++j)
      for (const auto& g : enum_glob_hom(j, k)) {
        const auto gg = gamma_embed(level_, g);
        std::vector<std::size_t> map;
        for (std::size_t i = 0; i < elements(k).size(); ++i) {
          const auto& e = element(k, i);
          const auto fac = factorize(compose(*active_from_globe(k, e.shape), gg));
          const auto image = find_labels(j, fac.active.tgt(), restrict_family(fac.inert, labels(k, i)));
          if (!image) throw InvariantError("structure map leaves the truncation at " + e.shape.to_string());
          map.push_back(*image);
        }
        value_.set_action(g, std::move(map));
      }
}

std::optional<std::size_t> FreeModel::find(int k, const FreeElement& e) const {
  const auto& offs = offsets_.at(static_cast<std::size_t>(k));
  auto it = offs.find(e.shape);
  if (it == offs.end() || e.family >= cones_.at(e.shape).size()) return std::nullopt;
  return it->second + e.family;
}

std::optional<std::size_t> FreeModel::find_labels(int k, const ThetaObject& shape,
                                                  const std::vector<std::size_t>& labels) const {
  auto it = cones_.find(shape);
  if (it == cones_.end()) return std::nullopt;
  const auto f = it->second.index_of(labels);
  if (!f) return std::nullopt;
  return find(k, {shape, *f});
}

const std::vector<std::size_t>& FreeModel::labels(int k, std::size_t i) const {
  const auto& e = element(k, i);
  return cones_.at(e.shape).families.at(e.family);
}

std::size_t FreeModel::unit(int k, std::size_t x) const {
  const auto C = globe(level_, k);
  if (C.cell_count() > bound_) throw BoundError("the bound is below the size of the " + std::to_string(k) + "-globe");
  const auto top = top_cell(C, k);
  const auto& cones = cones_.at(C);
  for (std::size_t f = 0; f < cones.size(); ++f)
    if (cones.families[f][top] == x) return *find(k, {C, f});
  throw InvariantError("no cone over the globe with top cell " + std::to_string(x));
}

std::optional<std::size_t> FreeModel::counit_on_globes(int k, std::size_t i) const {
  const auto& e = element(k, i);
  if (e.shape != globe(level_, k)) return std::nullopt;
  return labels(k, i)[top_cell(e.shape, k)];
}

// ---------------------------------------------------------------------------

std::size_t mult(const FreeModel& inner, const FreeModel& outer, int k, std::size_t w) {
  const auto& X = inner.base();
  for (int d = 0; d <= inner.level(); ++d)
    if (outer.base().size(d) != inner.value().size(d)) throw DomainError("mult: outer model is not built over the inner one");

  const auto& e = outer.element(k, w);
  const auto& L = outer.labels(k, w);
  const auto& J_cells = cells_of(e.shape).cells();
  std::vector<ThetaMorphism> pieces;
  for (std::size_t a = 0; a < J_cells.size(); ++a)
    pieces.push_back(*active_from_globe(J_cells[a].dim, inner.element(J_cells[a].dim, L[a]).shape));

  const auto f = subst(e.shape, pieces);
  const auto& K = f.tgt();
  if (K.cell_count() > inner.bound())
    throw BoundError("flattened shape " + K.to_string() + " exceeds the bound " + std::to_string(inner.bound()));

  // Each cell of K is labelled through every object of its comma category;
  // contractibility of the comma makes the answers agree.
  const auto fiber = active_fiber(f);
  const auto& K_cells = *fiber.target;
  std::vector<std::size_t> family(K_cells.size());
  for (std::size_t eps = 0; eps < K_cells.size(); ++eps) {
    std::optional<std::size_t> label;
    for (auto u : comma_under(fiber, eps)) {
      const auto [alpha, c] = fiber.nodes[u];
      const auto& x_alpha = inner.labels(J_cells[alpha].dim, L[alpha]);
      const auto value = X.apply(*K_cells.arrow(eps, fiber.image[u]), x_alpha[c]);
      if (label && *label != value)
        throw InvariantError("comma objects disagree on the label of a cell of " + K.to_string());
      label = value;
    }
    if (!label) throw InvariantError("empty comma category over a cell of " + K.to_string());
    family[eps] = *label;
  }
  const auto out = inner.find_labels(k, K, family);
  if (!out) throw InvariantError("flattened labels are not a cone over " + K.to_string());
  return *out;
}

std::optional<std::size_t> free_map(const FreeModel& from, const FreeModel& to,
                                    const std::vector<std::vector<std::optional<std::size_t>>>& h, int k,
                                    std::size_t i) {
  const auto& e = from.element(k, i);
  const auto& fam = from.labels(k, i);
  const auto& cells = cells_of(e.shape).cells();
  std::vector<std::size_t> image;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& hd = h.at(static_cast<std::size_t>(cells[c].dim));
    if (fam[c] >= hd.size() || !hd[fam[c]]) return std::nullopt;
    image.push_back(*hd[fam[c]]);
  }
  return to.find_labels(k, e.shape, image);
}

// ---------------------------------------------------------------------------

BetaTransport beta_transport(const GlobularSet& X) {
  const int top = X.index().n;
  if (top < 1) throw DomainError("beta transport needs a globular set of dimension at least 1");
  BetaTransport t{top - 1, X, GlobularSet(GlobularCategory{top - 1}), true};
  for (int i = 0; i < top; ++i) t.slice.set_value(i, X.names(beta_object({1, i})));
  const auto id1 = GlobMorphism::identity(1);
  for (int k = 0; k < top; ++k)
    for (int j = 0; j <= k; ++j)
      for (const auto& g : enum_glob_hom(j, k)) {
        t.slice.set_action(g, X.action(beta_morphism({id1, g})));
        const auto& base_map = X.action(beta_morphism({GlobMorphism::identity(0), g}));
        if (!detail::is_bijection(base_map, X.size(beta_object({0, j})))) t.reduced = false;
      }
  return t;
}

IteratedValue iterated_free_value(const BetaTransport& t, int k, const std::vector<ThetaObject>& slice_shapes,
                                  int max_length, int bound) {
  const auto& X = t.base;
  IteratedValue v;
  v.k = k;
  v.slice_value = free_value(t.slice, k, slice_shapes);
  const GlobMorphism s{0, 1, Polarity::Source}, tt{0, 1, Polarity::Target};
  std::unordered_map<ThetaObject, ConeSet> cones;
  for (const auto& e : v.slice_value.elements) {
    auto it = cones.find(e.shape);
    if (it == cones.end()) it = cones.emplace(e.shape, cell_limit(t.slice, e.shape)).first;
    const auto& fam = it->second.families[e.family];
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (auto c : cells_of(e.shape).cells_of_dim(0)) {
      const std::pair<std::size_t, std::size_t> here{X.apply(s, fam[c]), X.apply(tt, fam[c])};
      if (ends && *ends != here) throw InvariantError("0-cells of a slice element have different endpoints");
      ends = here;
    }
    v.endpoints.push_back(*ends);
  }

  if (bound >= 1)
    for (std::size_t x = 0; x < X.size(0); ++x) v.elements.push_back({{}, x, 1});
  std::vector<std::size_t> seq;
  std::function<void(int)> extend = [&](int grade) {
    if (!seq.empty()) v.elements.push_back({seq, 0, grade});
    if (static_cast<int>(seq.size()) == max_length) return;
    for (std::size_t p = 0; p < v.slice_value.size(); ++p) {
      if (!seq.empty() && v.endpoints[seq.back()].second != v.endpoints[p].first) continue;
      const int next = grade + 1 + v.slice_value.elements[p].grade();
      if (next > bound) continue;
      seq.push_back(p);
      extend(next);
      seq.pop_back();
    }
  };
  extend(1);
  return v;
}

// ---------------------------------------------------------------------------

nlohmann::json MonadLawReport::to_json() const {
  return {{"ok", ok}, {"left_unit", left}, {"right_unit", right}, {"associativity", assoc}, {"skipped", skipped},
          {"failures", failures}};
}

namespace {

// The flattened size of a nested element in dimension one is 1 plus the sum
// over its 1-cells of (flattened size - 1).
std::optional<DimensionBudget> flat_budget(int n, int bound, const std::vector<int>& flat_sizes_dim1, std::size_t dim0) {
  if (n != 1) return std::nullopt;
  DimensionBudget b{{std::vector<int>(dim0, 0), {}}, bound - 1};
  for (int s : flat_sizes_dim1) b.weights[1].push_back(s - 1);
  return b;
}

}  // namespace

MonadLawReport check_monad_laws(const GlobularSet& X, int bound, std::size_t sample, unsigned seed) {
  MonadLawReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    if (report.failures.size() < 20) report.failures.push_back(std::move(msg));
  };
  const int n = X.index().n;
  const auto dim1 = static_cast<int>(std::min(n, 1));
  FreeModel T(X, bound, flat_budget(n, bound, std::vector<int>(X.size(dim1), 3), X.size(0)));
  FreeModel TT(T.value(), bound, flat_budget(n, bound, T.value().grades(dim1), X.size(0)));
  std::vector<std::vector<std::optional<std::size_t>>> eta(static_cast<std::size_t>(n + 1)), mu(eta);
  std::vector<int> flat_tt;
  for (int d = 0; d <= n; ++d) {
    for (std::size_t x = 0; x < X.size(d); ++x) eta[static_cast<std::size_t>(d)].push_back(T.unit(d, x));
    for (std::size_t w = 0; w < TT.elements(d).size(); ++w) {
      std::optional<std::size_t> m;
      try {
        m = mult(T, TT, d, w);
      } catch (const BoundError&) {
      }
      mu[static_cast<std::size_t>(d)].push_back(m);
      if (d == 1) flat_tt.push_back(m ? T.element(1, *m).grade() : bound + 1);
    }
  }
  FreeModel TTT(TT.value(), bound, flat_budget(n, bound, flat_tt, X.size(0)));
  std::mt19937 rng(seed);
  auto pick = [&](std::size_t size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    if (sample && size > sample) {
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(sample);
      std::sort(idx.begin(), idx.end());
    }
    return idx;
  };
  for (int k = 0; k <= n; ++k) {
    const auto tag = " at C" + std::to_string(k) + " element ";
    for (auto t : pick(T.elements(k).size())) {
      ++report.left;
      if (mult(T, TT, k, TT.unit(k, t)) != t) fail("left unit fails" + tag + T.value().name(k, t));
      ++report.right;
      const auto lifted = free_map(T, TT, eta, k, t);
      if (!lifted || mult(T, TT, k, *lifted) != t) fail("right unit fails" + tag + T.value().name(k, t));
    }
    for (auto w : pick(TTT.elements(k).size())) {
      std::optional<std::size_t> middle, rhs;
      try {
        middle = mult(TT, TTT, k, w);
        rhs = mult(T, TT, k, *middle);
      } catch (const BoundError&) {
        ++report.skipped;
        continue;
      }
      ++report.assoc;
      const auto inner = free_map(TTT, TT, mu, k, w);
      if (!inner || mult(T, TT, k, *inner) != *rhs) fail("associativity fails" + tag + TTT.value().name(k, w));
    }
  }
  return report;
}

}  // namespace thetakit
