#include <algorithm>

#include "memo.hpp"
#include "thetakit/error.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

namespace {

using detail::MemoTable;
using detail::PairHash;

// Objects of the given level with at most `budget` cells, sorted by cell count.
const std::vector<ThetaObject>& objects_by_cells(int level, int budget);

void extend_children(int level, int m, int budget, std::vector<ThetaObject>& prefix, std::vector<ThetaObject>& out) {
  if (static_cast<int>(prefix.size()) == m) {
    out.push_back(ThetaObject::make(level, prefix));
    return;
  }
  const int reserve = m - static_cast<int>(prefix.size()) - 1;
  const int room = budget - reserve;
  if (room < 1) return;
  for (const auto& child : objects_by_cells(level - 1, room)) {
    prefix.push_back(child);
    extend_children(level, m, budget - child.cell_count(), prefix, out);
    prefix.pop_back();
  }
}

const std::vector<ThetaObject>& objects_by_cells(int level, int budget) {
  static MemoTable<std::pair<int, int>, std::vector<ThetaObject>, PairHash> memo;
  return memo.get({level, budget}, [&] {
    std::vector<ThetaObject> out;
    if (budget < 1) return out;
    if (level == 0) {
      out.push_back(ThetaObject::point());
      return out;
    }
    for (int m = 0; 2 * m + 1 <= budget; ++m) {
      std::vector<ThetaObject> prefix;
      extend_children(level, m, budget - (m + 1), prefix, out);
    }
    std::sort(out.begin(), out.end());
    return out;
  });
}

void window_rec(int level, const std::vector<int>& widths, std::size_t depth, std::vector<ThetaObject>& out);

std::vector<ThetaObject> window_objects(int level, const std::vector<int>& widths, std::size_t depth) {
  std::vector<ThetaObject> out;
  window_rec(level, widths, depth, out);
  return out;
}

void window_rec(int level, const std::vector<int>& widths, std::size_t depth, std::vector<ThetaObject>& out) {
  if (level == 0) {
    out.push_back(ThetaObject::point());
    return;
  }
  if (depth >= widths.size()) throw BoundError("window does not bound level " + std::to_string(level));
  const auto children = window_objects(level - 1, widths, depth + 1);
  for (int m = 0; m <= widths[depth]; ++m) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<ThetaObject> seq;
      seq.reserve(idx.size());
      for (auto k : idx) seq.push_back(children[k]);
      out.push_back(ThetaObject::make(level, std::move(seq)));
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == children.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
}

}  // namespace

const std::vector<ThetaObject>& enum_theta_objects(int level, int max_cells) {
  if (level < 0) throw DomainError("negative level");
  return objects_by_cells(level, max_cells);
}

std::vector<ThetaObject> enum_theta_objects_window(int level, const std::vector<int>& widths) {
  auto out = window_objects(level, widths, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool in_window(const ThetaObject& obj, const std::vector<int>& widths) {
  if (obj.level() == 0 || widths.empty()) return true;
  if (obj.length() > widths.front()) return false;
  const std::vector<int> rest(widths.begin() + 1, widths.end());
  return std::all_of(obj.children().begin(), obj.children().end(),
                     [&](const ThetaObject& c) { return in_window(c, rest); });
}

// ---------------------------------------------------------------------------

const std::vector<ThetaMorphism>& enum_theta_hom(const ThetaObject& src, const ThetaObject& tgt) {
  static MemoTable<std::pair<ThetaObject, ThetaObject>, std::vector<ThetaMorphism>, PairHash> memo;
  if (src.level() != tgt.level()) throw DomainError("hom between different levels");
  return memo.get({src, tgt}, [&] {
    std::vector<ThetaMorphism> out;
    if (src.level() == 0) {
      out.push_back(ThetaMorphism::identity(src));
      return out;
    }
    const int m = src.length();
    for (const auto& phi : enum_hom_simplex(m, tgt.length())) {
      // Slots (i, j) in row-major order and their candidate lists.
      std::vector<std::pair<int, int>> slots;
      std::vector<const std::vector<ThetaMorphism>*> options;
      bool empty = false;
      for (int i = 1; i <= m; ++i)
        for (int j = phi(i - 1) + 1; j <= phi(i); ++j) {
          slots.emplace_back(i, j);
          options.push_back(&enum_theta_hom(src.children()[static_cast<std::size_t>(i) - 1],
                                            tgt.children()[static_cast<std::size_t>(j) - 1]));
          if (options.back()->empty()) empty = true;
        }
      if (empty) continue;
      std::vector<std::size_t> idx(slots.size(), 0);
      while (true) {
        ThetaMorphism::Rows rows(static_cast<std::size_t>(m));
        for (std::size_t s = 0; s < slots.size(); ++s)
          rows[static_cast<std::size_t>(slots[s].first) - 1].push_back((*options[s])[idx[s]]);
        out.emplace_back(src, tgt, phi.values(), std::move(rows));
        std::size_t pos = idx.size();
        while (pos > 0 && ++idx[pos - 1] == options[pos - 1]->size()) idx[--pos] = 0;
        if (pos == 0) break;
      }
    }
    return out;
  });
}

std::size_t count_theta_hom(const ThetaObject& src, const ThetaObject& tgt) {
  if (src.level() == 0) return 1;
  std::size_t total = 0;
  for (const auto& phi : enum_hom_simplex(src.length(), tgt.length())) {
    std::size_t prod = 1;
    for (int i = 1; i <= src.length(); ++i)
      for (int j = phi(i - 1) + 1; j <= phi(i); ++j)
        prod *= count_theta_hom(src.children()[static_cast<std::size_t>(i) - 1],
                                tgt.children()[static_cast<std::size_t>(j) - 1]);
    total += prod;
  }
  return total;
}

// ---------------------------------------------------------------------------

ThetaObject iota(const ThetaObject& obj) {
  if (obj.level() == 0) return ThetaObject::empty(1);
  std::vector<ThetaObject> ch;
  ch.reserve(obj.children().size());
  for (const auto& c : obj.children()) ch.push_back(iota(c));
  return ThetaObject::make(obj.level() + 1, std::move(ch));
}

ThetaMorphism iota(const ThetaMorphism& f) {
  if (f.level() == 0) return ThetaMorphism::identity(ThetaObject::empty(1));
  ThetaMorphism::Rows rows;
  rows.reserve(f.inner_rows().size());
  for (const auto& row : f.inner_rows()) {
    std::vector<ThetaMorphism> r;
    r.reserve(row.size());
    for (const auto& m : row) r.push_back(iota(m));
    rows.push_back(std::move(r));
  }
  return ThetaMorphism(iota(f.src()), iota(f.tgt()), f.outer_values(), std::move(rows));
}

ThetaObject iota_pow(const ThetaObject& obj, int times) {
  ThetaObject out = obj;
  for (int t = 0; t < times; ++t) out = iota(out);
  return out;
}

ThetaMorphism iota_pow(const ThetaMorphism& f, int times) {
  ThetaMorphism out = f;
  for (int t = 0; t < times; ++t) out = iota(out);
  return out;
}

std::optional<ThetaObject> lower(const ThetaObject& obj) {
  if (obj.level() == 0) return std::nullopt;
  if (obj.level() == 1) {
    if (obj.length() == 0) return ThetaObject::point();
    return std::nullopt;
  }
  std::vector<ThetaObject> ch;
  for (const auto& c : obj.children()) {
    auto l = lower(c);
    if (!l) return std::nullopt;
    ch.push_back(*l);
  }
  return ThetaObject::make(obj.level() - 1, std::move(ch));
}

ThetaObject lower_to(const ThetaObject& obj, int level) {
  ThetaObject out = obj;
  while (out.level() > level) {
    auto l = lower(out);
    if (!l) throw DomainError(obj.to_string() + " is not in the image of iota from level " + std::to_string(level));
    out = *l;
  }
  return out;
}

ThetaObject sigma(const ThetaObject& obj) { return ThetaObject::make(obj.level() + 1, {obj}); }

ThetaMorphism sigma(const ThetaMorphism& f) {
  return ThetaMorphism(sigma(f.src()), sigma(f.tgt()), {0, 1}, {{f}});
}

ThetaObject tau(int m, const ThetaObject& obj) {
  return ThetaObject::make(obj.level() + 1, std::vector<ThetaObject>(static_cast<std::size_t>(m), obj));
}

ThetaMorphism tau(const SimplexMap& phi, const ThetaMorphism& f) {
  ThetaMorphism::Rows rows(static_cast<std::size_t>(phi.src()));
  for (int i = 1; i <= phi.src(); ++i)
    rows[static_cast<std::size_t>(i) - 1].assign(static_cast<std::size_t>(phi(i) - phi(i - 1)), f);
  return ThetaMorphism(tau(phi.src(), f.src()), tau(phi.tgt(), f.tgt()), phi.values(), std::move(rows));
}

ThetaObject tau_iterated(const std::vector<int>& ms, const ThetaObject& obj) {
  ThetaObject out = obj;
  for (auto it = ms.rbegin(); it != ms.rend(); ++it) out = tau(*it, out);
  return out;
}

ThetaMorphism tau_iterated(const std::vector<SimplexMap>& phis, const ThetaMorphism& f) {
  ThetaMorphism out = f;
  for (auto it = phis.rbegin(); it != phis.rend(); ++it) out = tau(*it, out);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t GradedActiveSet::size() const {
  std::size_t n = 0;
  for (const auto& [g, v] : entries) n += v.size();
  return n;
}

std::vector<ThetaMorphism> GradedActiveSet::flat() const {
  std::vector<ThetaMorphism> out;
  for (const auto& [g, v] : entries) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

void choose_slots(const ThetaObject& source, const SimplexMap& phi, const std::vector<int>& owner, int budget,
                  std::vector<ThetaMorphism>& chosen, GradedActiveSet& out) {
  const int p = phi.tgt();
  const std::size_t j = chosen.size();  // 0-based slot index
  if (static_cast<int>(j) == p) {
    std::vector<ThetaObject> targets;
    targets.reserve(chosen.size());
    for (const auto& a : chosen) targets.push_back(a.tgt());
    ThetaObject tgt = ThetaObject::make(source.level(), std::move(targets));
    ThetaMorphism::Rows rows(static_cast<std::size_t>(source.length()));
    for (std::size_t s = 0; s < chosen.size(); ++s) rows[static_cast<std::size_t>(owner[s]) - 1].push_back(chosen[s]);
    out.entries[tgt.cell_count()].emplace_back(source, tgt, phi.values(), std::move(rows));
    return;
  }
  const int reserve = p - static_cast<int>(j) - 1;
  const int room = budget - reserve;
  if (room < 1) return;
  const auto& child = source.children()[static_cast<std::size_t>(owner[j]) - 1];
  const auto& options = act_out(child, room);
  for (const auto& [grade, list] : options.entries) {
    if (grade > room) break;
    for (const auto& a : list) {
      chosen.push_back(a);
      choose_slots(source, phi, owner, budget - grade, chosen, out);
      chosen.pop_back();
    }
  }
}

}  // namespace

const GradedActiveSet& act_out(const ThetaObject& source, int bound) {
  static MemoTable<std::pair<ThetaObject, int>, GradedActiveSet, PairHash> memo;
  return memo.get({source, bound}, [&] {
    GradedActiveSet out;
    out.source = source;
    out.bound = bound;
    if (bound < 1) return out;
    if (source.level() == 0) {
      out.entries[1].push_back(ThetaMorphism::identity(source));
      return out;
    }
    const int m = source.length();
    for (int p = 0; 2 * p + 1 <= bound; ++p) {
      if (m == 0 && p > 0) break;
      for (const auto& phi : enum_active_simplex(m, p)) {
        std::vector<int> owner;
        for (int i = 1; i <= m; ++i)
          for (int j = phi(i - 1) + 1; j <= phi(i); ++j) owner.push_back(i);
        std::vector<ThetaMorphism> chosen;
        choose_slots(source, phi, owner, bound - (p + 1), chosen, out);
      }
    }
    for (auto& [g, list] : out.entries) std::sort(list.begin(), list.end());
    return out;
  });
}

GradedActiveSet act_out_by_filter(const ThetaObject& source, int bound) {
  GradedActiveSet out;
  out.source = source;
  out.bound = bound;
  for (const auto& tgt : enum_theta_objects(source.level(), bound))
    for (const auto& h : enum_theta_hom(source, tgt))
      if (h.is_active()) out.entries[tgt.cell_count()].push_back(h);
  for (auto& [g, list] : out.entries) std::sort(list.begin(), list.end());
  return out;
}

ThetaMorphism act_pullback(const ThetaMorphism& f, const ThetaMorphism& a) {
  if (a.src() != f.tgt()) throw DomainError("act_pullback: active map does not start at the target of f");
  return factorize(compose(a, f)).active;
}

std::optional<ThetaMorphism> active_from_globe(int k, const ThetaObject& tgt) {
  const int level = tgt.level();
  const ThetaObject src = globe(level, k);
  if (k == 0) {
    if (tgt.length() != 0) return std::nullopt;
    return ThetaMorphism::identity(tgt);
  }
  const int p = tgt.length();
  ThetaMorphism::Rows rows(1);
  for (const auto& child : tgt.children()) {
    auto inner = active_from_globe(k - 1, child);
    if (!inner) return std::nullopt;
    rows[0].push_back(std::move(*inner));
  }
  return ThetaMorphism(src, tgt, {0, p}, std::move(rows));
}

}  // namespace thetakit
