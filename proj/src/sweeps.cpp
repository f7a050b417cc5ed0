#include "thetakit/sweeps.hpp"

#include <exception>
#include <map>
#include <set>

#include "thetakit/comparison.hpp"
#include "thetakit/error.hpp"
#include "thetakit/monad.hpp"
#include "thetakit/oracles.hpp"

namespace thetakit {

nlohmann::json SweepReport::to_json() const {
  return {{"name", name}, {"ok", ok()}, {"items", items}, {"checked", checked}, {"failed", failed}, {"failures", failures}};
}

namespace {

struct ItemResult {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ++failed;
    if (failures.size() < 5) failures.push_back(std::move(msg));
  }
};

ItemResult guarded(const std::function<ItemResult()>& item) {
  try {
    return item();
  } catch (const BoundError&) {
    throw;
  } catch (const Error& e) {
    ItemResult r;
    r.fail(e.what());
    return r;
  }
}

SweepReport run(std::string name, std::size_t n, Exec exec, const std::function<ItemResult(std::size_t)>& item) {
  std::vector<ItemResult> results(n);
  if (exec == Exec::Parallel) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      try {
        results[u] = guarded([&] { return item(u); });
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t i = 0; i < n; ++i) results[i] = guarded([&] { return item(i); });
  }
  SweepReport report;
  report.name = std::move(name);
  report.items = n;
  for (auto& r : results) {
    report.checked += r.checked;
    report.failed += r.failed;
    for (auto& f : r.failures)
      if (report.failures.size() < 20) report.failures.push_back(std::move(f));
  }
  return report;
}

std::vector<ThetaMorphism> active_maps(int level, int bound) {
  std::vector<ThetaMorphism> out;
  const auto& objs = enum_theta_objects(level, bound);
  for (const auto& src : objs)
    for (const auto& tgt : objs)
      for (const auto& f : enum_theta_hom(src, tgt))
        if (f.is_active()) out.push_back(f);
  return out;
}

// A labelled level-1 shape read as a path: the label of vertex 0 and the
// edge labels left to right.
oracle::Path as_path(const ThetaObject& shape, const std::vector<std::size_t>& labels) {
  const auto& cells = cells_of(shape).cells();
  oracle::Path p{0, std::vector<std::size_t>(static_cast<std::size_t>(shape.length()))};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const int pos = cells[c].map.outer_values()[0];
    if (cells[c].dim == 0 && pos == 0) p.start = labels[c];
    if (cells[c].dim == 1) p.edges[static_cast<std::size_t>(pos)] = labels[c];
  }
  return p;
}

DimensionBudget path_budget(int bound, const std::vector<int>& flat_sizes, std::size_t vertices) {
  DimensionBudget b{{std::vector<int>(vertices, 0), {}}, bound - 1};
  for (int s : flat_sizes) b.weights[1].push_back(s - 1);
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------

SweepReport factorization_sweep(int level, int max_cells, Exec exec) {
  const auto& objs = enum_theta_objects(level, max_cells);
  const auto n = objs.size();
  return run("factorization", n * n, exec, [&](std::size_t item) {
    ItemResult r;
    const auto& src = objs[item / n];
    const auto& tgt = objs[item % n];
    std::map<ThetaMorphism, std::vector<ThetaFactorization>> found;
    for (const auto& mid : enum_theta_objects(level, tgt.cell_count()))
      for (const auto& i : enum_theta_hom(mid, tgt)) {
        if (!i.is_inert()) continue;
        for (const auto& a : enum_theta_hom(src, mid))
          if (a.is_active()) found[compose(i, a)].push_back({a, i});
      }
    for (const auto& f : enum_theta_hom(src, tgt)) {
      ++r.checked;
      const auto it = found.find(f);
      const auto count = it == found.end() ? 0 : it->second.size();
      if (count != 1) {
        r.fail(f.to_string() + ": " + std::to_string(count) + " factorizations");
        continue;
      }
      const auto fac = factorize(f);
      if (fac.active != it->second[0].active || fac.inert != it->second[0].inert)
        r.fail(f.to_string() + ": factorize() disagrees with the search");
    }
    return r;
  });
}

SweepReport act_segal_sweep(int level, int bound, Exec exec) {
  const FreeModel act(oracle::one_cell_each(level), bound);
  const auto& objs = enum_theta_objects(level, bound);
  return run("act_segal", objs.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto& J = objs[item];
    const auto& cells = cells_of(J).cells();
    const auto cones = cell_limit(act.value(), J);
    std::vector<char> hit(cones.size(), 0);
    for (const auto& f : act_out(J, bound).flat()) {
      ++r.checked;
      const auto pieces = act_restrictions(f);
      std::vector<std::size_t> fam;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto e = act.find(cells[c].dim, FreeElement{pieces[c].tgt(), 0});
        if (!e) break;
        fam.push_back(*e);
      }
      if (fam.size() != cells.size()) {
        r.fail(f.to_string() + ": a restriction leaves Act of the globes");
        continue;
      }
      if (glued_grade(J, pieces) != f.tgt().cell_count()) r.fail(f.to_string() + ": grade changes");
      const auto idx = cones.index_of(fam);
      if (!idx) {
        r.fail(f.to_string() + ": restrictions are not a compatible family");
        continue;
      }
      if (hit[*idx]++) r.fail(f.to_string() + ": two active maps with the same restrictions");
    }
    for (std::size_t x = 0; x < cones.size(); ++x) {
      if (hit[x]) continue;
      std::vector<ThetaMorphism> pieces;
      for (std::size_t c = 0; c < cells.size(); ++c)
        pieces.push_back(*active_from_globe(cells[c].dim, act.element(cells[c].dim, cones.families[x][c]).shape));
      if (glued_grade(J, pieces) > bound) continue;
      ++r.checked;
      r.fail(J.to_string() + ": a compatible family of grade " + std::to_string(glued_grade(J, pieces)) +
             " has no active map");
    }
    return r;
  });
}

SweepReport cofinality_initial_sweep(int level, int bound, Exec exec) {
  const auto maps = active_maps(level, bound);
  return run("cofinality_initial", maps.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto fiber = active_fiber(maps[item]);
    const auto cert = check_cofinal_via_initial(fiber);
    r.checked = cert.initial.size();
    for (auto e : cert.failures)
      r.fail(maps[item].to_string() + ": no initial object under cell " +
             fiber.target->cells()[e].map.to_string());
    return r;
  });
}

SweepReport cofinality_contractible_sweep(int level, int bound, Exec exec) {
  const auto maps = active_maps(level, bound);
  return run("cofinality_contractible", maps.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto fiber = active_fiber(maps[item]);
    const auto cert = check_cofinal_via_contractibility(fiber);
    r.checked = fiber.target->size();
    for (auto e : cert.failures)
      r.fail(maps[item].to_string() + ": comma category under cell " + fiber.target->cells()[e].map.to_string() +
             " is not contractible");
    return r;
  });
}

SweepReport contractibility_sweep(int level, int max_cells, Exec exec) {
  const auto& objs = enum_theta_objects(level, max_cells);
  return run("contractibility", objs.size(), exec, [&](std::size_t item) {
    ItemResult r;
    r.checked = 1;
    if (!nerve_contractibility(cells_of(objs[item]).order()).contractible)
      r.fail(objs[item].to_string() + ": cell category has nontrivial homology");
    return r;
  });
}

SweepReport segal_preservation_sweep(const std::vector<GlobularSet>& inputs, int bound, Exec exec) {
  return run("segal_preservation", inputs.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto G = left_kan_inert(segal_extend(inputs[item], bound), bound);
    SegalOptions opt;
    opt.grade_bound = bound;
    opt.shape = G.shape_fn();
    const auto seg = is_segal(G.presheaf, opt);
    r.checked = seg.objects_checked;
    for (const auto& f : seg.failures) r.fail("input " + std::to_string(item) + ": " + f);
    return r;
  });
}

SweepReport unit_comparison_sweep(const std::vector<GlobularSet>& inputs, const std::vector<int>& ks, int bound,
                                  Exec exec) {
  return run("unit_comparison", inputs.size() * ks.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto& X = inputs[item / ks.size()];
    const int k = ks[item % ks.size()];
    const auto u = unit_comparison(X, k, ComparisonWindow::cells(bound));
    for (const auto& [g, row] : u.grades) r.checked += row.lhs;
    if (!u.ok)
      r.fail("input " + std::to_string(item / ks.size()) + " k=" + std::to_string(k) + ": " +
             (u.failures.empty() ? std::string("grade counts differ") : u.failures.front()));
    return r;
  });
}

SweepReport free_category_sweep(const std::vector<GlobularSet>& graphs, int max_length, Exec exec) {
  const int S = 2 * max_length + 1;
  const auto loop = make_globular_set(GlobularData{{{"x"}, {"e"}}, {{}, {0}}, {{}, {0}}});
  return run("free_category", graphs.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto& X = graphs[item];
    if (X.index().n != 1) throw DomainError("free category sweep needs graphs");
    const oracle::FreeCategory P(X, max_length);
    const FreeModel T(X, S, path_budget(S, std::vector<int>(X.size(1), 3), X.size(0)));
    const FreeModel TT(T.value(), S, path_budget(S, T.value().grades(1), X.size(0)));
    const FreeModel L(loop, S, path_budget(S, {3}, 1));
    const auto tag = "graph " + std::to_string(item) + ": ";

    // Bijections.
    std::vector<std::size_t> phi0, phi1;
    for (std::size_t i = 0; i < T.elements(0).size(); ++i) phi0.push_back(T.labels(0, i)[0]);
    for (std::size_t i = 0; i < T.elements(1).size(); ++i) {
      const auto p = P.find(as_path(T.element(1, i).shape, T.labels(1, i)));
      if (!p) {
        r.fail(tag + "element " + T.value().name(1, i) + " is not a path");
        return r;
      }
      phi1.push_back(*p);
    }
    r.checked += 2;
    if (!detail::is_bijection(phi0, P.vertex_count())) r.fail(tag + "0-cells are not the vertices");
    if (!detail::is_bijection(phi1, P.morphisms().size())) r.fail(tag + "1-cells are not the paths");

    // Endpoints and unit.
    for (std::size_t i = 0; i < phi1.size(); ++i) {
      ++r.checked;
      const auto s = T.value().apply(GlobMorphism{0, 1, Polarity::Source}, i);
      const auto t = T.value().apply(GlobMorphism{0, 1, Polarity::Target}, i);
      const auto& path = P.morphisms()[phi1[i]];
      if (phi0[s] != path.start || phi0[t] != P.end(path)) r.fail(tag + "endpoints differ at " + P.name(phi1[i]));
    }
    for (std::size_t v = 0; v < X.size(0); ++v) {
      ++r.checked;
      if (phi0[T.unit(0, v)] != v) r.fail(tag + "unit differs at a vertex");
    }
    for (std::size_t e = 0; e < X.size(1); ++e) {
      ++r.checked;
      if (max_length >= 1 && phi1[T.unit(1, e)] != P.unit(e)) r.fail(tag + "unit differs at an edge");
    }

    // Multiplication against concatenation.
    for (std::size_t w = 0; w < TT.elements(1).size(); ++w) {
      ++r.checked;
      const auto outer = as_path(TT.element(1, w).shape, TT.labels(1, w));
      std::optional<std::size_t> flat = P.identity(phi0[outer.start]);
      for (auto piece : outer.edges)
        if (flat) flat = P.compose(*flat, phi1[piece]);
      if (!flat) {
        try {
          mult(T, TT, 1, w);
          r.fail(tag + "multiplication accepted an element longer than the bound");
        } catch (const BoundError&) {
        }
        continue;
      }
      if (phi1[mult(T, TT, 1, w)] != *flat) r.fail(tag + "multiplication differs from concatenation");
    }
    for (std::size_t w = 0; w < TT.elements(0).size(); ++w) {
      ++r.checked;
      const auto m = mult(T, TT, 0, w);
      if (phi0[m] != phi0[TT.labels(0, w)[0]]) r.fail(tag + "multiplication differs at a vertex");
    }

    // Naturality along the map to the one-loop graph.
    const std::vector<std::vector<std::optional<std::size_t>>> h{
        std::vector<std::optional<std::size_t>>(X.size(0), 0), std::vector<std::optional<std::size_t>>(X.size(1), 0)};
    for (std::size_t i = 0; i < phi1.size(); ++i) {
      ++r.checked;
      const auto image = free_map(T, L, h, 1, i);
      const auto length = P.morphisms()[phi1[i]].edges.size();
      if (!image || as_path(L.element(1, *image).shape, L.labels(1, *image)).edges.size() != length)
        r.fail(tag + "T h is not the path length at " + P.name(phi1[i]));
    }
    return r;
  });
}

SweepReport free_2cat_sweep(const std::vector<GlobularSet>& inputs, const std::vector<int>& widths, Exec exec) {
  return run("free_2cat", inputs.size(), exec, [&](std::size_t item) {
    ItemResult r;
    const auto& X = inputs[item];
    const auto tag = "input " + std::to_string(item) + ": ";
    r.checked = 3;
    if (free_value(X, 0, enum_theta_objects(0, 1)).size() != X.size(0)) r.fail(tag + "0-cells differ");
    const oracle::FreeCategory P(X, widths.at(0));
    if (free_value(X, 1, enum_theta_objects_window(1, {widths[0]})).size() != P.morphisms().size())
      r.fail(tag + "1-cell counts differ from paths");
    const auto F = oracle::free_2cat_rewrite(X, widths);
    const auto v = free_value(X, 2, enum_theta_objects_window(2, widths));
    if (F.grade_counts() != v.grade_counts()) {
      std::string detail;
      for (const auto& [g, c] : F.grade_counts()) detail += " " + std::to_string(g) + ":" + std::to_string(c);
      detail += " vs";
      for (const auto& [g, c] : v.grade_counts()) detail += " " + std::to_string(g) + ":" + std::to_string(c);
      r.fail(tag + "2-cell classes by grade differ:" + detail);
    }
    return r;
  });
}

}  // namespace thetakit
