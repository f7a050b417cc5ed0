#pragma once

// Small brute-force constructions shared by the test files. They only use
// enumeration and composition, never the engine under test.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "thetakit/presheaf.hpp"

namespace testing_support {

using namespace thetakit;

inline ThetaObject pt() { return ThetaObject::point(); }
inline ThetaObject d(int m) { return ThetaObject::make(1, std::vector<ThetaObject>(static_cast<std::size_t>(m), pt())); }
inline ThetaObject t2(std::vector<ThetaObject> ch) { return ThetaObject::make(2, std::move(ch)); }

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::size_t> src, tgt;
};

inline GlobularData graph_data(const Graph& g) {
  GlobularData data;
  data.cells.resize(2);
  for (std::size_t v = 0; v < g.vertices; ++v) data.cells[0].push_back("v" + std::to_string(v));
  for (std::size_t e = 0; e < g.src.size(); ++e) data.cells[1].push_back("e" + std::to_string(e));
  data.source = {{}, g.src};
  data.target = {{}, g.tgt};
  return data;
}

inline GlobularSet graph_set(const Graph& g) { return make_globular_set(graph_data(g)); }

/// A path: its start vertex and edge list (edges empty means an identity).
struct Path {
  std::size_t start;
  std::vector<std::size_t> edges;
  auto operator<=>(const Path&) const = default;
};

/// All paths with exactly `len` edges, by brute-force extension.
inline std::vector<Path> paths_of_length(const Graph& g, std::size_t len) {
  std::vector<Path> out;
  for (std::size_t v = 0; v < g.vertices; ++v) out.push_back({v, {}});
  for (std::size_t step = 0; step < len; ++step) {
    std::vector<Path> next;
    for (const auto& p : out) {
      const std::size_t end = p.edges.empty() ? p.start : g.tgt[p.edges.back()];
      for (std::size_t e = 0; e < g.src.size(); ++e)
        if (g.src[e] == end) {
          auto q = p;
          q.edges.push_back(e);
          next.push_back(q);
        }
    }
    out = std::move(next);
  }
  return out;
}

/// hom(-, J) on the given Theta category, from hom enumeration and composition.
inline ThetaPresheaf representable(const ThetaCategory& cat, const ThetaObject& target) {
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
        for (const auto& h : homs[b]) {
          const auto hf = compose(h, f);
          const auto& list = homs[a];
          map.push_back(static_cast<std::size_t>(std::find(list.begin(), list.end(), hf) - list.begin()));
        }
        F.set_action(f, std::move(map));
      }
  return F;
}

/// One cell in each dimension 0..n, all boundaries equal.
inline GlobularSet one_cell_each(int n) {
  GlobularData data;
  for (int k = 0; k <= n; ++k) {
    data.cells.push_back({"c" + std::to_string(k)});
    data.source.push_back(k == 0 ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});
    data.target.push_back(k == 0 ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});
  }
  return make_globular_set(data);
}

}  // namespace testing_support
