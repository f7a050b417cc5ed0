#pragma once

// Exhaustive checks over bounded fragments. Each sweep splits its work into
// independent items (object pairs, objects, active maps, inputs); the
// parallel path runs items under OpenMP and the serial path is the reference.
// Reports are merged in item order, so both paths give identical output.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "thetakit/presheaf.hpp"

namespace thetakit {

enum class Exec { Serial, Parallel };

struct SweepReport {
  std::string name;
  std::size_t items = 0;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few, in item order

  bool ok() const { return failed == 0; }
  nlohmann::json to_json() const;
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// Every morphism between objects of Theta_level with at most `max_cells`
/// cells has exactly one (active, inert) factorization, found by searching
/// all middle objects, and it is the one factorize() returns.
SweepReport factorization_sweep(int level, int max_cells, Exec exec = Exec::Parallel);

/// For each J of Theta_level up to `bound` cells: f |-> (act_pullback(c, f))_c
/// is injective on Act(J), grade-preserving, and hits every compatible family
/// of active maps out of the cells whose glued grade is at most `bound`.
SweepReport act_segal_sweep(int level, int bound, Exec exec = Exec::Parallel);

/// Initial objects of the comma categories (G_n/f)_{e/} for every active f
/// between objects up to `bound` cells. One check per comma category.
SweepReport cofinality_initial_sweep(int level, int bound, Exec exec = Exec::Parallel);
/// The same comma categories, checked for weak contractibility instead.
SweepReport cofinality_contractible_sweep(int level, int bound, Exec exec = Exec::Parallel);

/// Nerve homology of G_n/I for every I up to `max_cells` cells.
SweepReport contractibility_sweep(int level, int max_cells, Exec exec = Exec::Parallel);

/// left_kan_inert(segal_extend(X, S), S) is a graded Segal presheaf for each X.
SweepReport segal_preservation_sweep(const std::vector<GlobularSet>& inputs, int bound, Exec exec = Exec::Parallel);

/// unit_comparison at every k in `ks` with the given cell bound, for each X.
SweepReport unit_comparison_sweep(const std::vector<GlobularSet>& inputs, const std::vector<int>& ks, int bound,
                                  Exec exec = Exec::Parallel);

/// n = 1: T X against the path category with paths up to length L, through
/// the cell labels. Checks a bijection in both dimensions, endpoints, unit,
/// multiplication against concatenation, and naturality along the map to the
/// one-loop graph.
SweepReport free_category_sweep(const std::vector<GlobularSet>& graphs, int max_length, Exec exec = Exec::Parallel);

/// n = 2: rewriting class counts against free value counts by grade on the
/// window {columns, cells per column}, plus 0- and 1-cell counts.
SweepReport free_2cat_sweep(const std::vector<GlobularSet>& inputs, const std::vector<int>& widths,
                            Exec exec = Exec::Parallel);

}  // namespace thetakit
