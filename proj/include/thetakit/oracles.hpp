#pragma once

// Brute-force ground truth. Nothing here calls the limit, Kan or monad code;
// the constructions only read cell tables and wreath data.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "thetakit/presheaf.hpp"

namespace thetakit::oracle {

// ---------------------------------------------------------------------------
// Paths in a graph.

struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> edges;

  auto operator<=>(const Path&) const = default;
};

/// The free category on the 1-skeleton of X, morphisms of length <= L.
class FreeCategory {
 public:
  FreeCategory(const GlobularSet& X, int max_length);

  int max_length() const { return max_length_; }
  std::size_t vertex_count() const { return vertices_; }
  const std::vector<Path>& morphisms() const { return morphisms_; }
  std::optional<std::size_t> find(const Path& p) const;
  std::size_t end(const Path& p) const;
  std::size_t identity(std::size_t v) const;
  std::size_t unit(std::size_t edge) const;
  /// a then b; nullopt when not composable or longer than L.
  std::optional<std::size_t> compose(std::size_t a, std::size_t b) const;
  std::string name(std::size_t i) const;

 private:
  int max_length_;
  std::size_t vertices_;
  std::vector<std::size_t> src_, tgt_;
  std::vector<std::string> vertex_names_, edge_names_;
  std::vector<Path> morphisms_;
  std::map<Path, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// The free strict 2-category by rewriting.

enum class Op { Gen, Id, Horizontal, Vertical };

/// A 2-cell term. Leaves are generators and identities on 1-cell paths;
/// 1-cells are paths, so boundaries are compared exactly.
struct Term {
  Op op = Op::Gen;
  std::size_t a = 0;  // generator, path id, or left child
  std::size_t b = 0;  // right child
  std::size_t src = 0, tgt = 0;  // path ids
  std::vector<int> profile;      // 2-cells stacked over each 1-cell of the boundary
  int size = 1;
};

struct Free2Class {
  std::size_t representative = 0;  // smallest term
  std::vector<int> profile;
  int grade = 0;
  std::size_t members = 0;
};

/// Terms up to `node_bound` nodes whose profile fits `widths` = {max columns,
/// max 2-cells per column}, quotiented by the congruence generated by
/// associativity of both composites, units, identities of composites and
/// middle interchange. Profiles are invariant under every axiom, so pruning
/// by profile keeps each derivation inside the universe up to size.
class Free2Category {
 public:
  Free2Category(const GlobularSet& X, std::vector<int> widths, int node_bound);

  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<Path>& paths() const { return paths_; }
  std::optional<std::size_t> lookup(Op op, std::size_t a, std::size_t b) const;
  std::size_t class_of(std::size_t t) const { return class_of_[t]; }
  const std::vector<Free2Class>& classes() const { return classes_; }
  std::size_t axiom_instances() const { return axioms_; }
  std::string to_string(std::size_t t) const;
  /// Class counts by grade m + 1 + sum(2 k_i + 1).
  std::map<int, std::size_t> grade_counts() const;
  nlohmann::json to_json() const;

 private:
  std::size_t find(std::size_t x);
  bool unite(std::size_t x, std::size_t y);

  std::vector<std::string> vertex_names_, edge_names_, cell_names_;
  std::vector<Path> paths_;
  std::map<Path, std::size_t> path_index_;
  std::vector<Term> terms_;
  std::unordered_map<std::uint64_t, std::size_t> composites_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> class_of_;
  std::vector<Free2Class> classes_;
  std::size_t axioms_ = 0;
};

/// Runs the rewriting at the smallest bound holding every canonical pasting
/// (2 m k - 1 nodes) plus `slack`, and again 2 nodes larger; throws
/// BoundError when the class counts differ.
Free2Category free_2cat_rewrite(const GlobularSet& X, const std::vector<int>& widths, int slack = 2);

// ---------------------------------------------------------------------------
// Strict 2-categories given by tables, and their nerves.

/// Composites are stored for every composable pair; 1-categories have only
/// identity 2-cells.
struct Strict2Category {
  std::string name;
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<std::size_t> arrow_src, arrow_tgt;
  std::vector<std::string> cells;
  std::vector<std::size_t> cell_src, cell_tgt;  // arrows
  std::vector<std::size_t> id_arrow;            // per object
  std::vector<std::size_t> id_cell;             // per arrow
  /// f then g, for arrow_tgt[f] == arrow_src[g].
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose;
  /// alpha then beta along an arrow.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> vertical;
  /// alpha then beta along an object.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> horizontal;
};

/// Strict 2-category axioms on the tables; an empty list means all hold.
std::vector<std::string> strict_law_violations(const Strict2Category& C);

/// A 1-category as a locally discrete 2-category. arrows[i] for i below
/// objects.size() is the identity of object i.
Strict2Category locally_discrete(std::string name, std::vector<std::string> objects, std::vector<std::string> arrows,
                                 std::vector<std::size_t> src, std::vector<std::size_t> tgt,
                                 const std::function<std::size_t(std::size_t, std::size_t)>& comp);

/// terminal, arrow (a -> b), chain (a -> b -> c), z2 (one-object Z/2),
/// two_cell (alpha : f => g between a and b), eckmann_hilton (one object,
/// one arrow, Z/2 of 2-cells).
std::vector<Strict2Category> strict_corpus();

/// N C on `cat` (level 1 or 2): I-shaped labelings, acted on by evaluating
/// the wreath data of each morphism in the tables. Level 1 uses only the
/// 1-cells.
ThetaPresheaf nerve(const Strict2Category& C, const ThetaCategory& cat);

/// hom(-, J) on `cat`, from hom enumeration and composition.
ThetaPresheaf representable(const ThetaCategory& cat, const ThetaObject& target);

// ---------------------------------------------------------------------------
// Globular sets.

/// All globular sets with at most max_per_dim[d] cells in dimension d, one
/// per isomorphism class.
std::vector<GlobularData> enumerate_globular_sets(const std::vector<int>& max_per_dim);

/// One cell in each dimension 0..n, all boundaries equal.
GlobularSet one_cell_each(int n);

/// Named globular sets on G_2 used across the checks.
std::vector<std::pair<std::string, GlobularSet>> globular_corpus();

}  // namespace thetakit::oracle
