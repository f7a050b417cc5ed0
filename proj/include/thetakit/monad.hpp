#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "thetakit/presheaf.hpp"

namespace thetakit {

// ---------------------------------------------------------------------------
// Free values T_n X(C_k) = coproduct over J in Theta_k of X(iota J).

/// One element of T_n X(C_k): a pasting shape (stored at level n, i.e. as
/// iota J) together with a cone of X over its cells.
struct FreeElement {
  ThetaObject shape;
  std::size_t family = 0;

  int grade() const { return shape.cell_count(); }
  friend bool operator==(const FreeElement&, const FreeElement&) = default;
};

struct FreeValue {
  int level = 0;
  int k = 0;
  std::vector<FreeElement> elements;

  std::size_t size() const { return elements.size(); }
  std::map<int, std::size_t> grade_counts() const;
};

/// Direct route: shapes of Theta_k with at most `bound` cells, each with
/// every cone of X over iota J. Ordered by shape, then cone.
FreeValue free_value(const GlobularSet& X, int k, int bound);
/// Same, over an explicit list of Theta_k shapes (e.g. a window).
FreeValue free_value(const GlobularSet& X, int k, const std::vector<ThetaObject>& shapes);
/// Kan route: the elements of i_! of the Segal extension at the k-globe.
FreeValue free_value_via_kan(const GlobularSet& X, int k, int bound);

/// [{"shape": nested arrays at level k, "grade": g, "labels": [names per cell]}].
nlohmann::json to_json(const FreeValue& v, const GlobularSet& X);

// ---------------------------------------------------------------------------
// Active substitution.

/// True when pieces[c] is an active map out of the c-th cell's globe and the
/// pieces agree under act_pullback along every arrow of cells_of(J).
bool is_compatible_family(const ThetaObject& J, const std::vector<ThetaMorphism>& pieces);

/// Inverse of Act(J) -> lim over cells of Act(C): the unique active f out of
/// J with act_pullback(cell, f) = pieces[cell] for every cell. Throws
/// DomainError for incompatible families, BoundError when no candidate exists
/// up to the conservative bound (sum of piece target sizes), InvariantError
/// on multiple candidates.
ThetaMorphism subst(const ThetaObject& J, const std::vector<ThetaMorphism>& pieces);

/// Per cell of J, the pullback act_pullback(cell, f).
std::vector<ThetaMorphism> act_restrictions(const ThetaMorphism& f);

// ---------------------------------------------------------------------------
// The truncated free globular set and the monad structure maps.

/// Per-dimension weights on the elements of a globular set; a cone is kept
/// when the weights of its labels sum to at most `budget`.
struct DimensionBudget {
  std::vector<std::vector<int>> weights;
  int budget = 0;
};

/// T_S X as a globular set: element i of value()(C_k) is element(k, i).
/// Structure maps send (K, x) along g : C_j -> C_k to the active part of
/// a o gamma(g) with x restricted along the inert part; grades only shrink,
/// so the truncation is closed under them.
class FreeModel {
 public:
  FreeModel(GlobularSet base, int bound, std::optional<DimensionBudget> budget = std::nullopt);

  int level() const { return level_; }
  int bound() const { return bound_; }
  const GlobularSet& base() const { return base_; }
  const GlobularSet& value() const { return value_; }
  const std::vector<FreeElement>& elements(int k) const { return elements_[static_cast<std::size_t>(k)]; }
  const FreeElement& element(int k, std::size_t i) const { return elements(k).at(i); }
  std::optional<std::size_t> find(int k, const FreeElement& e) const;
  /// Index of the element with this shape and cone, if the cone is one.
  std::optional<std::size_t> find_labels(int k, const ThetaObject& shape, const std::vector<std::size_t>& labels) const;
  /// The cone of `element(k, i)`.
  const std::vector<std::size_t>& labels(int k, std::size_t i) const;

  /// x in X(C_k) goes to the globe summand.
  std::size_t unit(int k, std::size_t x) const;
  /// Left inverse of unit on the globe summand.
  std::optional<std::size_t> counit_on_globes(int k, std::size_t i) const;

 private:
  int level_;
  int bound_;
  GlobularSet base_;
  GlobularSet value_;
  std::vector<std::vector<FreeElement>> elements_;
  std::vector<std::unordered_map<ThetaObject, std::size_t>> offsets_;
  std::optional<DimensionBudget> budget_;
  std::unordered_map<ThetaObject, ConeSet> cones_;
};

/// mu: T(T_S X) -> T_S X at C_k. `outer` must be built over inner.value().
/// Throws BoundError when the flattened element exceeds the bound.
std::size_t mult(const FreeModel& inner, const FreeModel& outer, int k, std::size_t w);

/// T h for a partial globular map h : X -> Y given per dimension; nullopt when
/// a label is outside the domain of h or the image is outside `to`.
std::optional<std::size_t> free_map(const FreeModel& from, const FreeModel& to,
                                    const std::vector<std::vector<std::optional<std::size_t>>>& h, int k,
                                    std::size_t i);

struct MonadLawReport {
  bool ok = true;
  std::size_t left = 0, right = 0, assoc = 0, skipped = 0;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
};

/// Unit and associativity laws of the truncated monad on X. Associativity
/// instances whose middle or final flattening leaves the bound are outside
/// the truncated law and counted as skipped. With sample > 0, at most that
/// many instances per dimension are drawn with the given seed. In dimension
/// one the nested models carry a flattened-size budget, which keeps T T T X
/// down to the instances that can be checked.
MonadLawReport check_monad_laws(const GlobularSet& X, int bound, std::size_t sample = 0, unsigned seed = 1);

// ---------------------------------------------------------------------------
// The iterated monad T_{1,n}.

/// beta^* X for X on G_{n+1}: the value at (C_a, C_i) is X(beta(C_a, C_i)).
struct BetaTransport {
  int n = 0;
  GlobularSet base;
  /// X~ = beta^*X([1], -), a globular set on G_n.
  GlobularSet slice;
  /// X'([0], C_i) -> X'([0], C_0) is a bijection for every i.
  bool reduced = true;
};

BetaTransport beta_transport(const GlobularSet& X);

/// An element of T_{1,n}X([1], C_k): j composable elements of F_n X~(C_k).
struct IteratedElement {
  std::vector<std::size_t> pieces;
  /// Only used when j = 0: the identity on a 0-cell.
  std::size_t vertex = 0;
  int grade = 0;
};

struct IteratedValue {
  int k = 0;
  FreeValue slice_value;
  /// Source and target 0-cells of each slice element.
  std::vector<std::pair<std::size_t, std::size_t>> endpoints;
  std::vector<IteratedElement> elements;
};

/// T_{1,n}X([1], C_k): sequences of j elements of F_n X~(C_k) matching at
/// their endpoints, graded by j + 1 + sum of shape sizes; only shapes from
/// `slice_shapes` (objects of Theta_k) and lengths j <= max_length are used,
/// and the grade is capped at `bound`.
IteratedValue iterated_free_value(const BetaTransport& t, int k, const std::vector<ThetaObject>& slice_shapes,
                                  int max_length, int bound);

}  // namespace thetakit
