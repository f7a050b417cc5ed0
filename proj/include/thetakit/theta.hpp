#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetakit/simplex.hpp"

namespace thetakit {

namespace detail {
struct ThetaNode;
}

/// An object of Theta_n: either the level-0 point `*`, or [m](I_1,...,I_m)
/// with children one level down.
///
/// Objects are hash-consed: structurally equal trees share one interned node,
/// so equality and hashing are pointer operations. The interning table is
/// append-only and guarded by a mutex, which makes construction safe from
/// concurrent workers.
class ThetaObject {
 public:
  /// The level-0 point.
  ThetaObject();

  static ThetaObject point() { return ThetaObject(); }
  /// [m](children...) at `level` >= 1; throws DomainError on level mismatch.
  static ThetaObject make(int level, std::vector<ThetaObject> children);
  /// [0]() at `level` (the point when level = 0).
  static ThetaObject empty(int level);

  int level() const;
  /// m for [m](...); 0 for the point.
  int length() const;
  const std::vector<ThetaObject>& children() const;
  /// Number of cells (objects of the cell category).
  int cell_count() const;
  std::size_t hash() const;

  /// Compact notation: `*`, `[2]` for level-1 objects, `[2]([1],[0])` above.
  std::string to_string() const;

  friend bool operator==(const ThetaObject& a, const ThetaObject& b) { return a.node_ == b.node_; }
  /// Canonical order: level, cell count, length, then children lexicographically.
  friend std::strong_ordering operator<=>(const ThetaObject& a, const ThetaObject& b);

 private:
  explicit ThetaObject(const detail::ThetaNode* node) : node_(node) {}
  const detail::ThetaNode* node_;
};

/// A morphism of Theta_n in wreath form: an outer monotone map phi of the
/// top-level ordinals and, for 0 < i <= m_src and phi(i-1) < j <= phi(i), an
/// inner morphism psi_ij : I_i -> J_j one level down.
///
/// `inner_rows()[i-1]` holds psi_{i, phi(i-1)+1}, ..., psi_{i, phi(i)}.
class ThetaMorphism {
 public:
  using Rows = std::vector<std::vector<ThetaMorphism>>;

  /// Validates the jagged matrix against the endpoints; throws DomainError.
  ThetaMorphism(ThetaObject src, ThetaObject tgt, std::vector<int> outer, Rows inner);

  static ThetaMorphism identity(const ThetaObject& obj);

  const ThetaObject& src() const { return src_; }
  const ThetaObject& tgt() const { return tgt_; }
  int level() const { return src_.level(); }

  /// Outer map phi; undefined at level 0.
  SimplexMap outer() const;
  const std::vector<int>& outer_values() const { return outer_; }
  /// psi_ij with the 1-based indices of the wreath description.
  const ThetaMorphism& inner(int i, int j) const;
  const Rows& inner_rows() const { return inner_; }

  bool is_inert() const;
  bool is_active() const;
  bool is_identity() const;

  std::size_t hash() const { return hash_; }
  std::string to_string() const;

  friend bool operator==(const ThetaMorphism& a, const ThetaMorphism& b);
  friend std::strong_ordering operator<=>(const ThetaMorphism& a, const ThetaMorphism& b);

 private:
  ThetaObject src_;
  ThetaObject tgt_;
  std::vector<int> outer_;
  Rows inner_;
  std::size_t hash_ = 0;
};

/// Wreath composite g o f. Throws DomainError unless f.tgt() == g.src().
ThetaMorphism compose(const ThetaMorphism& g, const ThetaMorphism& f);

struct ThetaFactorization {
  ThetaMorphism active;
  ThetaMorphism inert;
};

/// The unique active-inert factorization f = inert o active.
ThetaFactorization factorize(const ThetaMorphism& f);

/// Objects of Theta_level with at most `max_cells` cells, in canonical order.
/// Memoized; the returned reference stays valid for the program lifetime.
const std::vector<ThetaObject>& enum_theta_objects(int level, int max_cells);

/// Objects selected by outer widths: the object passes when its length is at
/// most widths[0], each child's length at most widths[1], and so on. Depths
/// beyond the vector are unconstrained; the result is finite only when the
/// vector covers every positive level.
std::vector<ThetaObject> enum_theta_objects_window(int level, const std::vector<int>& widths);
bool in_window(const ThetaObject& obj, const std::vector<int>& widths);

/// All morphisms I -> J. Memoized.
const std::vector<ThetaMorphism>& enum_theta_hom(const ThetaObject& src, const ThetaObject& tgt);

/// Independent count of |hom(I, J)| by the recursive sum-product formula.
std::size_t count_theta_hom(const ThetaObject& src, const ThetaObject& tgt);

/// The k-globe C_k at the given level (k <= level): [1]([1](...[0]()...)).
ThetaObject globe(int level, int k);
/// The dimension k if `obj` is a globe, otherwise nullopt.
std::optional<int> globe_dimension(const ThetaObject& obj);

/// Inverses of to_string(): `*`, `[2]` (level 1), `[2]([1],[0])` (level 2).
/// Throw ParseError on malformed text.
ThetaObject parse_theta_object(int level, std::string_view text);
ThetaMorphism parse_theta_morphism(const ThetaObject& src, const ThetaObject& tgt, std::string_view text);

// ---------------------------------------------------------------------------
// Structural functors.

/// iota: Theta_{n-1} -> Theta_n; * goes to [0], [m](I...) to [m](iota I...).
ThetaObject iota(const ThetaObject& obj);
ThetaMorphism iota(const ThetaMorphism& f);
/// iota applied `times` times (iota_k^n with times = n - k).
ThetaObject iota_pow(const ThetaObject& obj, int times);
ThetaMorphism iota_pow(const ThetaMorphism& f, int times);
/// Inverse of iota on its image; nullopt outside it.
std::optional<ThetaObject> lower(const ThetaObject& obj);
/// Lowers to `level`, throwing DomainError when obj is not in the image.
ThetaObject lower_to(const ThetaObject& obj, int level);

/// sigma = [1](-): Theta_{k-1} -> Theta_k.
ThetaObject sigma(const ThetaObject& obj);
ThetaMorphism sigma(const ThetaMorphism& f);

/// tau_{1,n}: Delta x Theta_n -> Theta_{n+1}, ([m], I) |-> [m](I,...,I).
/// On morphisms (phi, f) |-> (phi, psi_ij = f).
ThetaObject tau(int m, const ThetaObject& obj);
ThetaMorphism tau(const SimplexMap& phi, const ThetaMorphism& f);
/// tau_{k,n}: Delta^k x Theta_n -> Theta_{n+k}, built as
/// tau_{1,n+k-1} o (id x tau_{k-1,n}).
ThetaObject tau_iterated(const std::vector<int>& ms, const ThetaObject& obj);
ThetaMorphism tau_iterated(const std::vector<SimplexMap>& phis, const ThetaMorphism& f);

// ---------------------------------------------------------------------------
// Active maps.

/// Active maps out of `source` graded by target cell count, complete for
/// every grade up to `bound`.
struct GradedActiveSet {
  ThetaObject source;
  int bound = 0;
  std::map<int, std::vector<ThetaMorphism>> entries;

  std::size_t size() const;
  std::vector<ThetaMorphism> flat() const;
};

/// Direct generator of active maps out of `source` with targets of at most
/// `bound` cells. Memoized.
const GradedActiveSet& act_out(const ThetaObject& source, int bound);

/// Same set obtained by filtering every hom-set into bounded targets; kept as
/// an independent route for tests.
GradedActiveSet act_out_by_filter(const ThetaObject& source, int bound);

/// f^*(a): the active part of a o f.
ThetaMorphism act_pullback(const ThetaMorphism& f, const ThetaMorphism& a);

/// The unique active map from the k-globe into `tgt`, if there is one.
std::optional<ThetaMorphism> active_from_globe(int k, const ThetaObject& tgt);

}  // namespace thetakit

template <>
struct std::hash<thetakit::ThetaObject> {
  std::size_t operator()(const thetakit::ThetaObject& o) const noexcept { return o.hash(); }
};

template <>
struct std::hash<thetakit::ThetaMorphism> {
  std::size_t operator()(const thetakit::ThetaMorphism& f) const noexcept { return f.hash(); }
};
