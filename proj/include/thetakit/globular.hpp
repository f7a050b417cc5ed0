#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thetakit/poset.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

enum class Polarity { Source, Target };

/// A morphism C_j -> C_k of the globular category in normal form.
///
/// For j < k the two parallel composites of generators are told apart by the
/// first generator applied (s_{j+1} or t_{j+1}); the globular relations
/// identify every other choice. For j = k only the identity exists, and its
/// polarity is fixed to Source.
struct GlobMorphism {
  int src = 0;
  int tgt = 0;
  Polarity polarity = Polarity::Source;

  static GlobMorphism identity(int k) { return {k, k, Polarity::Source}; }
  /// The generator s_i or t_i : C_{i-1} -> C_i.
  static GlobMorphism generator(int i, Polarity p) { return {i - 1, i, p}; }

  bool is_identity() const { return src == tgt; }
  std::string to_string() const;

  friend auto operator<=>(const GlobMorphism&, const GlobMorphism&) = default;
};

/// g o f; throws DomainError on mismatched endpoints.
GlobMorphism compose(const GlobMorphism& g, const GlobMorphism& f);
/// hom(C_j, C_k): empty, the identity, or the two normal forms.
std::vector<GlobMorphism> enum_glob_hom(int j, int k);

/// gamma_n on objects: C_k |-> the k-globe at level n.
ThetaObject gamma_embed(int level, int k);
/// gamma_n on morphisms; the image is inert.
ThetaMorphism gamma_embed(int level, const GlobMorphism& g);
/// Inverse of gamma on inert maps between globes.
std::optional<GlobMorphism> gamma_preimage(const ThetaMorphism& f);

// ---------------------------------------------------------------------------

/// A cell of I: an inert map from a globe.
struct Cell {
  int dim = 0;
  ThetaMorphism map;
};

/// The cell category G_n/I. Arrows between cells are unique when they exist,
/// so the category is stored as a poset; `arrow(a, b)` recovers the globular
/// morphism witnessing a <= b.
class CellCategory {
 public:
  explicit CellCategory(ThetaObject base);

  const ThetaObject& base() const { return base_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  const FinitePoset& order() const { return order_; }
  std::optional<GlobMorphism> arrow(std::size_t a, std::size_t b) const;
  /// Index of the cell whose map is `m`; nullopt if `m` is not a cell of I.
  std::optional<std::size_t> index_of(const ThetaMorphism& m) const;
  /// Indices of the cells of the given dimension.
  std::vector<std::size_t> cells_of_dim(int dim) const;

 private:
  ThetaObject base_;
  std::vector<Cell> cells_;
  FinitePoset order_;
  std::vector<std::optional<GlobMorphism>> arrows_;
  std::unordered_map<ThetaMorphism, std::size_t> index_;
};

/// Inert maps from the k-globe into I, by direct recursion.
std::vector<ThetaMorphism> inert_cells(const ThetaObject& obj, int k);

/// The memoized cell category of I.
const CellCategory& cells_of(const ThetaObject& obj);

// ---------------------------------------------------------------------------

/// G_n/f for an active f : I -> J.
///
/// Objects are pairs (alpha, c) with alpha a cell of I and c a cell of J_alpha,
/// where f o alpha = i_alpha o f_alpha is the active-inert factorization. The
/// order is (alpha, c) <= (alpha', c') iff alpha <= alpha' via xi and
/// t_xi o c <= c' in G/J_alpha', with t_xi the inert part of f_alpha' o gamma(xi).
struct ActiveFiber {
  struct Node {
    std::size_t alpha;
    std::size_t cell;
  };

  ThetaMorphism f;
  const CellCategory* source;
  const CellCategory* target;
  /// Per source cell: f_alpha (active) and i_alpha (inert).
  std::vector<ThetaFactorization> parts;
  std::vector<Node> nodes;
  /// Comparison functor to G/J on nodes: index of i_alpha o c in target cells.
  std::vector<std::size_t> image;
  FinitePoset order;

  /// Transition t_xi : J_alpha -> J_alpha' for alpha <= alpha'.
  ThetaMorphism transition(std::size_t alpha, std::size_t alpha2) const;
};

ActiveFiber active_fiber(const ThetaMorphism& f);

/// For each cell e of J, the initial object of the comma category
/// (G_n/f)_{e/} = {x : e <= F(x)}, when it exists.
struct CofinalityCertificate {
  bool ok = true;
  std::vector<std::optional<std::size_t>> initial;
  std::vector<std::size_t> failures;
};

CofinalityCertificate check_cofinal_via_initial(const ActiveFiber& fiber);

/// Objects of the comma category (G_n/f)_{e/}, as node indices.
std::vector<std::size_t> comma_under(const ActiveFiber& fiber, std::size_t e);

/// Theorem A form of cofinality: every comma category (G_n/f)_{e/} has a
/// contractible nerve. Weaker than the initial-object certificate and holds
/// in cases where that one does not.
struct CommaContractibility {
  bool ok = true;
  std::vector<std::size_t> failures;
};

CommaContractibility check_cofinal_via_contractibility(const ActiveFiber& fiber);

// ---------------------------------------------------------------------------

/// The poset Lambda_j of pairs (a, b), 0 <= a <= b <= j, b - a <= 1, with
/// (a, b) <= (a', b') iff a <= a' <= b' <= b. Elements are listed as
/// (0,0), (0,1), (1,1), ..., (j,j).
struct LambdaPoset {
  int j = 0;
  std::vector<std::pair<int, int>> elements;
  FinitePoset order;
  /// For I = [j](C_{n-1}, ..., C_{n-1}): the cell of I assigned to each
  /// element. (i, i) goes to the i-th 0-cell and (i, i+1) to the (i+1)-st
  /// n-cell, which makes the assignment order-reversing.
  std::vector<std::size_t> to_cells;
  ThetaObject base;
};

LambdaPoset lambda_poset(int level, int j);

/// Quillen Theorem A comma check for the order-reversing map u : Lambda_j ->
/// G_n/I: for every cell c of I, {lambda : c <= u(lambda)} must be
/// contractible. Returns the cells that fail.
std::vector<std::size_t> lambda_comma_failures(const LambdaPoset& lambda);

// ---------------------------------------------------------------------------

/// Objects and morphisms of G_1 x G_n.
using GlobPairObject = std::pair<int, int>;
using GlobPairMorphism = std::pair<GlobMorphism, GlobMorphism>;

GlobPairMorphism compose(const GlobPairMorphism& g, const GlobPairMorphism& f);

/// alpha_n : G_{n+1} -> G_1 x G_n on objects: C_0 |-> (C_0, C_0), C_i |-> (C_1, C_{i-1}).
GlobPairObject alpha_object(int i);
/// alpha_n on normal forms, via the word whose first generator carries the
/// polarity and whose remaining generators are sources. This is only a
/// function on arrows: the generator clauses do not respect the globular
/// relations (see tests).
GlobPairMorphism alpha_morphism(const GlobMorphism& g);
/// alpha_n applied letter by letter to a generator word (first letter first).
GlobPairMorphism alpha_word(const std::vector<GlobMorphism>& word);

/// beta_n : G_1 x G_n -> G_{n+1}, the restriction of tau_{1,n}.
int beta_object(const GlobPairObject& obj);
GlobMorphism beta_morphism(const GlobPairMorphism& g);

/// gamma_{1,n} = (gamma_1 x gamma_n) o alpha_n on objects: ([m], I).
std::pair<int, ThetaObject> gamma_1n(int n, int i);

}  // namespace thetakit
