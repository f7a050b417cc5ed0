#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "thetakit/monad.hpp"
#include "thetakit/presheaf.hpp"

namespace thetakit {

using SimplexThetaPresheaf = Presheaf<SimplexThetaCategory>;

// ---------------------------------------------------------------------------
// tau^* and the transfer conditions.

/// Delta x Theta_n restricted to the pairs ([m], I) with tau(m, I) supported
/// by F. F must live on the full Theta_{n+1} (not only inert maps).
SimplexThetaCategory tau_domain(const ThetaPresheaf& F);

/// (tau^* F)([m], I) = F([m](I, ..., I)).
SimplexThetaPresheaf tau_pullback(const ThetaPresheaf& F);

struct TransferReport {
  bool ok = true;
  /// (1) Y([0], -) is constant: every Y(id_[0], g) is a bijection.
  std::size_t constancy_checked = 0;
  /// (2) Y([m], I) -> Y([1], I) x_{Y([0], I)} ... x_{Y([0], I)} Y([1], I).
  std::size_t delta_checked = 0;
  /// (2') F([m](I_1..I_m)) -> F([1](I_1)) x_{F([0]())} ... x_{F([0]())} F([1](I_m)).
  std::size_t decomposition_checked = 0;
  /// (3) Y([1], -) is Segal and reduced.
  bool slice_segal = true;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
};

/// The three conditions for F on Theta_{n+1}, on the bounded support of F.
TransferReport segal_transfer_check(const ThetaPresheaf& F);

/// Y([1], -) as a presheaf on Theta_n.
ThetaPresheaf slice_one(const SimplexThetaPresheaf& Y);

// ---------------------------------------------------------------------------
// The unit comparison F_{1,n} X(C_k) = F_{n+1} X(C_k).

/// Shapes used on both sides: either a cell bound, or widths for the outer
/// length and the lengths at each lower level (e.g. {2, 2} for m <= 2, k_i <= 2).
struct ComparisonWindow {
  std::optional<int> bound;
  std::vector<int> widths;

  static ComparisonWindow cells(int s) { return {s, {}}; }
  static ComparisonWindow window(std::vector<int> w) { return {std::nullopt, std::move(w)}; }
};

struct UnitComparison {
  int k = 0;
  bool ok = true;
  /// grade -> (lhs count, rhs count, bijective on this grade).
  struct GradeRow {
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    bool bijection = true;
  };
  std::map<int, GradeRow> grades;
  /// lhs element name -> rhs element name.
  std::vector<std::pair<std::string, std::string>> witness;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
};

/// Side A: F_{n+1}X(C_k) = coproduct over J in Theta_k of X(iota J). Side B:
/// T_{1,n}X([1], C_{k-1}) for k >= 1 (X(C_0) for k = 0), after beta
/// transport. The map splits J = [j](J_1..J_j) into its columns and reads
/// each column through sigma.
UnitComparison unit_comparison(const GlobularSet& X, int k, const ComparisonWindow& window);

// ---------------------------------------------------------------------------
// Reconstruction.

/// X on Theta_{n+1} up to `bound` cells from Y on Delta x Theta_n: X(I) for
/// I = [m](I_1..I_m) is the fibre product of Y([1], I_i) over Y([0], [0]()).
/// Y must support ([r], I_i) for every interval length r a morphism can
/// spread a column over (r <= m of the largest target), and be reduced and
/// Delta-Segal there. Throws SupportError or InvariantError otherwise.
ThetaPresheaf reconstruct(const SimplexThetaPresheaf& Y, int bound);

struct RoundTrip {
  bool ok = true;
  std::size_t objects = 0;
  std::size_t morphisms = 0;
  /// Per object key: element name -> element name.
  nlohmann::json witness = nlohmann::json::object();
  std::vector<std::string> failures;
};

/// F ~ reconstruct(tau^* F) on objects of at most `bound` cells, via the
/// spine maps x |-> (F(column_i)(x))_i; bijective and natural.
RoundTrip roundtrip_theta(const ThetaPresheaf& F, const ThetaPresheaf& rebuilt, int bound);

/// Y ~ tau^* reconstruct(Y) on the pairs ([m], I) with tau(m, I) of at most
/// `bound` cells, via y |-> (Y(rho_i, id)(y))_i.
RoundTrip roundtrip_tau(const SimplexThetaPresheaf& Y, const SimplexThetaPresheaf& rebuilt_tau, int bound);

// ---------------------------------------------------------------------------
// Iterated pullback along tau_{2,0}.

using DoubleSimplexCategory = ProductCategory<SimplexCategory, ProductCategory<SimplexCategory, ThetaCategory>>;
using DoubleSimplexPresheaf = Presheaf<DoubleSimplexCategory>;

/// Pullback of F on Theta_2 to Delta x Delta x Theta_0 along tau_{2,0}
/// directly, and as two single-step pullbacks.
DoubleSimplexPresheaf tau2_direct(const ThetaPresheaf& F, int max_m);
DoubleSimplexPresheaf tau2_stepwise(const ThetaPresheaf& F, int max_m);

}  // namespace thetakit
