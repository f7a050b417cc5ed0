#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thetakit {

/// A finite partial order on {0, ..., size-1} stored as a dense relation.
class FinitePoset {
 public:
  FinitePoset() = default;
  explicit FinitePoset(std::size_t size);

  std::size_t size() const { return size_; }
  bool leq(std::size_t a, std::size_t b) const { return rel_[a * size_ + b] != 0; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  void set_leq(std::size_t a, std::size_t b) { rel_[a * size_ + b] = 1; }

  /// Checks reflexivity, antisymmetry and transitivity.
  bool is_partial_order() const;
  /// Induced order on the listed elements (in the given order).
  FinitePoset subposet(const std::vector<std::size_t>& elements) const;
  FinitePoset opposite() const;
  /// Least element of the listed subset, if it has one.
  std::optional<std::size_t> minimum(const std::vector<std::size_t>& subset) const;
  /// Length of the longest strict chain, counted in elements.
  std::size_t height() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> rel_;
};

/// H_d of a chain complex over the integers: free rank plus torsion
/// coefficients (each > 1).
struct HomologyGroup {
  long long rank = 0;
  std::vector<long long> torsion;

  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Integral homology of the order complex (the nerve of the poset viewed as
/// a category, restricted to nondegenerate simplices), in every degree up to
/// the dimension of the complex.
std::vector<HomologyGroup> order_complex_homology(const FinitePoset& poset);

struct ContractibilityReport {
  bool contractible = false;
  std::vector<HomologyGroup> groups;
  /// Number of nondegenerate simplices in each degree.
  std::vector<std::size_t> simplices;
};

/// H_0 = Z and every higher group vanishes. This is the homological proxy
/// for weak contractibility used throughout.
ContractibilityReport nerve_contractibility(const FinitePoset& poset);

/// Invariant factors of an integer matrix (Smith normal form diagonal,
/// nonzero entries only). Rows are given densely.
std::vector<long long> smith_invariants(std::vector<std::vector<long long>> matrix);

}  // namespace thetakit
