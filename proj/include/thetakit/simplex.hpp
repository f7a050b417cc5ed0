#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace thetakit {

/// The ordinal [n] = {0 < 1 < ... < n} of the simplex category.
struct SimplexObject {
  int n = 0;
  auto operator<=>(const SimplexObject&) const = default;
};

/// A weakly monotone map [src] -> [tgt], stored as its dense value table.
class SimplexMap {
 public:
  SimplexMap() = default;
  /// Throws DomainError unless `values` is monotone, in range and of length src+1.
  SimplexMap(int src, int tgt, std::vector<int> values);

  static SimplexMap identity(int n);

  int src() const { return src_; }
  int tgt() const { return tgt_; }
  int operator()(int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const { return values_; }

  bool is_inert() const;
  bool is_active() const;
  bool is_identity() const { return src_ == tgt_ && is_inert(); }

  std::string to_string() const;

  auto operator<=>(const SimplexMap&) const = default;

 private:
  int src_ = 0;
  int tgt_ = 0;
  std::vector<int> values_{0};
};

/// Pointwise composite g o f. Throws DomainError if f.tgt != g.src.
SimplexMap compose(const SimplexMap& g, const SimplexMap& f);

struct SimplexFactorization {
  SimplexMap active;
  SimplexMap inert;
};

/// The unique factorization f = inert o active.
SimplexFactorization factorize(const SimplexMap& f);

/// All monotone maps [a] -> [b] in lexicographic order of value tables.
std::vector<SimplexMap> enum_hom_simplex(int a, int b);

/// All active maps [a] -> [b] (endpoint preserving), lexicographic.
std::vector<SimplexMap> enum_active_simplex(int a, int b);

}  // namespace thetakit
