#include "thetakit/simplex.hpp"

#include <sstream>

#include "thetakit/error.hpp"

namespace thetakit {

SimplexMap::SimplexMap(int src, int tgt, std::vector<int> values)
    : src_(src), tgt_(tgt), values_(std::move(values)) {
  if (src < 0 || tgt < 0) throw DomainError("simplex map with negative ordinal");
  if (values_.size() != static_cast<std::size_t>(src) + 1)
    throw DomainError("simplex map value table has wrong length: " + to_string());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > tgt) throw DomainError("simplex map value out of range: " + to_string());
    if (i > 0 && values_[i] < values_[i - 1]) throw DomainError("simplex map not monotone: " + to_string());
  }
}

SimplexMap SimplexMap::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return SimplexMap(n, n, std::move(v));
}

bool SimplexMap::is_inert() const {
  for (int i = 0; i <= src_; ++i)
    if ((*this)(i) != (*this)(0) + i) return false;
  return true;
}

bool SimplexMap::is_active() const { return (*this)(0) == 0 && (*this)(src_) == tgt_; }

std::string SimplexMap::to_string() const {
  std::ostringstream os;
  os << '[' << src_ << "]->[" << tgt_ << "]:(";
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
  os << ')';
  return os.str();
}

SimplexMap compose(const SimplexMap& g, const SimplexMap& f) {
  if (f.tgt() != g.src())
    throw DomainError("cannot compose " + g.to_string() + " after " + f.to_string());
  std::vector<int> v(static_cast<std::size_t>(f.src()) + 1);
  for (int i = 0; i <= f.src(); ++i) v[static_cast<std::size_t>(i)] = g(f(i));
  return SimplexMap(f.src(), g.tgt(), std::move(v));
}

SimplexFactorization factorize(const SimplexMap& f) {
  const int lo = f(0);
  const int hi = f(f.src());
  std::vector<int> act(static_cast<std::size_t>(f.src()) + 1);
  for (int i = 0; i <= f.src(); ++i) act[static_cast<std::size_t>(i)] = f(i) - lo;
  std::vector<int> in(static_cast<std::size_t>(hi - lo) + 1);
  for (int i = 0; i <= hi - lo; ++i) in[static_cast<std::size_t>(i)] = lo + i;
  return {SimplexMap(f.src(), hi - lo, std::move(act)), SimplexMap(hi - lo, f.tgt(), std::move(in))};
}

namespace {

void extend_monotone(int a, int b, int lo, std::vector<int>& prefix, std::vector<SimplexMap>& out) {
  if (static_cast<int>(prefix.size()) == a + 1) {
    out.emplace_back(a, b, prefix);
    return;
  }
  for (int v = lo; v <= b; ++v) {
    prefix.push_back(v);
    extend_monotone(a, b, v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<SimplexMap> enum_hom_simplex(int a, int b) {
  std::vector<SimplexMap> out;
  std::vector<int> prefix;
  extend_monotone(a, b, 0, prefix, out);
  return out;
}

std::vector<SimplexMap> enum_active_simplex(int a, int b) {
  std::vector<SimplexMap> out;
  if (a == 0) {
    if (b == 0) out.push_back(SimplexMap::identity(0));
    return out;
  }
  std::vector<int> prefix{0};
  std::vector<SimplexMap> all;
  extend_monotone(a, b, 0, prefix, all);
  for (auto& m : all)
    if (m(a) == b) out.push_back(std::move(m));
  return out;
}

}  // namespace thetakit
