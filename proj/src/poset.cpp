#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "thetakit/error.hpp"
#include "thetakit/poset.hpp"

namespace thetakit {

FinitePoset::FinitePoset(std::size_t size) : size_(size), rel_(size * size, 0) {
  for (std::size_t i = 0; i < size; ++i) set_leq(i, i);
}

bool FinitePoset::is_partial_order() const {
  for (std::size_t a = 0; a < size_; ++a) {
    if (!leq(a, a)) return false;
    for (std::size_t b = 0; b < size_; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) return false;
      if (!leq(a, b)) continue;
      for (std::size_t c = 0; c < size_; ++c)
        if (leq(b, c) && !leq(a, c)) return false;
    }
  }
  return true;
}

FinitePoset FinitePoset::subposet(const std::vector<std::size_t>& elements) const {
  FinitePoset out(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (leq(elements[i], elements[j])) out.set_leq(i, j);
  return out;
}

FinitePoset FinitePoset::opposite() const {
  FinitePoset out(size_);
  for (std::size_t a = 0; a < size_; ++a)
    for (std::size_t b = 0; b < size_; ++b)
      if (leq(a, b)) out.set_leq(b, a);
  return out;
}

std::optional<std::size_t> FinitePoset::minimum(const std::vector<std::size_t>& subset) const {
  for (auto cand : subset)
    if (std::all_of(subset.begin(), subset.end(), [&](std::size_t x) { return leq(cand, x); })) return cand;
  return std::nullopt;
}

std::size_t FinitePoset::height() const {
  // Longest chain ending at each element, processed in a linear extension.
  std::vector<std::size_t> order(size_);
  for (std::size_t i = 0; i < size_; ++i) order[i] = i;
  std::vector<std::size_t> below(size_, 0);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j)
      if (less(j, i)) ++below[i];
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  std::vector<std::size_t> best(size_, 1);
  std::size_t h = 0;
  for (auto x : order) {
    for (auto y : order)
      if (less(y, x)) best[x] = std::max(best[x], best[y] + 1);
    h = std::max(h, best[x]);
  }
  return h;
}

std::string HomologyGroup::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << '^' << rank;
    first = false;
  }
  for (auto t : torsion) {
    os << (first ? "" : "+") << "Z/" << t;
    first = false;
  }
  return os.str();
}

namespace {

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantError("integer overflow in Smith normal form");
  return r;
}

long long checked_sub(long long a, long long b) {
  long long r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw InvariantError("integer overflow in Smith normal form");
  return r;
}

}  // namespace

std::vector<long long> smith_invariants(std::vector<std::vector<long long>> a) {
  std::vector<long long> out;
  const std::size_t rows = a.size();
  if (rows == 0) return out;
  const std::size_t cols = a.front().size();

  auto row_op = [&](std::size_t dst, std::size_t src, long long q) {  // row dst -= q * row src
    for (std::size_t j = 0; j < cols; ++j)
      if (a[src][j] != 0) a[dst][j] = checked_sub(a[dst][j], checked_mul(q, a[src][j]));
  };
  auto col_op = [&](std::size_t dst, std::size_t src, long long q) {
    for (std::size_t i = 0; i < rows; ++i)
      if (a[i][src] != 0) a[i][dst] = checked_sub(a[i][dst], checked_mul(q, a[i][src]));
  };
  auto move_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    std::swap(a[t], a[i]);
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][j]);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi == rows || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    move_pivot(t, pi, pj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) {
          row_op(i, t, a[i][t] / a[t][t]);
          if (a[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (a[t][j] != 0) {
          col_op(j, t, a[t][j] / a[t][t]);
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) {
        // A smaller remainder sits in row or column t; make it the pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a[i][t] != 0 && std::llabs(a[i][t]) < std::llabs(a[bi][bj])) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[t][j] != 0 && std::llabs(a[t][j]) < std::llabs(a[bi][bj])) {
            bi = t;
            bj = j;
          }
        if (bi != t) std::swap(a[t], a[bi]);
        if (bj != t)
          for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][bj]);
        continue;
      }
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_op(t, bad, -1);
    }
    out.push_back(std::llabs(a[t][t]));
  }
  return out;
}

namespace {

std::vector<HomologyGroup> homology_impl(const FinitePoset& poset, std::vector<std::size_t>* counts) {
  // Chains by degree; each chain is a strictly increasing sequence.
  std::vector<std::vector<std::vector<std::size_t>>> chains;
  std::vector<std::size_t> current;
  auto extend = [&](auto&& self) -> void {
    const std::size_t d = current.size() - 1;
    if (chains.size() <= d) chains.resize(d + 1);
    chains[d].push_back(current);
    for (std::size_t x = 0; x < poset.size(); ++x)
      if (poset.less(current.back(), x)) {
        current.push_back(x);
        self(self);
        current.pop_back();
      }
  };
  for (std::size_t x = 0; x < poset.size(); ++x) {
    current = {x};
    extend(extend);
  }
  if (counts)
    for (const auto& c : chains) counts->push_back(c.size());
  if (chains.empty()) return {};

  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(chains.size());
  for (std::size_t d = 0; d < chains.size(); ++d) {
    std::sort(chains[d].begin(), chains[d].end());
    for (std::size_t i = 0; i < chains[d].size(); ++i) index[d][chains[d][i]] = i;
  }

  // boundary[d] : C_d -> C_{d-1}, d >= 1; rows indexed by (d-1)-chains.
  std::vector<std::vector<long long>> invariants(chains.size() + 1);
  for (std::size_t d = 1; d < chains.size(); ++d) {
    std::vector<std::vector<long long>> m(chains[d - 1].size(), std::vector<long long>(chains[d].size(), 0));
    for (std::size_t c = 0; c < chains[d].size(); ++c)
      for (std::size_t i = 0; i <= d; ++i) {
        auto face = chains[d][c];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        m[index[d - 1].at(face)][c] += (i % 2 == 0) ? 1 : -1;
      }
    invariants[d] = smith_invariants(std::move(m));
  }

  std::vector<HomologyGroup> out(chains.size());
  for (std::size_t d = 0; d < chains.size(); ++d) {
    const auto rank_out = static_cast<long long>(invariants[d].size());
    const auto rank_in = static_cast<long long>(invariants[d + 1].size());
    out[d].rank = static_cast<long long>(chains[d].size()) - rank_out - rank_in;
    for (auto f : invariants[d + 1])
      if (f > 1) out[d].torsion.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<HomologyGroup> order_complex_homology(const FinitePoset& poset) { return homology_impl(poset, nullptr); }

ContractibilityReport nerve_contractibility(const FinitePoset& poset) {
  ContractibilityReport r;
  r.groups = homology_impl(poset, &r.simplices);
  r.contractible = !r.groups.empty() && r.groups[0].rank == 1 && r.groups[0].torsion.empty();
  for (std::size_t d = 1; d < r.groups.size(); ++d)
    if (!r.groups[d].trivial()) r.contractible = false;
  return r;
}

}  // namespace thetakit
