#include <sstream>

#include "hash_util.hpp"
#include "thetakit/error.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

namespace {

std::size_t hash_morphism(const ThetaObject& src, const ThetaObject& tgt, const std::vector<int>& outer,
                          const ThetaMorphism::Rows& inner) {
  std::size_t h = detail::hash_mix(src.hash(), tgt.hash());
  for (int v : outer) h = detail::hash_mix(h, static_cast<std::size_t>(v));
  for (const auto& row : inner) {
    h = detail::hash_mix(h, 0xabcdef);
    for (const auto& m : row) h = detail::hash_mix(h, m.hash());
  }
  return h;
}

}  // namespace

ThetaMorphism::ThetaMorphism(ThetaObject src, ThetaObject tgt, std::vector<int> outer, Rows inner)
    : src_(src), tgt_(tgt), outer_(std::move(outer)), inner_(std::move(inner)) {
  if (src_.level() != tgt_.level())
    throw DomainError("morphism endpoints at different levels: " + src_.to_string() + " -> " + tgt_.to_string());
  if (src_.level() == 0) {
    if (!outer_.empty() || !inner_.empty()) throw DomainError("level-0 morphism carries data");
  } else {
    const int m = src_.length();
    const int p = tgt_.length();
    if (outer_.size() != static_cast<std::size_t>(m) + 1 || inner_.size() != static_cast<std::size_t>(m))
      throw DomainError("malformed morphism shape " + src_.to_string() + " -> " + tgt_.to_string());
    for (int i = 0; i <= m; ++i) {
      const int v = outer_[static_cast<std::size_t>(i)];
      if (v < 0 || v > p || (i > 0 && v < outer_[static_cast<std::size_t>(i) - 1]))
        throw DomainError("outer map is not a monotone map [" + std::to_string(m) + "]->[" + std::to_string(p) + "]");
    }
    for (int i = 1; i <= m; ++i) {
      const auto& row = inner_[static_cast<std::size_t>(i) - 1];
      const int lo = outer_[static_cast<std::size_t>(i) - 1];
      const int hi = outer_[static_cast<std::size_t>(i)];
      if (row.size() != static_cast<std::size_t>(hi - lo))
        throw DomainError("inner row " + std::to_string(i) + " does not match the outer interval");
      for (int j = lo + 1; j <= hi; ++j) {
        const auto& psi = row[static_cast<std::size_t>(j - lo - 1)];
        if (psi.src() != src_.children()[static_cast<std::size_t>(i) - 1] ||
            psi.tgt() != tgt_.children()[static_cast<std::size_t>(j) - 1])
          throw DomainError("inner morphism (" + std::to_string(i) + "," + std::to_string(j) +
                            ") has wrong endpoints");
      }
    }
  }
  hash_ = hash_morphism(src_, tgt_, outer_, inner_);
}

ThetaMorphism ThetaMorphism::identity(const ThetaObject& obj) {
  if (obj.level() == 0) return ThetaMorphism(obj, obj, {}, {});
  const int m = obj.length();
  std::vector<int> outer(static_cast<std::size_t>(m) + 1);
  Rows inner(static_cast<std::size_t>(m));
  for (int i = 0; i <= m; ++i) outer[static_cast<std::size_t>(i)] = i;
  for (int i = 1; i <= m; ++i)
    inner[static_cast<std::size_t>(i) - 1].push_back(identity(obj.children()[static_cast<std::size_t>(i) - 1]));
  return ThetaMorphism(obj, obj, std::move(outer), std::move(inner));
}

SimplexMap ThetaMorphism::outer() const {
  if (level() == 0) throw DomainError("level-0 morphism has no outer map");
  return SimplexMap(src_.length(), tgt_.length(), outer_);
}

const ThetaMorphism& ThetaMorphism::inner(int i, int j) const {
  const int lo = outer_[static_cast<std::size_t>(i) - 1];
  return inner_[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j - lo - 1)];
}

bool ThetaMorphism::is_inert() const {
  if (level() == 0) return true;
  for (std::size_t i = 0; i < outer_.size(); ++i)
    if (outer_[i] != outer_[0] + static_cast<int>(i)) return false;
  for (const auto& row : inner_)
    for (const auto& m : row)
      if (!m.is_inert()) return false;
  return true;
}

bool ThetaMorphism::is_active() const {
  if (level() == 0) return true;
  if (outer_.front() != 0 || outer_.back() != tgt_.length()) return false;
  for (const auto& row : inner_)
    for (const auto& m : row)
      if (!m.is_active()) return false;
  return true;
}

bool ThetaMorphism::is_identity() const { return src_ == tgt_ && *this == identity(src_); }

std::string ThetaMorphism::to_string() const {
  if (level() == 0) return "id*";
  std::ostringstream os;
  os << "{(";
  for (std::size_t i = 0; i < outer_.size(); ++i) os << (i ? "," : "") << outer_[i];
  os << ')';
  if (level() >= 2) {
    os << ';';
    for (std::size_t i = 0; i < inner_.size(); ++i) {
      os << (i ? "|" : "");
      for (std::size_t j = 0; j < inner_[i].size(); ++j) os << (j ? "," : "") << inner_[i][j].to_string();
    }
  }
  os << '}';
  return os.str();
}

bool operator==(const ThetaMorphism& a, const ThetaMorphism& b) {
  return a.hash_ == b.hash_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.outer_ == b.outer_ && a.inner_ == b.inner_;
}

std::strong_ordering operator<=>(const ThetaMorphism& a, const ThetaMorphism& b) {
  if (auto c = a.src_ <=> b.src_; c != 0) return c;
  if (auto c = a.tgt_ <=> b.tgt_; c != 0) return c;
  if (auto c = a.outer_ <=> b.outer_; c != 0) return c;
  return a.inner_ <=> b.inner_;
}

ThetaMorphism compose(const ThetaMorphism& g, const ThetaMorphism& f) {
  if (f.tgt() != g.src())
    throw DomainError("cannot compose: target " + f.tgt().to_string() + " != source " + g.src().to_string());
  if (f.level() == 0) return f;
  const int m = f.src().length();
  const auto& fo = f.outer_values();
  const auto& go = g.outer_values();
  std::vector<int> outer(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) outer[static_cast<std::size_t>(i)] = go[static_cast<std::size_t>(fo[static_cast<std::size_t>(i)])];
  ThetaMorphism::Rows inner(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    auto& row = inner[static_cast<std::size_t>(i) - 1];
    for (int l = fo[static_cast<std::size_t>(i) - 1] + 1; l <= fo[static_cast<std::size_t>(i)]; ++l)
      for (int j = go[static_cast<std::size_t>(l) - 1] + 1; j <= go[static_cast<std::size_t>(l)]; ++j)
        row.push_back(compose(g.inner(l, j), f.inner(i, l)));
  }
  return ThetaMorphism(f.src(), g.tgt(), std::move(outer), std::move(inner));
}

ThetaFactorization factorize(const ThetaMorphism& f) {
  if (f.level() == 0) return {f, f};
  const int level = f.level();
  const int m = f.src().length();
  const auto& fo = f.outer_values();
  const int lo = fo.front();
  const int hi = fo.back();

  std::vector<ThetaObject> middle_children;
  std::vector<int> act_outer(static_cast<std::size_t>(m) + 1);
  ThetaMorphism::Rows act_inner(static_cast<std::size_t>(m));
  std::vector<ThetaMorphism> inert_parts;
  for (int i = 0; i <= m; ++i) act_outer[static_cast<std::size_t>(i)] = fo[static_cast<std::size_t>(i)] - lo;
  for (int i = 1; i <= m; ++i) {
    for (int j = fo[static_cast<std::size_t>(i) - 1] + 1; j <= fo[static_cast<std::size_t>(i)]; ++j) {
      auto inner = factorize(f.inner(i, j));
      middle_children.push_back(inner.active.tgt());
      act_inner[static_cast<std::size_t>(i) - 1].push_back(std::move(inner.active));
      inert_parts.push_back(std::move(inner.inert));
    }
  }
  ThetaObject middle = ThetaObject::make(level, std::move(middle_children));

  std::vector<int> inert_outer(static_cast<std::size_t>(hi - lo) + 1);
  ThetaMorphism::Rows inert_inner(static_cast<std::size_t>(hi - lo));
  for (int j = 0; j <= hi - lo; ++j) inert_outer[static_cast<std::size_t>(j)] = lo + j;
  for (int j = 0; j < hi - lo; ++j) inert_inner[static_cast<std::size_t>(j)].push_back(std::move(inert_parts[static_cast<std::size_t>(j)]));

  return {ThetaMorphism(f.src(), middle, std::move(act_outer), std::move(act_inner)),
          ThetaMorphism(middle, f.tgt(), std::move(inert_outer), std::move(inert_inner))};
}

}  // namespace thetakit
