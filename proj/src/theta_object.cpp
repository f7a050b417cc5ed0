#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "hash_util.hpp"
#include "thetakit/error.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

namespace detail {

struct ThetaNode {
  int level = 0;
  std::vector<ThetaObject> children;
  int cells = 1;
  std::size_t hash = 0;
};

namespace {

struct NodeKeyHash {
  std::size_t operator()(const ThetaNode* n) const noexcept { return n->hash; }
};

struct NodeKeyEq {
  bool operator()(const ThetaNode* a, const ThetaNode* b) const noexcept {
    return a->level == b->level && a->children == b->children;
  }
};

class InternTable {
 public:
  InternTable() {
    point_.level = 0;
    point_.cells = 1;
    point_.hash = hash_mix(0x5bd1e995, 0);
    table_.insert(&point_);
  }

  const ThetaNode* point() const { return &point_; }

  const ThetaNode* intern(int level, std::vector<ThetaObject> children) {
    ThetaNode probe;
    probe.level = level;
    probe.children = std::move(children);
    std::size_t h = hash_mix(0x5bd1e995, static_cast<std::size_t>(level));
    int cells = static_cast<int>(probe.children.size()) + 1;
    for (const auto& c : probe.children) {
      h = hash_mix(h, c.hash());
      cells += c.cell_count();
    }
    probe.hash = hash_mix(h, probe.children.size());
    probe.cells = cells;

    std::lock_guard lock(mutex_);
    if (auto it = table_.find(&probe); it != table_.end()) return *it;
    nodes_.push_back(std::move(probe));
    const ThetaNode* node = &nodes_.back();
    table_.insert(node);
    return node;
  }

 private:
  ThetaNode point_;
  std::mutex mutex_;
  std::deque<ThetaNode> nodes_;
  std::unordered_set<const ThetaNode*, NodeKeyHash, NodeKeyEq> table_;
};

InternTable& intern_table() {
  static InternTable table;
  return table;
}

}  // namespace
}  // namespace detail

ThetaObject::ThetaObject() : node_(detail::intern_table().point()) {}

ThetaObject ThetaObject::make(int level, std::vector<ThetaObject> children) {
  if (level <= 0) throw DomainError("ThetaObject::make needs level >= 1; use point() for level 0");
  for (const auto& c : children)
    if (c.level() != level - 1)
      throw DomainError("child " + c.to_string() + " has level " + std::to_string(c.level()) +
                        ", expected " + std::to_string(level - 1));
  return ThetaObject(detail::intern_table().intern(level, std::move(children)));
}

ThetaObject ThetaObject::empty(int level) { return level == 0 ? point() : make(level, {}); }

int ThetaObject::level() const { return node_->level; }
int ThetaObject::length() const { return static_cast<int>(node_->children.size()); }
const std::vector<ThetaObject>& ThetaObject::children() const { return node_->children; }
int ThetaObject::cell_count() const { return node_->cells; }
std::size_t ThetaObject::hash() const { return node_->hash; }

std::string ThetaObject::to_string() const {
  if (level() == 0) return "*";
  std::ostringstream os;
  os << '[' << length() << ']';
  if (level() >= 2) {
    os << '(';
    for (std::size_t i = 0; i < children().size(); ++i) os << (i ? "," : "") << children()[i].to_string();
    os << ')';
  }
  return os.str();
}

std::strong_ordering operator<=>(const ThetaObject& a, const ThetaObject& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.level() <=> b.level(); c != 0) return c;
  if (auto c = a.cell_count() <=> b.cell_count(); c != 0) return c;
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (auto c = a.children()[i] <=> b.children()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

ThetaObject globe(int level, int k) {
  if (k < 0 || k > level) throw DomainError("globe dimension out of range");
  if (k == 0) return ThetaObject::empty(level);
  return ThetaObject::make(level, {globe(level - 1, k - 1)});
}

std::optional<int> globe_dimension(const ThetaObject& obj) {
  if (obj.length() == 0) return 0;
  if (obj.length() != 1) return std::nullopt;
  auto inner = globe_dimension(obj.children()[0]);
  if (!inner) return std::nullopt;
  return *inner + 1;
}

}  // namespace thetakit
