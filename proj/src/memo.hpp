#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

namespace thetakit::detail {

/// Write-once memo table. Values are computed outside the lock; if two
/// workers race on a key the first insertion wins and both observe it.
/// Returned references stay valid for the table's lifetime.
template <class Key, class Value, class Hash = std::hash<Key>>
class MemoTable {
 public:
  template <class Compute>
  const Value& get(const Key& key, Compute&& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return *it->second;
    }
    auto value = std::make_unique<Value>(compute());
    std::lock_guard lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, std::move(value));
    return *it->second;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<Key, std::unique_ptr<Value>, Hash> map_;
};

struct PairHash {
  template <class A, class B>
  std::size_t operator()(const std::pair<A, B>& p) const noexcept {
    std::size_t h = std::hash<A>{}(p.first);
    return h ^ (std::hash<B>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

}  // namespace thetakit::detail
