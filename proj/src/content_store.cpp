#include "rampsim/content_store.hpp"

namespace ramp {

std::optional<std::uint64_t> ContentStore::lookup(const Name& n) {
  auto it = map_.find(n);
  if (it == map_.end()) return std::nullopt;
  lru_.splice(lru_.begin(), lru_, it->second);
  return it->second->content;
}

void ContentStore::insert(const Name& n, std::uint64_t content) {
  if (capacity_ == 0) return;
  auto it = map_.find(n);
  if (it != map_.end()) {
    it->second->content = content;
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  if (map_.size() >= capacity_) {
    map_.erase(lru_.back().name);
    lru_.pop_back();
  }
  lru_.push_front(Item{n, content});
  map_[n] = lru_.begin();
}

}  // namespace ramp
