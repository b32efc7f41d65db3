// LRU content store. Capacity 0 disables caching entirely.
#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>

#include "rampsim/names.hpp"

namespace ramp {

class ContentStore {
public:
  explicit ContentStore(std::size_t capacity = 0) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return map_.size(); }
  bool enabled() const { return capacity_ > 0; }

  // Hit refreshes recency.
  std::optional<std::uint64_t> lookup(const Name& n);
  // Inserts (or refreshes) and evicts the least recently used entry when full.
  void insert(const Name& n, std::uint64_t content);

  bool contains(const Name& n) const { return map_.count(n) != 0; }

private:
  struct Item {
    Name name;
    std::uint64_t content;
  };
  std::size_t capacity_;
  std::list<Item> lru_;  // front = most recent
  std::unordered_map<Name, std::list<Item>::iterator, NameHash> map_;
};

}  // namespace ramp
