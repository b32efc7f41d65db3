// Hierarchical content names and longest-prefix-match over a prefix set.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ramp {

class MalformedNameError : public std::invalid_argument {
public:
  explicit MalformedNameError(const std::string& what)
      : std::invalid_argument("malformed name: " + what) {}
};

// Immutable '/'-separated hierarchical name. Copies are cheap (shared rep).
class Name {
public:
  Name() = default;

  // Parses a rendered name: leading '/', one or more non-empty components.
  static Name parse(std::string_view text);
  // Builds a name from components; each must be non-empty and '/'-free.
  static Name of(std::vector<std::string> components);

  bool empty() const { return rep_ == nullptr; }
  std::size_t component_count() const { return rep_ ? rep_->components.size() : 0; }
  const std::string& component(std::size_t i) const { return rep_->components[i]; }
  const std::vector<std::string>& components() const { return rep_->components; }
  const std::string& str() const;  // rendered form

  // True when this name's components are a leading subsequence of n's.
  bool is_prefix_of(const Name& n) const;

  std::size_t hash() const { return rep_ ? rep_->hash : 0; }

  friend bool operator==(const Name& a, const Name& b) {
    if (a.rep_ == b.rep_) return true;
    if (!a.rep_ || !b.rep_) return false;
    return a.rep_->hash == b.rep_->hash && a.rep_->rendered == b.rep_->rendered;
  }
  friend bool operator!=(const Name& a, const Name& b) { return !(a == b); }
  friend bool operator<(const Name& a, const Name& b) { return a.str() < b.str(); }

private:
  struct Rep {
    std::vector<std::string> components;
    std::string rendered;
    std::size_t hash;
  };
  explicit Name(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static Name make(std::vector<std::string> components);

  std::shared_ptr<const Rep> rep_;
};

// A prefix is structurally a name; it matches any name it is a leading
// subsequence of.
using NamePrefix = Name;

struct NameHash {
  std::size_t operator()(const Name& n) const { return n.hash(); }
};

// Component-level trie (one edge per component). Values live at the node
// matching the full inserted prefix.
template <class T>
class PrefixTrie {
public:
  struct Entry {
    NamePrefix prefix;
    T value;
  };

  // Returns false (and overwrites) when the prefix was already present.
  bool insert(const NamePrefix& p, T value) {
    Node* node = &root_;
    for (const auto& c : p.components()) {
      auto it = node->kids.find(c);
      if (it == node->kids.end())
        it = node->kids.emplace(c, std::make_unique<Node>()).first;
      node = it->second.get();
    }
    bool fresh = !node->entry.has_value();
    node->entry = Entry{p, std::move(value)};
    if (fresh) ++size_;
    return fresh;
  }

  const Entry* find_exact(const NamePrefix& p) const {
    const Node* node = &root_;
    for (const auto& c : p.components()) {
      auto it = node->kids.find(c);
      if (it == node->kids.end()) return nullptr;
      node = it->second.get();
    }
    return node->entry ? &*node->entry : nullptr;
  }

  // Longest prefix match; nullptr when no inserted prefix matches.
  const Entry* lpm(const Name& n) const {
    const Node* node = &root_;
    const Entry* best = node->entry ? &*node->entry : nullptr;
    for (const auto& c : n.components()) {
      auto it = node->kids.find(c);
      if (it == node->kids.end()) break;
      node = it->second.get();
      if (node->entry) best = &*node->entry;
    }
    return best;
  }

  std::size_t size() const { return size_; }

private:
  struct Node {
    std::map<std::string, std::unique_ptr<Node>, std::less<>> kids;
    std::optional<Entry> entry;
  };
  Node root_;
  std::size_t size_ = 0;
};

// Dense numbering of a fixed prefix set, with shared LPM lookup. Immutable
// after construction; copies share the trie.
class PrefixIndex {
public:
  PrefixIndex() = default;
  explicit PrefixIndex(std::vector<NamePrefix> prefixes);

  std::size_t size() const { return prefixes_.size(); }
  const NamePrefix& prefix(std::uint32_t id) const { return prefixes_[id]; }
  const std::vector<NamePrefix>& all() const { return prefixes_; }

  // Id of the longest matching prefix, or nullopt.
  std::optional<std::uint32_t> lpm(const Name& n) const;
  std::optional<std::uint32_t> exact(const NamePrefix& p) const;

private:
  std::vector<NamePrefix> prefixes_;  // sorted by rendered form
  std::shared_ptr<const PrefixTrie<std::uint32_t>> trie_;
};

}  // namespace ramp
