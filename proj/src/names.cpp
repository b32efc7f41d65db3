#include "rampsim/names.hpp"

#include <algorithm>

namespace ramp {

namespace {

std::size_t fnv1a(std::string_view s) {
  std::size_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Name Name::make(std::vector<std::string> components) {
  auto rep = std::make_shared<Rep>();
  rep->rendered.reserve(components.size() * 8);
  for (const auto& c : components) {
    rep->rendered.push_back('/');
    rep->rendered.append(c);
  }
  rep->components = std::move(components);
  rep->hash = fnv1a(rep->rendered);
  return Name(std::move(rep));
}

Name Name::parse(std::string_view text) {
  if (text.empty()) throw MalformedNameError("empty input");
  if (text.front() != '/') throw MalformedNameError("missing leading '/' in \"" + std::string(text) + "\"");
  std::vector<std::string> components;
  std::size_t pos = 1;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    if (next == std::string_view::npos) next = text.size();
    if (next == pos) throw MalformedNameError("empty component in \"" + std::string(text) + "\"");
    components.emplace_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  if (components.empty()) throw MalformedNameError("no components in \"" + std::string(text) + "\"");
  return make(std::move(components));
}

Name Name::of(std::vector<std::string> components) {
  if (components.empty()) throw MalformedNameError("no components");
  for (const auto& c : components) {
    if (c.empty()) throw MalformedNameError("empty component");
    if (c.find('/') != std::string::npos)
      throw MalformedNameError("component contains '/': \"" + c + "\"");
  }
  return make(std::move(components));
}

const std::string& Name::str() const {
  static const std::string kEmpty;
  return rep_ ? rep_->rendered : kEmpty;
}

bool Name::is_prefix_of(const Name& n) const {
  if (!rep_ || !n.rep_) return false;
  const auto& mine = rep_->components;
  const auto& theirs = n.rep_->components;
  if (mine.size() > theirs.size()) return false;
  return std::equal(mine.begin(), mine.end(), theirs.begin());
}

PrefixIndex::PrefixIndex(std::vector<NamePrefix> prefixes) : prefixes_(std::move(prefixes)) {
  std::sort(prefixes_.begin(), prefixes_.end());
  prefixes_.erase(std::unique(prefixes_.begin(), prefixes_.end()), prefixes_.end());
  auto trie = std::make_shared<PrefixTrie<std::uint32_t>>();
  for (std::uint32_t i = 0; i < prefixes_.size(); ++i) trie->insert(prefixes_[i], i);
  trie_ = std::move(trie);
}

std::optional<std::uint32_t> PrefixIndex::lpm(const Name& n) const {
  if (!trie_) return std::nullopt;
  const auto* e = trie_->lpm(n);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<std::uint32_t> PrefixIndex::exact(const NamePrefix& p) const {
  if (!trie_) return std::nullopt;
  const auto* e = trie_->find_exact(p);
  if (!e) return std::nullopt;
  return e->value;
}

}  // namespace ramp
