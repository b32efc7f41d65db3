#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rampsim/names.hpp"

using namespace ramp;

TEST_CASE("parse splits components") {
  Name n = Name::parse("/a/b/c");
  CHECK(n.component_count() == 3);
  CHECK(n.component(0) == "a");
  CHECK(n.component(1) == "b");
  CHECK(n.component(2) == "c");
  CHECK(Name::parse("/a").component_count() == 1);
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(Name::parse(""), MalformedNameError);
  CHECK_THROWS_AS(Name::parse("//a"), MalformedNameError);
  CHECK_THROWS_AS(Name::parse("a/b"), MalformedNameError);
  CHECK_THROWS_AS(Name::parse("/a//b"), MalformedNameError);
  CHECK_THROWS_AS(Name::parse("/a/"), MalformedNameError);
  CHECK_THROWS_AS(Name::parse("/"), MalformedNameError);
  CHECK_THROWS_AS(Name::of({}), MalformedNameError);
  CHECK_THROWS_AS(Name::of({""}), MalformedNameError);
  CHECK_THROWS_AS(Name::of({"a/b"}), MalformedNameError);
}

TEST_CASE("render round-trips") {
  CHECK(Name::parse("/att/video/movie1/s3").str() == "/att/video/movie1/s3");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Name n = oracle::random_name(rng);
    CHECK(Name::parse(n.str()) == n);
  }
}

TEST_CASE("prefix relation is leading-subsequence") {
  Name n = Name::parse("/att/video/movie1/s3");
  CHECK(Name::parse("/att").is_prefix_of(n));
  CHECK(Name::parse("/att/video").is_prefix_of(n));
  CHECK(n.is_prefix_of(n));
  CHECK_FALSE(Name::parse("/att/videos").is_prefix_of(n));
  CHECK_FALSE(Name::parse("/att/video/movie1/s3/x").is_prefix_of(n));
}

TEST_CASE("trie lpm picks the longest match") {
  PrefixTrie<int> trie;
  trie.insert(Name::parse("/att"), 1);
  trie.insert(Name::parse("/att/video"), 2);
  const auto* hit = trie.lpm(Name::parse("/att/video/movie1/s3"));
  REQUIRE(hit != nullptr);
  CHECK(hit->value == 2);
  CHECK(hit->prefix == Name::parse("/att/video"));
  CHECK(trie.lpm(Name::parse("/x/y")) == nullptr);
}

TEST_CASE("trie lpm agrees with the linear-scan oracle") {
  std::mt19937_64 rng(42);
  std::vector<NamePrefix> prefixes;
  PrefixTrie<std::uint32_t> trie;
  for (int i = 0; i < 200; ++i) {
    Name p = oracle::random_name(rng, 3);
    if (trie.insert(p, static_cast<std::uint32_t>(prefixes.size()))) prefixes.push_back(p);
  }
  int hits = 0;
  for (int q = 0; q < 1000; ++q) {
    Name n = oracle::random_name(rng);
    auto want = oracle::naive_lpm(n, prefixes);
    const auto* got = trie.lpm(n);
    if (want) {
      REQUIRE(got != nullptr);
      CHECK(got->prefix == *want);
      CHECK(got->prefix.is_prefix_of(n));
      ++hits;
    } else {
      CHECK(got == nullptr);
    }
  }
  CHECK(hits > 100);  // the generator must actually exercise matches
}

TEST_CASE("prefix index maps ids both ways") {
  PrefixIndex idx({Name::parse("/b"), Name::parse("/a"), Name::parse("/a")});
  CHECK(idx.size() == 2);
  CHECK(idx.prefix(0) == Name::parse("/a"));
  CHECK(idx.exact(Name::parse("/b")) == 1u);
  CHECK(idx.lpm(Name::parse("/a/x")) == 0u);
  CHECK_FALSE(idx.lpm(Name::parse("/c")).has_value());
}
