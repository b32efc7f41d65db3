// Request workload: a content catalog laid over the announced prefixes and a
// Zipf popularity sampler with exponential inter-request gaps.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rampsim/names.hpp"

namespace ramp {

// Content objects numbered 0..size()-1, `per_prefix` objects under each
// prefix in sorted-prefix order. Object k under prefix P is named P + "cK".
class Catalog {
public:
  Catalog() = default;
  Catalog(std::vector<NamePrefix> prefixes, std::uint32_t per_prefix);

  std::uint64_t size() const { return names_.size(); }
  std::uint32_t per_prefix() const { return per_prefix_; }
  const Name& name_of(std::uint64_t co) const { return names_[co]; }

private:
  std::uint32_t per_prefix_ = 0;
  std::vector<Name> names_;  // pre-rendered, index = object id
};

// Zipf(alpha) over ranks 1..n via precomputed cumulative weights and binary
// search. alpha = 0 gives the uniform distribution.
class ZipfSampler {
public:
  ZipfSampler() = default;
  ZipfSampler(std::uint64_t n, double alpha);

  std::uint64_t sample(std::mt19937_64& rng) const;
  std::uint64_t size() const { return cum_.size(); }

private:
  std::vector<double> cum_;
};

// Per-consumer deterministic request stream; draws are independent of how
// the network answers, so paired runs see identical sequences.
class RequestStream {
public:
  RequestStream() = default;
  RequestStream(std::uint64_t seed, double rate_per_s, const ZipfSampler* zipf);

  struct Request {
    double gap_s;
    std::uint64_t co;
  };
  Request next();

private:
  std::mt19937_64 rng_;
  std::exponential_distribution<double> gap_;
  const ZipfSampler* zipf_ = nullptr;
};

// Stable seed derivation for independent per-entity streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t entity);

}  // namespace ramp
