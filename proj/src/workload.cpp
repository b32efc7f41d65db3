#include "rampsim/workload.hpp"

#include <algorithm>
#include <cmath>

namespace ramp {

Catalog::Catalog(std::vector<NamePrefix> prefixes, std::uint32_t per_prefix)
    : per_prefix_(per_prefix) {
  std::sort(prefixes.begin(), prefixes.end());
  names_.reserve(prefixes.size() * per_prefix);
  for (const auto& p : prefixes) {
    for (std::uint32_t k = 0; k < per_prefix; ++k) {
      auto comps = p.components();
      comps.push_back("c" + std::to_string(k));
      names_.push_back(Name::of(std::move(comps)));
    }
  }
}

ZipfSampler::ZipfSampler(std::uint64_t n, double alpha) {
  cum_.resize(n);
  double acc = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    acc += 1.0 / std::pow(static_cast<double>(k + 1), alpha);
    cum_[k] = acc;
  }
  for (auto& v : cum_) v /= acc;
}

std::uint64_t ZipfSampler::sample(std::mt19937_64& rng) const {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  if (it == cum_.end()) return cum_.size() - 1;
  return static_cast<std::uint64_t>(it - cum_.begin());
}

RequestStream::RequestStream(std::uint64_t seed, double rate_per_s, const ZipfSampler* zipf)
    : rng_(seed), gap_(rate_per_s), zipf_(zipf) {}

RequestStream::Request RequestStream::next() {
  Request r;
  r.gap_s = gap_(rng_);
  r.co = zipf_->sample(rng_);
  return r;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t entity) {
  // splitmix64 over the packed inputs
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1) + entity * 0xbf58476d1ce4e5b9ull;
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

}  // namespace ramp
