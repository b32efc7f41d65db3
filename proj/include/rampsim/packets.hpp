// Wire messages for both forwarding planes. The `tag` field is simulator
// instrumentation only (trace correlation); it is not part of the protocol
// header and is excluded from the structural anonymity checks.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "rampsim/names.hpp"
#include "rampsim/topology.hpp"

namespace ramp {

using Aid = std::uint32_t;
using ConsumerId = std::uint32_t;
using Nonce = std::uint32_t;
using Tag = std::uint64_t;

// Previous-hop value meaning "this router itself" (local consumer side).
inline constexpr RouterId kLocalHop = 0xffffffffu;

inline constexpr std::uint32_t kInterestBytes = 64;
inline constexpr std::uint32_t kDataBytes = 1064;  // 1 KB payload + header
inline constexpr std::uint32_t kErrorBytes = 64;

enum class ErrorCode : std::uint8_t { Loop, NoRoute, NoContent, LinkFailure };
const char* to_string(ErrorCode c);

struct Interest {
  Name name;
  Aid aid = 0;           // hop-local label for the (anonymous) origin
  RouterId anchor = 0;   // bound by the origin router
  double distance = 0;   // sender's stated cost to the anchor
  Tag tag = 0;
};

struct DataPacket {
  Name name;
  Aid aid = 0;           // label of the intended recipient hop
  std::uint64_t content = 0;  // opaque payload token
  std::uint64_t sp = 0;       // opaque security payload (verification stubbed)
  Tag tag = 0;
};

struct ErrorMessage {
  std::optional<Name> name;
  Aid aid = 0;
  std::optional<RouterId> anchor;
  ErrorCode code = ErrorCode::NoRoute;
  Tag tag = 0;
};

struct NdnInterest {
  Name name;
  Nonce nonce = 0;
  Tag tag = 0;
};

struct NdnData {
  Name name;
  std::uint64_t content = 0;
  Tag tag = 0;
};

using Message = std::variant<Interest, DataPacket, ErrorMessage, NdnInterest, NdnData>;

std::uint32_t wire_bytes(const Message& m);

// What a router asks the engine to do after processing one input.
struct SendToNeighbor {
  RouterId to;
  Message msg;
};
struct DeliverToConsumer {
  ConsumerId consumer;
  Name name;
  std::uint64_t content;
  Tag tag;
};
struct NotifyConsumer {
  ConsumerId consumer;
  std::optional<Name> name;
  ErrorCode code;
  Tag tag;
};
using Emission = std::variant<SendToNeighbor, DeliverToConsumer, NotifyConsumer>;
using Emissions = std::vector<Emission>;

// Where an input came from: a neighbor router or a local consumer.
struct Source {
  bool is_consumer = false;
  std::uint32_t id = 0;  // RouterId or ConsumerId

  static Source consumer(ConsumerId c) { return Source{true, c}; }
  static Source neighbor(RouterId r) { return Source{false, r}; }
  RouterId as_prev_hop() const { return is_consumer ? kLocalHop : id; }
};

}  // namespace ramp
