// Line-oriented event trace. Grammar (one record per line):
//
//   <time> <KIND> k=v [k=v ...]
//
// with <time> printed as %.9f seconds. Kinds:
//   REQ     router cons tag name            consumer request enters the origin
//   RETX    router cons tag name            consumer retransmission
//   I_FWD   router to tag aid anchor dist name    Interest sent to a neighbor
//   NI_FWD  router to tag nonce name        baseline Interest sent to a neighbor
//   AGGR    router tag name                 baseline Interest aggregated into a pending entry
//   D_FWD   router to tag aid name          data packet sent to a neighbor (aid omitted in baseline)
//   D_DLVR  router cons tag name delay      content delivered to a consumer
//   E_FWD   router to tag aid code name     error sent to a neighbor (name may be '-')
//   E_NOTIFY router cons tag code name      error surfaced to a consumer
//   DROP    router tag reason               packet discarded (tag 0 when unknown)
//   FAIL    router cons name reason         request gave up (cap or terminal error)
//   LINK_DOWN a b                           link failure
//   END     t                               horizon reached
//
// Lines are emitted in event-processing order, so a byte-identical trace
// across runs certifies determinism.
#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "rampsim/packets.hpp"

namespace ramp {

class TraceLogger {
public:
  using Sink = std::function<void(std::string_view)>;

  bool enabled() const { return !sinks_.empty(); }
  void add_sink(Sink s) { sinks_.push_back(std::move(s)); }

  void req(double t, RouterId router, ConsumerId cons, Tag tag, const Name& n, bool retx);
  void interest_fwd(double t, RouterId router, RouterId to, const Interest& i);
  void ndn_interest_fwd(double t, RouterId router, RouterId to, const NdnInterest& i);
  void aggregated(double t, RouterId router, Tag tag, const Name& n);
  void data_fwd(double t, RouterId router, RouterId to, const Name& n, Tag tag, Aid aid,
                bool has_aid);
  void data_delivered(double t, RouterId router, ConsumerId cons, Tag tag, const Name& n,
                      double delay_s);
  void error_fwd(double t, RouterId router, RouterId to, const ErrorMessage& e);
  void error_notified(double t, RouterId router, ConsumerId cons, Tag tag, ErrorCode code,
                      const Name* name);
  void drop(double t, RouterId router, Tag tag, const char* reason);
  void fail(double t, RouterId router, ConsumerId cons, const Name& n, const char* reason);
  void link_down(double t, RouterId a, RouterId b);
  void end(double t);

private:
  void emit(std::string_view line);
  std::vector<Sink> sinks_;
  std::string buf_;
};

}  // namespace ramp
