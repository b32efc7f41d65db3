#include "rampsim/trace.hpp"

#include <cstdio>

#include "rampsim/metrics.hpp"

namespace ramp {

namespace {
void append_time(std::string& buf, double t) {
  char tmp[40];
  std::snprintf(tmp, sizeof tmp, "%.9f", t);
  buf += tmp;
}
void append_u64(std::string& buf, std::uint64_t v) {
  char tmp[24];
  std::snprintf(tmp, sizeof tmp, "%llu", static_cast<unsigned long long>(v));
  buf += tmp;
}
}  // namespace

void TraceLogger::emit(std::string_view line) {
  for (auto& s : sinks_) s(line);
}

#define RTRACE_BEGIN(kind)      \
  buf_.clear();                 \
  append_time(buf_, t);         \
  buf_ += " " kind " router="; \
  append_u64(buf_, router)

void TraceLogger::req(double t, RouterId router, ConsumerId cons, Tag tag, const Name& n,
                      bool retx) {
  buf_.clear();
  append_time(buf_, t);
  buf_ += retx ? " RETX router=" : " REQ router=";
  append_u64(buf_, router);
  buf_ += " cons=";
  append_u64(buf_, cons);
  buf_ += " tag=";
  append_u64(buf_, tag);
  buf_ += " name=";
  buf_ += n.str();
  emit(buf_);
}

void TraceLogger::interest_fwd(double t, RouterId router, RouterId to, const Interest& i) {
  RTRACE_BEGIN("I_FWD");
  buf_ += " to=";
  append_u64(buf_, to);
  buf_ += " tag=";
  append_u64(buf_, i.tag);
  buf_ += " aid=";
  append_u64(buf_, i.aid);
  buf_ += " anchor=";
  append_u64(buf_, i.anchor);
  char tmp[32];
  std::snprintf(tmp, sizeof tmp, " dist=%.9g", i.distance);
  buf_ += tmp;
  buf_ += " name=";
  buf_ += i.name.str();
  emit(buf_);
}

void TraceLogger::ndn_interest_fwd(double t, RouterId router, RouterId to,
                                   const NdnInterest& i) {
  RTRACE_BEGIN("NI_FWD");
  buf_ += " to=";
  append_u64(buf_, to);
  buf_ += " tag=";
  append_u64(buf_, i.tag);
  buf_ += " nonce=";
  append_u64(buf_, i.nonce);
  buf_ += " name=";
  buf_ += i.name.str();
  emit(buf_);
}

void TraceLogger::aggregated(double t, RouterId router, Tag tag, const Name& n) {
  RTRACE_BEGIN("AGGR");
  buf_ += " tag=";
  append_u64(buf_, tag);
  buf_ += " name=";
  buf_ += n.str();
  emit(buf_);
}

void TraceLogger::data_fwd(double t, RouterId router, RouterId to, const Name& n, Tag tag,
                           Aid aid, bool has_aid) {
  RTRACE_BEGIN("D_FWD");
  buf_ += " to=";
  append_u64(buf_, to);
  buf_ += " tag=";
  append_u64(buf_, tag);
  if (has_aid) {
    buf_ += " aid=";
    append_u64(buf_, aid);
  }
  buf_ += " name=";
  buf_ += n.str();
  emit(buf_);
}

void TraceLogger::data_delivered(double t, RouterId router, ConsumerId cons, Tag tag,
                                 const Name& n, double delay_s) {
  RTRACE_BEGIN("D_DLVR");
  buf_ += " cons=";
  append_u64(buf_, cons);
  buf_ += " tag=";
  append_u64(buf_, tag);
  buf_ += " name=";
  buf_ += n.str();
  char tmp[32];
  std::snprintf(tmp, sizeof tmp, " delay=%.9f", delay_s);
  buf_ += tmp;
  emit(buf_);
}

void TraceLogger::error_fwd(double t, RouterId router, RouterId to, const ErrorMessage& e) {
  RTRACE_BEGIN("E_FWD");
  buf_ += " to=";
  append_u64(buf_, to);
  buf_ += " tag=";
  append_u64(buf_, e.tag);
  buf_ += " aid=";
  append_u64(buf_, e.aid);
  buf_ += " code=";
  buf_ += to_string(e.code);
  buf_ += " name=";
  buf_ += e.name ? e.name->str() : "-";
  emit(buf_);
}

void TraceLogger::error_notified(double t, RouterId router, ConsumerId cons, Tag tag,
                                 ErrorCode code, const Name* name) {
  RTRACE_BEGIN("E_NOTIFY");
  buf_ += " cons=";
  append_u64(buf_, cons);
  buf_ += " tag=";
  append_u64(buf_, tag);
  buf_ += " code=";
  buf_ += to_string(code);
  buf_ += " name=";
  buf_ += name ? name->str() : "-";
  emit(buf_);
}

void TraceLogger::drop(double t, RouterId router, Tag tag, const char* reason) {
  RTRACE_BEGIN("DROP");
  buf_ += " tag=";
  append_u64(buf_, tag);
  buf_ += " reason=";
  buf_ += reason;
  emit(buf_);
}

void TraceLogger::fail(double t, RouterId router, ConsumerId cons, const Name& n,
                       const char* reason) {
  RTRACE_BEGIN("FAIL");
  buf_ += " cons=";
  append_u64(buf_, cons);
  buf_ += " name=";
  buf_ += n.str();
  buf_ += " reason=";
  buf_ += reason;
  emit(buf_);
}

void TraceLogger::link_down(double t, RouterId a, RouterId b) {
  buf_.clear();
  append_time(buf_, t);
  buf_ += " LINK_DOWN a=";
  append_u64(buf_, a);
  buf_ += " b=";
  append_u64(buf_, b);
  emit(buf_);
}

void TraceLogger::end(double t) {
  buf_.clear();
  append_time(buf_, t);
  buf_ += " END";
  emit(buf_);
}

#undef RTRACE_BEGIN

}  // namespace ramp
