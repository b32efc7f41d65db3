#include "rampsim/audit.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace ramp {

namespace {

// Pulls `key=` value out of a trace line; empty view when absent.
std::string_view field(std::string_view line, std::string_view key) {
  std::string pattern = " ";
  pattern.append(key);
  pattern.push_back('=');
  auto pos = line.find(pattern);
  if (pos == std::string_view::npos) return {};
  pos += pattern.size();
  auto end = line.find(' ', pos);
  if (end == std::string_view::npos) end = line.size();
  return line.substr(pos, end - pos);
}

std::uint64_t to_u64(std::string_view v) {
  return std::strtoull(std::string(v).c_str(), nullptr, 10);
}
double to_f64(std::string_view v) { return std::strtod(std::string(v).c_str(), nullptr); }

}  // namespace

void TraceAuditor::feed_line(std::string_view line) {
  ++line_no_;
  if (line.empty() || line[0] == '#') return;

  auto sp1 = line.find(' ');
  if (sp1 == std::string_view::npos) return;
  double t = to_f64(line.substr(0, sp1));
  if (t < last_time_)
    report_.path_violations.push_back("line " + std::to_string(line_no_) +
                                      ": time went backwards");
  last_time_ = t;

  auto rest = line.substr(sp1 + 1);
  auto sp2 = rest.find(' ');
  std::string_view kind = sp2 == std::string_view::npos ? rest : rest.substr(0, sp2);

  auto router = static_cast<std::uint32_t>(to_u64(field(line, "router")));
  std::uint64_t tag = to_u64(field(line, "tag"));

  if (kind == "REQ" || kind == "RETX") {
    ++report_.requests;
    TagState& s = state(tag);
    s.ipath.push_back(router);
    return;
  }
  if (kind == "I_FWD" || kind == "NI_FWD") {
    ++report_.interest_forwards;
    if (tag == 0) return;
    TagState& s = state(tag);
    if (s.ipath.empty())
      s.ipath.push_back(router);
    else if (s.ipath.back() != router)
      s.discontinuous = true;
    s.admissions.emplace_back(router, to_u64(field(line, "aid")));
    s.ipath.push_back(static_cast<std::uint32_t>(to_u64(field(line, "to"))));
    auto d = field(line, "dist");
    if (!d.empty()) {
      s.dists.push_back(to_f64(d));
      s.has_dists = true;
    }
    return;
  }
  if (kind == "AGGR") {
    if (tag == 0) return;
    TagState& s = state(tag);
    if (!s.ipath.empty() && s.ipath.back() != router) s.discontinuous = true;
    return;
  }
  if (kind == "D_FWD") {
    if (tag == 0) return;
    state(tag).dpath.push_back(router);
    return;
  }
  if (kind == "D_DLVR") {
    if (tag == 0) return;
    TagState& s = state(tag);
    s.delivered = true;
    s.deliver_router = router;
    return;
  }
  if (kind == "E_FWD") {
    if (field(line, "code") == "loop") ++report_.loop_error_forwards;
    return;
  }
  if (kind == "E_NOTIFY") {
    if (field(line, "code") == "loop") ++report_.loop_error_notified;
    if (tag != 0) state(tag).notified = true;
    return;
  }
  if (kind == "DROP") {
    if (tag != 0) state(tag).drops++;
    return;
  }
}

TraceAuditor::Report TraceAuditor::finish() {
  for (auto& [tag, s] : tags_) {
    ++report_.tags;
    const std::string label = "tag " + std::to_string(tag);

    if (s.discontinuous)
      report_.path_violations.push_back(label + ": interest path discontinuous");

    // Loop freedom, metric form: stated distances strictly decrease hop by
    // hop, so no cycle can sustain itself.
    for (std::size_t i = 1; i < s.dists.size(); ++i)
      if (!(s.dists[i] < s.dists[i - 1])) {
        report_.loop_violations.push_back(label +
                                          ": stated distance did not strictly decrease");
        break;
      }

    // Structural cross-check: no (router, incoming label, previous hop)
    // admits one Interest twice. A true readmission also repeats the entry's
    // stored distance and trips the metric check above; this variant can
    // additionally fire when freed labels get recycled under mid-flight
    // teardown, so it reports as a path diagnostic, not a loop violation.
    {
      std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> keys;
      keys.reserve(s.admissions.size());
      for (std::size_t k = 0; k < s.admissions.size(); ++k) {
        std::uint64_t in_label = k ? s.admissions[k - 1].second : ~0ull;
        std::uint64_t prev = k ? s.admissions[k - 1].first : ~0ull;
        keys.emplace_back(s.admissions[k].first, in_label, prev);
      }
      std::sort(keys.begin(), keys.end());
      if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        report_.path_violations.push_back(label + ": same admission key reused");
    }

    // Reverse-path fidelity: data retraces the interest path backwards.
    if (!s.dpath.empty() || s.delivered) {
      std::vector<std::uint32_t> expected(s.ipath.rbegin(), s.ipath.rend());
      bool bad = s.dpath.size() >= expected.size();
      if (!bad)
        bad = !std::equal(s.dpath.begin(), s.dpath.end(), expected.begin());
      if (!bad && s.delivered) {
        bad = s.dpath.size() + 1 != expected.size() ||
              (expected.empty() ? true : s.deliver_router != expected.back());
      }
      if (bad) report_.path_violations.push_back(label + ": data path is not the reverse path");
    }

    if (s.delivered && s.notified)
      report_.path_violations.push_back(label + ": both delivered and error-notified");

    if (s.delivered)
      ++report_.delivered;
    else if (s.notified)
      ++report_.notified;
    else if (s.drops > 0)
      ++report_.dropped_tags;
    else
      ++report_.in_flight;
  }
  return report_;
}

}  // namespace ramp
