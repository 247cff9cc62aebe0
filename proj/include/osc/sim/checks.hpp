#pragma once

#include <string>
#include <vector>

#include "osc/sim/trace.hpp"

namespace osc::sim {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;  // first failure, human-readable
  std::vector<std::size_t> offending;  // record indices into the trace
};

// Registered suite names, in report order:
//   format             every record parses into a known shape
//   serial             ruling indices are gapless and ordered, one ruling each
//   custody            state snapshots equal the replay of all ruling deltas
//   conservation       every envelope ends in exactly one hop record
//   dual_mediation     each delivered envelope has a sender and receiver ruling
//   trust              delivered envelopes carry the destination community's law hash
//   revocation         a quit agent sources no envelopes and receives nothing after
//   group_isolation    delivered direct messages share a group with the receiver
//   management_gating  management-tagged posts originate from managers only
//   filter_soundness   no subscription is granted to a profile a filter matches
//   fanout             accepted publishes forward to exactly the subscribed peers
//   lastten            the recent-posts attribute lists the last ten post ids
//   search_bound       search traffic respects ttl, threshold and reachability
std::vector<std::string> check_suite_names();

// Runs the named suites (all when empty) over a trace.
std::vector<CheckResult> check_trace(const Trace& trace,
                                     const std::vector<std::string>& suites = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace osc::sim
