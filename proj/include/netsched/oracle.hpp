#pragma once

#include <map>

#include "netsched/core.hpp"

namespace netsched {

struct OracleResult {
  long optCount = 0;
  std::map<int, ValidSchedule> witness;  // packet id -> schedule, for the accepted set
};

/// Exact offline optimum: the maximum number of packets that can be assigned
/// pairwise capacity-feasible valid schedules of length <= maxLen. Exhaustive
/// branch-and-bound over per-packet schedule choices with a residual-capacity
/// check and a remaining-count bound. Deterministic: packets are considered
/// in id order and only strict improvements replace the incumbent, so the
/// witness is reproducible.
///
/// Guarded for micro-instances: throws SearchLimitError when the product of
/// per-packet choice counts (+1 for "skip") exceeds 1e7, or when schedule
/// enumeration itself blows up.
OracleResult brute_force_opt(const Network& net, const std::vector<Packet>& packets, int maxLen);

}  // namespace netsched
