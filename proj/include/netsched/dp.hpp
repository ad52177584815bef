#pragma once

#include <functional>
#include <optional>

#include "netsched/core.hpp"

namespace netsched {

using BetaLookup = std::function<double(LinkId, Slot)>;

struct ScheduleChoice {
  double cost = 0.0;
  ValidSchedule schedule;
};

/// Minimum-price valid schedule for `pkt` under the congestion prices exposed
/// by `betaLookup`. Dynamic program over the time-expanded graph: one row per
/// slot in [arrival, deadline], one cell per node; a cell is reached either by
/// waiting (free) or by extending a predecessor cell across an incoming link
/// (paying that link's price in that slot).
///
/// Ties are broken toward fewer hops, then the lexicographically smallest
/// (slot, link id) sequence, which makes the result deterministic.
///
/// Returns nullopt when the destination is not reachable by the deadline.
/// Cost: O(E * T) beta lookups with T = deadline - arrival + 1.
std::optional<ScheduleChoice> best_schedule(const Network& net, const Packet& pkt,
                                            const BetaLookup& betaLookup);

/// Every valid schedule for `pkt` of length <= maxLen, in lexicographic
/// (slot, link id) sequence order. Walks may revisit nodes and pass through
/// the destination; a schedule ends at its last entry into the destination.
/// Intended for micro-instances: throws SearchLimitError after 1e6 partial
/// extensions.
std::vector<ValidSchedule> enumerate_valid_schedules(const Network& net, const Packet& pkt,
                                                     int maxLen);

}  // namespace netsched
