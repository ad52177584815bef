#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "netsched/core.hpp"

namespace netsched {

/// Min-hop route from src to dst as a link sequence, tie-broken to the
/// lexicographically smallest link-id sequence. nullopt when unreachable.
std::optional<std::vector<LinkId>> shortest_path_route(const Network& net, NodeId src,
                                                       NodeId dst);

/// One queued packet copy at a link: its end-to-end deadline, id (the EDF
/// tie-break), and how many hops remain including this one.
struct EdfQueueItem {
  Slot deadline = 0;
  int packetId = 0;
  int remainingHops = 0;
};

/// Per-link FIFO-less queues, indexed by link id.
using EdfQueues = std::vector<std::vector<EdfQueueItem>>;

struct EdfStepResult {
  std::vector<std::pair<LinkId, int>> transmitted;  // (link, packetId) executed this slot
  std::vector<int> dropped;                         // packetIds evicted for infeasible laxity
};

/// One slot of earliest-deadline-first service on every link: each link scans
/// its queue in (deadline, id) order, evicts any packet whose remaining hops
/// no longer fit before its deadline, and transmits up to floor(R * C_l)
/// feasible packets. Transmitted items are removed; the caller advances them
/// to their next queue (they become eligible the following slot).
EdfStepResult edf_slot_step(const Network& net, EdfQueues& queues, Slot now, double R);

}  // namespace netsched
