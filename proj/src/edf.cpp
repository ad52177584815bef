#include "netsched/edf.hpp"

#include <algorithm>
#include <limits>

#include "netsched/policy_pd.hpp"

namespace netsched {

std::optional<std::vector<LinkId>> shortest_path_route(const Network& net, NodeId src,
                                                       NodeId dst) {
  if (src == dst) return std::vector<LinkId>{};
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<size_t>(net.numNodes()), kUnreached);
  dist[static_cast<size_t>(dst)] = 0;

  // Reverse breadth-first: dist[n] = hops from n to dst.
  std::vector<NodeId> frontier{dst};
  while (!frontier.empty()) {
    std::vector<NodeId> next;
    for (NodeId n : frontier) {
      for (LinkId lid : net.inLinks(n)) {
        const NodeId p = net.link(lid).src;
        if (dist[static_cast<size_t>(p)] == kUnreached) {
          dist[static_cast<size_t>(p)] = dist[static_cast<size_t>(n)] + 1;
          next.push_back(p);
        }
      }
    }
    frontier.swap(next);
  }
  if (dist[static_cast<size_t>(src)] == kUnreached) return std::nullopt;

  // Greedy descent: the smallest link id that stays on a shortest path gives
  // the lexicographically smallest link sequence.
  std::vector<LinkId> route;
  NodeId at = src;
  while (at != dst) {
    for (LinkId lid : net.outLinks(at)) {
      const Link& l = net.link(lid);
      if (dist[static_cast<size_t>(l.dst)] == dist[static_cast<size_t>(at)] - 1) {
        route.push_back(lid);
        at = l.dst;
        break;
      }
    }
  }
  return route;
}

EdfStepResult edf_slot_step(const Network& net, EdfQueues& queues, Slot now, double R) {
  EdfStepResult res;
  for (const Link& l : net.links()) {
    auto& q = queues[static_cast<size_t>(l.id)];
    if (q.empty()) continue;
    std::sort(q.begin(), q.end(), [](const EdfQueueItem& a, const EdfQueueItem& b) {
      return a.deadline != b.deadline ? a.deadline < b.deadline : a.packetId < b.packetId;
    });
    const int cap = cap_for(R, l.capacity);
    int sent = 0;
    std::vector<EdfQueueItem> keep;
    for (const EdfQueueItem& item : q) {
      if (item.remainingHops > item.deadline - now + 1) {
        res.dropped.push_back(item.packetId);  // cannot make its deadline even unblocked
      } else if (sent < cap) {
        res.transmitted.emplace_back(l.id, item.packetId);
        ++sent;
      } else {
        keep.push_back(item);
      }
    }
    q.swap(keep);
  }
  return res;
}

}  // namespace netsched
