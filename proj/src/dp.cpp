#include "netsched/dp.hpp"

#include <limits>

namespace netsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cell {
  double cost = kInf;
  int hops = 0;
  std::vector<ScheduleEntry> entries;

  bool reachable() const { return cost < kInf; }
};

bool lex_less(const std::vector<ScheduleEntry>& a, const std::vector<ScheduleEntry>& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].slot != b[i].slot) return a[i].slot < b[i].slot;
    if (a[i].link != b[i].link) return a[i].link < b[i].link;
  }
  return a.size() < b.size();
}

// Strict order on candidate cells: cost, then hop count, then lex sequence.
bool better(const Cell& a, const Cell& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.hops != b.hops) return a.hops < b.hops;
  return lex_less(a.entries, b.entries);
}

}  // namespace

std::optional<ScheduleChoice> best_schedule(const Network& net, const Packet& pkt,
                                            const BetaLookup& betaLookup) {
  const size_t V = static_cast<size_t>(net.numNodes());
  std::vector<Cell> prev(V), cur(V);
  prev[static_cast<size_t>(pkt.source)] = Cell{0.0, 0, {}};

  for (Slot t = pkt.arrival; t <= pkt.deadline; ++t) {
    cur = prev;  // waiting is free
    for (const Link& l : net.links()) {
      const Cell& from = prev[static_cast<size_t>(l.src)];
      if (!from.reachable()) continue;
      Cell cand;
      cand.cost = from.cost + betaLookup(l.id, t);
      cand.hops = from.hops + 1;
      cand.entries = from.entries;
      cand.entries.push_back({l.id, t});
      Cell& into = cur[static_cast<size_t>(l.dst)];
      if (!into.reachable() || better(cand, into)) into = std::move(cand);
    }
    prev.swap(cur);
  }

  const Cell& goal = prev[static_cast<size_t>(pkt.dest)];
  if (!goal.reachable() || goal.entries.empty()) return std::nullopt;
  return ScheduleChoice{goal.cost, ValidSchedule{goal.entries}};
}

std::vector<ValidSchedule> enumerate_valid_schedules(const Network& net, const Packet& pkt,
                                                     int maxLen) {
  std::vector<ValidSchedule> out;
  std::vector<ScheduleEntry> stack;
  long expansions = 0;

  // Depth-first over (slot, link) extensions in ascending order, which makes
  // the emission order lexicographic.
  auto walk = [&](auto&& self, NodeId at, Slot lastSlot) -> void {
    if (at == pkt.dest && !stack.empty()) out.push_back(ValidSchedule{stack});
    if (static_cast<int>(stack.size()) >= maxLen) return;
    for (Slot t = lastSlot + 1; t <= pkt.deadline; ++t) {
      for (LinkId lid : net.outLinks(at)) {
        if (++expansions > 1'000'000)
          throw SearchLimitError("schedule enumeration exceeded 1e6 partial extensions");
        stack.push_back({lid, t});
        self(self, net.link(lid).dst, t);
        stack.pop_back();
      }
    }
  };
  walk(walk, pkt.source, pkt.arrival - 1);
  return out;
}

}  // namespace netsched
