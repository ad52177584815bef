#include "netsched/oracle.hpp"

#include <algorithm>

#include "netsched/dp.hpp"

namespace netsched {

namespace {

struct SearchState {
  const Network* net = nullptr;
  const std::vector<Packet>* packets = nullptr;
  std::vector<std::vector<ValidSchedule>> choices;
  std::map<std::pair<LinkId, Slot>, int> used;
  std::vector<int> picked;  // choice index per packet, -1 = skipped
  long best = -1;
  std::vector<int> bestPicked;

  bool fits(const ValidSchedule& s) const {
    for (const auto& e : s.entries) {
      auto it = used.find({e.link, e.slot});
      const int u = it == used.end() ? 0 : it->second;
      if (u >= net->link(e.link).capacity) return false;
    }
    return true;
  }

  void occupy(const ValidSchedule& s, int delta) {
    for (const auto& e : s.entries) used[{e.link, e.slot}] += delta;
  }

  void dfs(size_t i, long accepted) {
    const long remaining = static_cast<long>(choices.size() - i);
    if (accepted + remaining <= best) return;  // cannot beat the incumbent
    if (i == choices.size()) {
      if (accepted > best) {
        best = accepted;
        bestPicked = picked;
      }
      return;
    }
    for (size_t c = 0; c < choices[i].size(); ++c) {
      const ValidSchedule& s = choices[i][c];
      if (!fits(s)) continue;
      occupy(s, +1);
      picked[i] = static_cast<int>(c);
      dfs(i + 1, accepted + 1);
      occupy(s, -1);
    }
    picked[i] = -1;
    dfs(i + 1, accepted);
  }
};

}  // namespace

OracleResult brute_force_opt(const Network& net, const std::vector<Packet>& packets,
                             int maxLen) {
  std::vector<Packet> byId = packets;
  std::sort(byId.begin(), byId.end(),
            [](const Packet& a, const Packet& b) { return a.id < b.id; });

  SearchState st;
  st.net = &net;
  st.packets = &byId;
  st.choices.reserve(byId.size());
  double sizeEstimate = 1.0;
  for (const Packet& p : byId) {
    st.choices.push_back(enumerate_valid_schedules(net, p, maxLen));
    sizeEstimate *= static_cast<double>(st.choices.back().size()) + 1.0;
    if (sizeEstimate > 1e7)
      throw SearchLimitError("offline search space exceeds 1e7 combinations");
  }
  st.picked.assign(byId.size(), -1);
  st.dfs(0, 0);

  OracleResult res;
  res.optCount = st.best;
  for (size_t i = 0; i < byId.size(); ++i)
    if (st.bestPicked[i] >= 0)
      res.witness[byId[i].id] = st.choices[i][static_cast<size_t>(st.bestPicked[i])];
  return res;
}

}  // namespace netsched
