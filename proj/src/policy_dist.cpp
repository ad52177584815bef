#include "netsched/policy_dist.hpp"

#include <limits>

#include "netsched/dp.hpp"

namespace netsched {

DistConfig DistConfig::make(const Network& net, double R, int broadcastPeriod, int maxSlack) {
  if (broadcastPeriod < 1) throw ConfigError("broadcast period must be >= 1");
  if (maxSlack < 1) throw ConfigError("slack horizon must be >= 1");
  DistConfig cfg;
  cfg.pd = PdConfig::make(net, R);
  cfg.broadcastPeriod = broadcastPeriod;
  cfg.maxSlack = maxSlack;
  return cfg;
}

void sample_gamma(GammaProfile& profile, const std::map<Slot, BetaCell>& row, Slot now) {
  const int horizon = static_cast<int>(profile.sums.size()) - 1;
  for (int tau = 0; tau <= horizon; ++tau) {
    auto it = row.find(now + tau);
    if (it != row.end()) profile.sums[static_cast<size_t>(tau)] += it->second.beta;
  }
  profile.samples += 1;
}

Decision dist_suggest_with(const Network& net,
                           const std::function<double(LinkId, Slot)>& prices,
                           const Packet& pkt) {
  Decision dec;
  auto choice = best_schedule(net, pkt, prices);
  if (!choice) return dec;
  dec.cost = choice->cost;
  if (choice->cost >= 1.0) return dec;
  dec.accepted = true;
  dec.alpha = 1.0 - choice->cost;
  dec.schedule = choice->schedule;
  return dec;
}

Decision dist_suggest_schedule(const Network& net, const GammaSnapshot& snapshot,
                               const Packet& pkt) {
  const Slot anchor = pkt.arrival;
  return dist_suggest_with(
      net, [&](LinkId l, Slot t) { return snapshot(l, t, anchor); }, pkt);
}

DistTxResult dist_link_transmit(const Link& link, std::map<Slot, BetaCell>& row,
                                const DistConfig& cfg, Slot now, Slot localDeadline) {
  if (localDeadline < now) return {DistTxStatus::Expired, 0};

  Slot bestSlot = now;
  double bestBeta = std::numeric_limits<double>::infinity();
  for (Slot t = now; t <= localDeadline; ++t) {
    auto it = row.find(t);
    const double b = it == row.end() ? 0.0 : it->second.beta;
    if (b < bestBeta) {  // strict: earliest slot wins ties
      bestBeta = b;
      bestSlot = t;
    }
  }
  if (bestBeta >= 1.0) return {DistTxStatus::Saturated, 0};

  BetaCell& cell = row[bestSlot];
  if (cell.count >= cap_for(cfg.pd.R, link.capacity)) return {DistTxStatus::CapReached, 0};

  const double c = static_cast<double>(link.capacity);
  const double d = cfg.pd.perLinkD[static_cast<size_t>(link.id)];
  cell.beta = cell.beta * (1.0 + 1.0 / c) + 1.0 / ((d - 1.0) * c);
  cell.count += 1;
  return {DistTxStatus::Commit, bestSlot};
}

}  // namespace netsched
