#include "netsched/policy_oo.hpp"

#include <cmath>
#include <stdexcept>

namespace netsched {

OoConfig OoConfig::make(int L) {
  if (L < 2) throw ConfigError("route-length bound L must be >= 2");
  OoConfig cfg;
  cfg.L = L;
  cfg.lnL1 = std::log(static_cast<double>(L)) + 1.0;
  cfg.breakpoint = 1.0 / cfg.lnL1;
  cfg.rampDenom = static_cast<double>(L) * (std::exp(cfg.breakpoint) - 1.0);
  return cfg;
}

double OoConfig::competitiveBound() const {
  return 2.0 * (1.0 + std::log(static_cast<double>(L)));
}

double oo_ramp_branch(const OoConfig& cfg, double x) {
  return (std::exp(x) - 1.0) / cfg.rampDenom;
}

double oo_exp_branch(const OoConfig& cfg, double x) {
  return std::exp((x - 1.0) * cfg.lnL1);
}

double oo_beta_curve(const OoConfig& cfg, int capacity, int n) {
  if (capacity < 1) throw std::domain_error("capacity must be >= 1");
  if (n < 0 || n > capacity) throw std::domain_error("occupancy outside [0, C]");
  const double x = static_cast<double>(n) / static_cast<double>(capacity);
  return x < cfg.breakpoint ? oo_ramp_branch(cfg, x) : oo_exp_branch(cfg, x);
}

Decision oo_on_packet_arrival(const Network& net, const OoConfig& cfg, DualLedger& ledger,
                              const Packet& pkt) {
  Decision dec;
  auto choice = best_schedule(net, pkt, [&](LinkId l, Slot t) { return ledger.beta(l, t); });
  if (!choice) {
    ledger.recordRejection(pkt.id);
    return dec;
  }
  dec.cost = choice->cost;
  if (choice->cost >= 1.0) {
    ledger.recordRejection(pkt.id);
    return dec;
  }
  dec.accepted = true;
  dec.alpha = 1.0 - choice->cost;
  dec.schedule = choice->schedule;
  ledger.recordAcceptance(pkt.id, dec.alpha);
  for (const ScheduleEntry& e : choice->schedule.entries) {
    const Link& l = net.link(e.link);
    // count < C here: a full cell carries price exactly 1 and the price test
    // already rejected any schedule through it.
    const int n = ledger.count(e.link, e.slot) + 1;
    ledger.raiseBeta(e.link, e.slot, oo_beta_curve(cfg, l.capacity, n), l.capacity);
  }
  return dec;
}

}  // namespace netsched
