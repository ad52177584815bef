#include "netsched/policy_pd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netsched {

PdConfig PdConfig::make(const Network& net, double R) {
  if (!(R > 0.0)) throw ConfigError("augmentation factor must be positive");
  PdConfig cfg;
  cfg.R = R;
  cfg.perLinkD.reserve(static_cast<size_t>(net.numLinks()));
  for (const Link& l : net.links()) {
    const double c = static_cast<double>(l.capacity);
    cfg.perLinkD.push_back(std::pow(1.0 + 1.0 / c, R * c));
  }
  return cfg;
}

double PdConfig::dMin() const {
  double m = std::numeric_limits<double>::infinity();
  for (double d : perLinkD) m = std::min(m, d);
  return m;
}

double PdConfig::competitiveBound(int scheduleLen) const {
  return 1.0 + static_cast<double>(scheduleLen) / (dMin() - 1.0);
}

int cap_for(double R, int capacity) {
  return static_cast<int>(std::floor(R * static_cast<double>(capacity) + 1e-9));
}

double beta_closed_form(int capacity, double R, double n) {
  if (capacity < 1) throw std::domain_error("capacity must be >= 1");
  if (!(R > 0.0)) throw std::domain_error("augmentation factor must be positive");
  const double c = static_cast<double>(capacity);
  if (n < 0.0 || n > R * c + 1e-9) throw std::domain_error("n outside [0, R*C]");
  const double d = std::pow(1.0 + 1.0 / c, R * c);
  return (std::pow(d, n / (R * c)) - 1.0) / (d - 1.0);
}

Decision pd_on_packet_arrival(const Network& net, const PdConfig& cfg, DualLedger& ledger,
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
  // The price test admits; the integral cap is a second gate that keeps each
  // (link, slot) cell at floor(R * C_l) packets even when rounding leaves the
  // price a hair under 1.
  for (const ScheduleEntry& e : choice->schedule.entries) {
    const Link& l = net.link(e.link);
    if (ledger.count(e.link, e.slot) >= cap_for(cfg.R, l.capacity)) {
      dec.capRejected = true;
      ledger.recordRejection(pkt.id);
      return dec;
    }
  }
  dec.accepted = true;
  dec.alpha = 1.0 - choice->cost;
  dec.schedule = choice->schedule;
  ledger.recordAcceptance(pkt.id, dec.alpha);
  for (const ScheduleEntry& e : choice->schedule.entries) {
    const Link& l = net.link(e.link);
    const double c = static_cast<double>(l.capacity);
    const double d = cfg.perLinkD[static_cast<size_t>(e.link)];
    const double newBeta =
        ledger.beta(e.link, e.slot) * (1.0 + 1.0 / c) + 1.0 / ((d - 1.0) * c);
    ledger.raiseBeta(e.link, e.slot, newBeta, l.capacity);
  }
  return dec;
}

}  // namespace netsched
