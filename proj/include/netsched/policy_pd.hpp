#pragma once

#include <vector>

#include "netsched/core.hpp"
#include "netsched/dp.hpp"
#include "netsched/dual.hpp"

namespace netsched {

/// Admission verdict common to the online policies. `schedule` is the walk
/// the packet was committed to (empty on rejection); `cost` is the price of
/// the cheapest candidate when one existed.
struct Decision {
  bool accepted = false;
  double alpha = 0.0;
  double cost = 0.0;
  ValidSchedule schedule;
  bool capRejected = false;  // rejected by the integral per-cell cap, not by price
};

/// Per-run constants of the multiplicative-update policy: augmentation factor
/// R and the per-link growth base d_l = (1 + 1/C_l)^(R * C_l). Prices climb
/// from 0 to 1 in exactly R * C_l accepted packets per (link, slot) cell.
struct PdConfig {
  double R = 1.0;
  std::vector<double> perLinkD;

  static PdConfig make(const Network& net, double R);

  double dMin() const;
  /// Admission-price bound certified for a run whose longest accepted
  /// schedule had `scheduleLen` hops: 1 + scheduleLen / (dMin - 1).
  double competitiveBound(int scheduleLen) const;
};

/// Integral per-cell packet cap under augmentation: floor(R * C).
int cap_for(double R, int capacity);

/// Closed form for the price after n accepted packets on a cell of a link
/// with capacity C under augmentation R:
///   beta[n] = (d^(n / (R C)) - 1) / (d - 1),  d = (1 + 1/C)^(R C).
/// Equals 0 at n = 0 and exactly 1 at n = R C; matches n applications of
/// beta <- beta (1 + 1/C) + 1 / ((d - 1) C).
double beta_closed_form(int capacity, double R, double n);

/// One packet arrival under the primal-dual rule: price the cheapest valid
/// schedule, admit iff the price is < 1 and no chosen cell is at its integral
/// cap, then raise the prices of the chosen cells multiplicatively. Packets
/// must be presented in arrival order (slot, then id).
Decision pd_on_packet_arrival(const Network& net, const PdConfig& cfg, DualLedger& ledger,
                              const Packet& pkt);

}  // namespace netsched
