#pragma once

#include "netsched/core.hpp"
#include "netsched/dual.hpp"
#include "netsched/policy_pd.hpp"

namespace netsched {

/// Constants of the fixed-capacity pricing curve for route-length bound L:
/// a near-linear ramp up to the breakpoint x* = 1 / (ln L + 1), then an
/// exponential climb that reaches 1 at full occupancy. The two branches meet
/// at value 1/L.
struct OoConfig {
  int L = 2;
  double lnL1 = 0.0;        // ln L + 1
  double breakpoint = 0.0;  // 1 / (ln L + 1)
  double rampDenom = 0.0;   // L * (e^breakpoint - 1)

  /// Requires L >= 2.
  static OoConfig make(int L);

  /// Guaranteed admission-price factor as capacities grow: 2 (1 + ln L).
  double competitiveBound() const;
};

/// The two branches as functions of occupancy fraction x = n / C, exposed so
/// the meeting point can be checked directly.
double oo_ramp_branch(const OoConfig& cfg, double x);
double oo_exp_branch(const OoConfig& cfg, double x);

/// Price after n accepted packets on a cell of capacity C:
///   beta[n] = (e^(n/C) - 1) / (L (e^(1/(ln L + 1)) - 1))   for n/C < x*,
///   beta[n] = e^((n/C - 1)(ln L + 1))                      otherwise.
/// beta[0] == 0 and beta[C] == 1 exactly. Throws std::domain_error for
/// n < 0 or n > C.
double oo_beta_curve(const OoConfig& cfg, int capacity, int n);

/// One packet arrival under the fixed-capacity rule: admit iff the cheapest
/// valid schedule prices below 1, then move each chosen cell one step up the
/// curve. A full cell prices at exactly 1, so occupancy can never exceed C.
Decision oo_on_packet_arrival(const Network& net, const OoConfig& cfg, DualLedger& ledger,
                              const Packet& pkt);

}  // namespace netsched
