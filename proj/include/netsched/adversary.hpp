#pragma once

#include <map>
#include <utility>
#include <vector>

#include "netsched/core.hpp"

namespace netsched {

struct AdversaryParams {
  int N = 3;      // waves / chains / chain length
  int C = 1;      // uniform link capacity
  double R = 1.0; // augmentation the online policy is granted
};

/// Hard instance for price-driven admission. N source ("black") nodes feed N
/// disjoint forwarding chains of N relay nodes each, all draining into one
/// sink. Black node j can enter chains j..N, always at chain level j. Wave j
/// is C packets arriving at slot j with deadline N+1, i.e. zero slack: each
/// candidate schedule is forced, one per reachable chain.
///
/// Offline, wave j can be pinned to chain j and everything is delivered (the
/// witness below). Online, early waves spread over chains they share with
/// later waves and poison them, so price-driven policies lose a constant
/// fraction of the traffic.
///
/// Entry-link ids are ordered so that ties prefer the most-shared chain
/// (chain N first): a price-driven policy with fresh prices then walks into
/// the trap instead of accidentally playing the offline assignment.
struct AdversaryInstance {
  Network net;
  std::vector<Packet> packets;
  NodeId root = -1;                            // the sink
  std::vector<NodeId> blackNodes;              // index j-1 -> black node j
  std::vector<std::vector<LinkId>> chainLinks; // [i-1] = chain i links, level order, sink last
  std::vector<std::vector<LinkId>> entryLinks; // [j-1][i-1] = black j -> chain i, -1 if i < j
};

AdversaryInstance build_adversary_instance(const AdversaryParams& p);

/// The offline assignment (wave j -> chain j): packet id -> schedule. All N*C
/// packets fit, which pins the offline optimum at N*C.
std::map<int, ValidSchedule> adversary_offline_witness(const AdversaryInstance& inst);

/// Deliveries of an idealized online policy that spreads each wave evenly
/// over the chains still reachable, subject to the augmented per-cell budget
/// R*C. Falls inside even_spread_interval for N >= 5.
double even_spread_accepted(const AdversaryParams& p);

/// Open interval ((N - N/e^R - 1) C, (N + 2 - (N+1)/e^R) C) bracketing the
/// even-spread deliveries.
std::pair<double, double> even_spread_interval(const AdversaryParams& p);

/// Ratio every online policy is forced to on this family with route bound L
/// and augmentation R: 1 + (L - 2 e^R) / ((L+1) e^R - L).
double lower_bound_ratio(double R, int L);

/// Augmentation that brings the adversarial ratio under theta for route
/// bound L: ln(L (theta - 1) + 1). Requires theta > 1.
double capacity_for_target(int L, double theta);

/// Exact augmentation needed for target ratio theta: ln L + ln theta -
/// ln(L + 2 theta - 1). Requires theta > 1.
double augmentation_for_ratio(int L, double theta);

/// Overshoot factor of the simple rule over the exact one:
/// (ln L + ln theta) / (ln L + ln theta - ln(L + 2 theta - 1)).
double augmentation_gap_ratio(int L, double theta);

}  // namespace netsched
