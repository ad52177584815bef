#pragma once

#include <functional>
#include <map>
#include <vector>

#include "netsched/core.hpp"
#include "netsched/dual.hpp"
#include "netsched/policy_pd.hpp"

namespace netsched {

/// Distributed-mode parameters: the multiplicative-update constants plus the
/// price-summary broadcast period and the slack horizon the summaries cover.
struct DistConfig {
  PdConfig pd;
  int broadcastPeriod = 10;
  int maxSlack = 1;
  // Test hook: sources read live link prices instead of broadcast summaries,
  // collapsing the protocol onto the centralized rule.
  bool pinGammaToBeta = false;

  static DistConfig make(const Network& net, double R, int broadcastPeriod, int maxSlack);
};

/// Per-link price rows, structurally owned by the link: no code path reads or
/// writes another link's row. Sources only ever see the broadcast summaries.
class LinkBetaStore {
 public:
  explicit LinkBetaStore(int numLinks) : rows_(static_cast<size_t>(numLinks)) {}

  std::map<Slot, BetaCell>& row(LinkId l) { return rows_[static_cast<size_t>(l)]; }
  const std::map<Slot, BetaCell>& row(LinkId l) const { return rows_[static_cast<size_t>(l)]; }

  double beta(LinkId l, Slot t) const {
    const auto& r = rows_[static_cast<size_t>(l)];
    auto it = r.find(t);
    return it == r.end() ? 0.0 : it->second.beta;
  }
  int count(LinkId l, Slot t) const {
    const auto& r = rows_[static_cast<size_t>(l)];
    auto it = r.find(t);
    return it == r.end() ? 0 : it->second.count;
  }
  int numLinks() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<std::map<Slot, BetaCell>> rows_;
};

/// Running average of one link's price at each lead time tau = 0..maxSlack:
/// a coarse "how congested is this link tau slots out" summary that ages
/// slowly, which is what makes it cheap to broadcast.
struct GammaProfile {
  std::vector<double> sums;
  long samples = 0;

  explicit GammaProfile(int maxSlack = 0) : sums(static_cast<size_t>(maxSlack) + 1, 0.0) {}

  double gamma(int tau) const {
    if (samples == 0) return 0.0;
    return sums[static_cast<size_t>(tau)] / static_cast<double>(samples);
  }
};

/// Folds the link's current prices at lead times 0..maxSlack into its profile.
void sample_gamma(GammaProfile& profile, const std::map<Slot, BetaCell>& row, Slot now);

/// Broadcast summaries as seen by sources: gammaOf[link][tau]. A snapshot is
/// immutable between broadcasts.
struct GammaSnapshot {
  std::vector<std::vector<double>> gammaOf;

  double operator()(LinkId l, Slot slot, Slot anchor) const {
    const auto& g = gammaOf[static_cast<size_t>(l)];
    size_t tau = static_cast<size_t>(slot - anchor);
    if (tau >= g.size()) tau = g.size() - 1;
    return g[tau];
  }
};

/// Source-side admission: price the packet's cheapest schedule against the
/// latest summaries, admit iff it prices below 1. Advisory only — no price is
/// mutated here; links re-decide each hop as the packet moves.
Decision dist_suggest_schedule(const Network& net, const GammaSnapshot& snapshot,
                               const Packet& pkt);

/// Same admission rule against an arbitrary price view (the pin-to-live-beta
/// test hook goes through this).
Decision dist_suggest_with(const Network& net,
                           const std::function<double(LinkId, Slot)>& prices,
                           const Packet& pkt);

enum class DistTxStatus {
  Commit,      // transmit at `transmitAt`
  Expired,     // local deadline already passed
  Saturated,   // every feasible slot prices at >= 1
  CapReached,  // cheapest slot is at its integral cap
};

struct DistTxResult {
  DistTxStatus status = DistTxStatus::Expired;
  Slot transmitAt = 0;
};

/// Link-side hop decision for a packet sitting at the link's tail from slot
/// `now` that must cross by `localDeadline`: pick the cheapest feasible slot
/// (earliest on ties), drop if it prices at >= 1 or is at cap, otherwise
/// commit and apply the multiplicative raise to that slot.
DistTxResult dist_link_transmit(const Link& link, std::map<Slot, BetaCell>& row,
                                const DistConfig& cfg, Slot now, Slot localDeadline);

}  // namespace netsched
