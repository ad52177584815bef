#pragma once

#include <map>
#include <optional>
#include <utility>

#include "netsched/core.hpp"

namespace netsched {

/// One congestion-price cell: the price beta of a (link, slot) pair and the
/// number of accepted packets scheduled on it.
struct BetaCell {
  double beta = 0.0;
  int count = 0;
};

/// Sparse beta table over (link, slot). Untouched cells read as zero.
class BetaTable {
 public:
  double beta(LinkId l, Slot t) const {
    auto it = cells_.find({l, t});
    return it == cells_.end() ? 0.0 : it->second.beta;
  }
  int count(LinkId l, Slot t) const {
    auto it = cells_.find({l, t});
    return it == cells_.end() ? 0 : it->second.count;
  }
  BetaCell& touch(LinkId l, Slot t) { return cells_[{l, t}]; }

  const std::map<std::pair<LinkId, Slot>, BetaCell>& cells() const { return cells_; }

 private:
  std::map<std::pair<LinkId, Slot>, BetaCell> cells_;
};

/// Running dual objective for an online run: alphaSum tracks the per-packet
/// profits of accepted packets, cBetaSum tracks sum of capacity * beta over
/// touched cells. Both are maintained incrementally; the *Recomputed variants
/// rebuild them from scratch so tests can bound drift.
///
/// Weak duality makes dualObjective() an upper bound on the offline optimum,
/// so certifiedRatio() = dualObjective / delivered is a per-run competitive
/// certificate. It is nullopt when nothing was delivered.
class DualLedger {
 public:
  void recordRejection(int packetId) { perPacketAlpha_[packetId] = 0.0; }

  void recordAcceptance(int packetId, double alpha) {
    perPacketAlpha_[packetId] = alpha;
    alphaSum_ += alpha;
    ++delivered_;
  }

  /// Applies one multiplicative price raise on (l, t). newBeta must not
  /// decrease the cell. capacity is the C_l weighting the cell in the dual.
  void raiseBeta(LinkId l, Slot t, double newBeta, int capacity) {
    BetaCell& cell = betas_.touch(l, t);
    if (newBeta < cell.beta)
      throw ValidationError("beta decrease on link " + std::to_string(l) + " slot " +
                            std::to_string(t));
    cBetaSum_ += static_cast<double>(capacity) * (newBeta - cell.beta);
    cell.beta = newBeta;
    cell.count += 1;
  }

  const BetaTable& betas() const { return betas_; }
  double beta(LinkId l, Slot t) const { return betas_.beta(l, t); }
  int count(LinkId l, Slot t) const { return betas_.count(l, t); }

  long delivered() const { return delivered_; }
  double alphaSum() const { return alphaSum_; }
  double cBetaSum() const { return cBetaSum_; }
  double dualObjective() const { return alphaSum_ + cBetaSum_; }

  std::optional<double> certifiedRatio() const {
    if (delivered_ == 0) return std::nullopt;
    return dualObjective() / static_cast<double>(delivered_);
  }

  double alphaFor(int packetId) const {
    auto it = perPacketAlpha_.find(packetId);
    return it == perPacketAlpha_.end() ? 0.0 : it->second;
  }
  const std::map<int, double>& perPacketAlpha() const { return perPacketAlpha_; }

  double alphaSumRecomputed() const {
    double s = 0.0;
    for (const auto& [id, a] : perPacketAlpha_) s += a;
    return s;
  }
  /// From-scratch sum of capacity * beta, with capacities taken from `net`
  /// (must be the same network the prices were raised against).
  double cBetaSumRecomputed(const Network& net) const {
    double s = 0.0;
    for (const auto& [key, cell] : betas_.cells())
      s += static_cast<double>(net.link(key.first).capacity) * cell.beta;
    return s;
  }

 private:
  BetaTable betas_;
  std::map<int, double> perPacketAlpha_;
  double alphaSum_ = 0.0;
  double cBetaSum_ = 0.0;
  long delivered_ = 0;
};

}  // namespace netsched
