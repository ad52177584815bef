#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netsched/core.hpp"

namespace netsched {

/// A workload: a network, packets sorted by (arrival, id), and the bounds the
/// workload honors (every feasible window spans at most maxSlack slots, so no
/// schedule can exceed maxSlack hops either).
struct Scenario {
  Network net;
  std::vector<Packet> packets;
  ScenarioParams params;
  std::uint64_t seed = 0;
};

/// Per-run outcome. Counts satisfy
///   arrived == delivered + droppedAtSource + droppedInNetwork.
/// dualObjective / certifiedRatio are present only for the price-based
/// centralized policies, whose ledger certifies the run. The audit fields are
/// recomputed by the engine from the realized transmissions, independent of
/// any policy bookkeeping.
struct Metrics {
  long arrived = 0;
  long delivered = 0;
  long droppedAtSource = 0;
  long droppedInNetwork = 0;
  double deliveryRatio = 0.0;
  std::optional<double> dualObjective;
  std::optional<double> certifiedRatio;

  long auditViolations = 0;  // (link, slot) cells used beyond floor(R * C)
  long invalidTraces = 0;    // delivered packets whose realized walk is not valid
  int maxScheduleLen = 0;    // longest realized/accepted schedule
  long capRejections = 0;    // drops caused by the integral cap, not by price
};

struct PolicySpec {
  enum class Kind { Pd, Oo, Dist, Edf };

  Kind kind = Kind::Pd;
  double R = 1.0;
  int L = 0;                 // route-length bound for oo; 0 = scenario maxRouteLen
  int broadcastPeriod = 10;  // dist only
  bool pinGammaToBeta = false;

  /// Parses "pd" / "oo" / "dist" / "edf"; throws ConfigError otherwise.
  static PolicySpec parse(const std::string& name);
  std::string name() const;
};

/// Runs one policy over one workload, slot by slot: in-flight hops complete,
/// new arrivals are presented in id order, committed transmissions execute.
/// Every realized transmission is recounted against floor(R * C) and every
/// delivered packet's realized walk is re-validated, into the audit fields.
Metrics run(const Scenario& scen, const PolicySpec& spec);

/// The bundled 9-node evaluation network: three edge sources, a relay ring,
/// three sinks that feed back to the edge. Unit capacities.
const std::string& small9_topology_text();
Network small9_topology();

/// 1000 packets from edge sources to sinks: bursty arrivals (inter-arrival 0
/// w.p. 0.7, else 1), slack uniform in 2..6.
Scenario gen_small_scenario(std::uint64_t seed);

/// Same shape with drawn capacities 5..10 and 10000 packets arriving in
/// per-slot batches of 100..500 between uniform node pairs.
Scenario gen_hetero_scenario(std::uint64_t seed);

/// Wraps an explicit workload, inferring the slack/route bounds.
Scenario make_scenario(Network net, std::vector<Packet> packets, std::uint64_t seed);

struct SweepRow {
  std::string policy;
  double R = 1.0;
  std::uint64_t seed = 0;
  Metrics metrics;
};

/// Cross product of policies x R values x seeds, in that nesting order. Rows
/// are computed by a small worker pool but returned in deterministic order.
std::vector<SweepRow> sweep(const std::function<Scenario(std::uint64_t)>& makeScenario,
                            const std::vector<PolicySpec>& policies,
                            const std::vector<double>& Rs,
                            const std::vector<std::uint64_t>& seeds, int threads = 0);

std::string csv_header();
std::string format_double(double v);
std::string csv_rows(const std::vector<SweepRow>& rows);  // header + one line per row

}  // namespace netsched
