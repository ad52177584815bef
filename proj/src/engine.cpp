#include "netsched/engine.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "netsched/dp.hpp"
#include "netsched/dual.hpp"
#include "netsched/edf.hpp"
#include "netsched/policy_dist.hpp"
#include "netsched/policy_oo.hpp"
#include "netsched/policy_pd.hpp"
#include "netsched/rng.hpp"

namespace netsched {

namespace {

using CellUse = std::map<std::pair<LinkId, Slot>, long>;

std::vector<Packet> sorted_by_arrival(std::vector<Packet> packets) {
  std::stable_sort(packets.begin(), packets.end(), [](const Packet& a, const Packet& b) {
    return a.arrival != b.arrival ? a.arrival < b.arrival : a.id < b.id;
  });
  return packets;
}

// Recount of realized transmissions against the augmented integral caps,
// from the engine's own tally rather than the policy's.
void audit_usage(const Scenario& scen, double R, const CellUse& executed, Metrics& m) {
  for (const auto& [cell, n] : executed)
    if (n > cap_for(R, scen.net.link(cell.first).capacity)) ++m.auditViolations;
}

void check_trace(const Scenario& scen, const Packet& pkt, const ValidSchedule& trace,
                 Metrics& m) {
  if (!validate_schedule(scen.net, pkt, trace)) ++m.invalidTraces;
  m.maxScheduleLen = std::max(m.maxScheduleLen, trace.length());
}

void finish(Metrics& m) {
  m.deliveryRatio =
      m.arrived == 0 ? 0.0 : static_cast<double>(m.delivered) / static_cast<double>(m.arrived);
}

Network scale_capacities(const Network& net, double R) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(net.numNodes()));
  for (NodeId n = 0; n < net.numNodes(); ++n) names.push_back(net.nodeName(n));
  std::vector<Link> links = net.links();
  for (Link& l : links) {
    l.capacity = cap_for(R, l.capacity);
    if (l.capacity < 1)
      throw ConfigError("augmentation " + format_double(R) + " scales link " +
                        std::to_string(l.id) + " to zero capacity");
  }
  return Network::build(std::move(names), std::move(links));
}

Metrics run_centralized(const Scenario& scen, const PolicySpec& spec) {
  const bool isOo = spec.kind == PolicySpec::Kind::Oo;
  Network scaled;
  const Network* net = &scen.net;
  if (isOo && spec.R != 1.0) {
    scaled = scale_capacities(scen.net, spec.R);
    net = &scaled;
  }
  PdConfig pdCfg;
  OoConfig ooCfg;
  if (isOo)
    ooCfg = OoConfig::make(spec.L > 0 ? spec.L : std::max(2, scen.params.maxRouteLen));
  else
    pdCfg = PdConfig::make(*net, spec.R);

  DualLedger ledger;
  CellUse executed;
  Metrics m;
  for (const Packet& pkt : sorted_by_arrival(scen.packets)) {
    ++m.arrived;
    const Decision dec = isOo ? oo_on_packet_arrival(*net, ooCfg, ledger, pkt)
                              : pd_on_packet_arrival(*net, pdCfg, ledger, pkt);
    if (dec.accepted) {
      ++m.delivered;
      for (const ScheduleEntry& e : dec.schedule.entries) ++executed[{e.link, e.slot}];
      check_trace(scen, pkt, dec.schedule, m);
    } else {
      ++m.droppedAtSource;
      if (dec.capRejected) ++m.capRejections;
    }
  }
  m.dualObjective = ledger.dualObjective();
  m.certifiedRatio = ledger.certifiedRatio();
  audit_usage(scen, spec.R, executed, m);
  finish(m);
  return m;
}

Metrics run_distributed(const Scenario& scen, const PolicySpec& spec) {
  const Network& net = scen.net;
  DistConfig cfg =
      DistConfig::make(net, spec.R, spec.broadcastPeriod, std::max(1, scen.params.maxSlack));
  cfg.pinGammaToBeta = spec.pinGammaToBeta;

  Metrics m;
  if (scen.packets.empty()) return m;

  const int E = net.numLinks();
  LinkBetaStore store(E);
  std::vector<GammaProfile> profiles(static_cast<size_t>(E), GammaProfile(cfg.maxSlack));
  GammaSnapshot snapshot;
  snapshot.gammaOf.assign(static_cast<size_t>(E),
                          std::vector<double>(static_cast<size_t>(cfg.maxSlack) + 1, 0.0));

  struct Flight {
    Packet pkt;
    ValidSchedule plan;       // link sequence chosen by the source
    size_t hop = 0;           // next link index to cross
    std::vector<ScheduleEntry> realized;
  };
  std::vector<Flight> flights;
  std::map<Slot, std::vector<size_t>> wake;  // flights owing a hop decision at slot
  std::map<Slot, std::vector<size_t>> pendingTx;
  CellUse executed;

  const std::vector<Packet> packets = sorted_by_arrival(scen.packets);
  const Slot tFirst = packets.front().arrival;
  Slot tLast = 0;
  for (const Packet& p : packets) tLast = std::max(tLast, p.deadline);

  auto dropFlight = [&](const Flight& f, bool capped) {
    if (f.hop == 0)
      ++m.droppedAtSource;
    else
      ++m.droppedInNetwork;
    if (capped) ++m.capRejections;
  };

  // Hop decision for flight idx at slot t: the link under the flight's next
  // planned hop picks a slot or drops the packet.
  auto decideHop = [&](size_t idx, Slot t) {
    Flight& f = flights[idx];
    const Link& link = net.link(f.plan.entries[f.hop].link);
    // Each hop's local deadline is the slot the source wrote into the header
    // for that hop; links may send early but never later than suggested.
    const Slot localDeadline = f.plan.entries[f.hop].slot;
    const DistTxResult r = dist_link_transmit(link, store.row(link.id), cfg, t, localDeadline);
    if (r.status == DistTxStatus::Commit)
      pendingTx[r.transmitAt].push_back(idx);
    else
      dropFlight(f, r.status == DistTxStatus::CapReached);
  };

  size_t nextPacket = 0;
  for (Slot t = tFirst; t <= tLast + 1; ++t) {
    // (1) packets that finished a hop at the end of t-1 decide their next hop
    if (auto it = wake.find(t); it != wake.end()) {
      for (size_t idx : it->second) decideHop(idx, t);
      wake.erase(it);
    }

    // (2) new arrivals consult the latest broadcast and pick a plan
    for (; nextPacket < packets.size() && packets[nextPacket].arrival == t; ++nextPacket) {
      const Packet& pkt = packets[nextPacket];
      ++m.arrived;
      Decision dec;
      if (cfg.pinGammaToBeta) {
        dec = dist_suggest_with(
            net, [&](LinkId l, Slot s) { return store.beta(l, s); }, pkt);
      } else {
        dec = dist_suggest_schedule(net, snapshot, pkt);
      }
      if (!dec.accepted) {
        ++m.droppedAtSource;
        continue;
      }
      flights.push_back(Flight{pkt, dec.schedule, 0, {}});
      decideHop(flights.size() - 1, t);
    }

    // (3) committed transmissions execute; the final hop delivers
    if (auto it = pendingTx.find(t); it != pendingTx.end()) {
      for (size_t idx : it->second) {
        Flight& f = flights[idx];
        const LinkId l = f.plan.entries[f.hop].link;
        ++executed[{l, t}];
        f.realized.push_back({l, t});
        f.hop += 1;
        if (f.hop == f.plan.entries.size()) {
          ++m.delivered;
          check_trace(scen, f.pkt, ValidSchedule{f.realized}, m);
        } else {
          wake[t + 1].push_back(idx);
        }
      }
      pendingTx.erase(it);
    }

    // (4) links measure the slot that just completed; every P-th slot the
    // accumulated averages are published as the snapshot sources will use.
    if (t <= tLast) {
      for (LinkId l = 0; l < E; ++l)
        sample_gamma(profiles[static_cast<size_t>(l)], store.row(l), t);
      if ((t - tFirst) % cfg.broadcastPeriod == 0)
        for (LinkId l = 0; l < E; ++l)
          for (int tau = 0; tau <= cfg.maxSlack; ++tau)
            snapshot.gammaOf[static_cast<size_t>(l)][static_cast<size_t>(tau)] =
                profiles[static_cast<size_t>(l)].gamma(tau);
    }
  }

  audit_usage(scen, spec.R, executed, m);
  finish(m);
  return m;
}

Metrics run_edf(const Scenario& scen, const PolicySpec& spec) {
  const Network& net = scen.net;
  Metrics m;
  if (scen.packets.empty()) return m;

  struct Flight {
    Packet pkt;
    std::vector<LinkId> route;
    size_t hop = 0;
    std::vector<ScheduleEntry> realized;
  };
  std::unordered_map<int, Flight> flights;  // by packet id
  EdfQueues queues(static_cast<size_t>(net.numLinks()));
  CellUse executed;

  const std::vector<Packet> packets = sorted_by_arrival(scen.packets);
  const Slot tFirst = packets.front().arrival;
  Slot tLast = 0;
  for (const Packet& p : packets) tLast = std::max(tLast, p.deadline);

  auto dropFlight = [&](const Flight& f) {
    if (f.hop == 0)
      ++m.droppedAtSource;
    else
      ++m.droppedInNetwork;
  };

  size_t nextPacket = 0;
  for (Slot t = tFirst; t <= tLast; ++t) {
    for (; nextPacket < packets.size() && packets[nextPacket].arrival == t; ++nextPacket) {
      const Packet& pkt = packets[nextPacket];
      ++m.arrived;
      auto route = shortest_path_route(net, pkt.source, pkt.dest);
      if (!route) {
        ++m.droppedAtSource;
        continue;
      }
      flights.emplace(pkt.id, Flight{pkt, *route, 0, {}});
      queues[static_cast<size_t>(route->front())].push_back(
          {pkt.deadline, pkt.id, static_cast<int>(route->size())});
    }

    const EdfStepResult res = edf_slot_step(net, queues, t, spec.R);
    for (int id : res.dropped) dropFlight(flights.at(id));
    for (const auto& [lid, id] : res.transmitted) {
      Flight& f = flights.at(id);
      ++executed[{lid, t}];
      f.realized.push_back({lid, t});
      f.hop += 1;
      if (f.hop == f.route.size()) {
        ++m.delivered;
        check_trace(scen, f.pkt, ValidSchedule{f.realized}, m);
      } else {
        queues[static_cast<size_t>(f.route[f.hop])].push_back(
            {f.pkt.deadline, id, static_cast<int>(f.route.size() - f.hop)});
      }
    }
  }
  for (const auto& q : queues)
    for (const EdfQueueItem& item : q) dropFlight(flights.at(item.packetId));

  audit_usage(scen, spec.R, executed, m);
  finish(m);
  return m;
}

}  // namespace

PolicySpec PolicySpec::parse(const std::string& name) {
  PolicySpec spec;
  if (name == "pd")
    spec.kind = Kind::Pd;
  else if (name == "oo")
    spec.kind = Kind::Oo;
  else if (name == "dist")
    spec.kind = Kind::Dist;
  else if (name == "edf")
    spec.kind = Kind::Edf;
  else
    throw ConfigError("unknown policy '" + name + "'");
  return spec;
}

std::string PolicySpec::name() const {
  switch (kind) {
    case Kind::Pd: return "pd";
    case Kind::Oo: return "oo";
    case Kind::Dist: return "dist";
    case Kind::Edf: return "edf";
  }
  return "?";
}

Metrics run(const Scenario& scen, const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicySpec::Kind::Pd:
    case PolicySpec::Kind::Oo: return run_centralized(scen, spec);
    case PolicySpec::Kind::Dist: return run_distributed(scen, spec);
    case PolicySpec::Kind::Edf: return run_edf(scen, spec);
  }
  throw ConfigError("unhandled policy kind");
}

const std::string& small9_topology_text() {
  // Relay 4 fans out into twin staging nodes 5 and 6, each with exits to
  // every sink. Sources mostly ship on 1-hop direct links; a slice of each
  // source's traffic (d7 from 1 and 2, d8/d9 from 3) is funneled through
  // the relay instead, so the 4->5 waist is the one congested link that
  // deadline-ordered routing keeps hammering, while price-aware routing
  // can spill onto the 4->6 twin, the high-id parallels, and the 5<->6
  // crossovers that fixed lexicographic routes never reach.
  static const std::string text =
      "node 1\nnode 2\nnode 3\nnode 4\nnode 5\nnode 6\nnode 7\nnode 8\nnode 9\n"
      "link 0 1 4 1\n"
      "link 1 2 4 1\n"
      "link 2 3 4 1\n"
      "link 3 4 5 1\n"
      "link 4 4 6 1\n"
      "link 5 5 7 1\n"
      "link 6 5 8 1\n"
      "link 7 5 9 1\n"
      "link 8 6 7 1\n"
      "link 9 6 8 1\n"
      "link 10 6 9 1\n"
      "link 11 1 8 1\n"
      "link 12 1 9 1\n"
      "link 13 2 8 1\n"
      "link 14 2 9 1\n"
      "link 15 3 7 1\n"
      "link 16 4 5 1\n"
      "link 17 4 6 1\n"
      "link 18 5 6 1\n"
      "link 19 6 5 1\n"
      "link 20 5 7 1\n"
      "link 21 5 8 1\n"
      "link 22 5 9 1\n"
      "link 23 6 7 1\n"
      "link 24 6 8 1\n"
      "link 25 6 9 1\n"
      "link 26 8 9 1\n"
      "link 27 9 8 1\n"
      "link 28 7 1 1\n"
      "link 29 8 2 1\n"
      "link 30 9 3 1\n";
  return text;
}

Network small9_topology() { return load_topology(small9_topology_text()); }

Scenario make_scenario(Network net, std::vector<Packet> packets, std::uint64_t seed) {
  Scenario scen;
  scen.net = std::move(net);
  scen.packets = sorted_by_arrival(std::move(packets));
  scen.seed = seed;
  int maxSlack = 1;
  for (const Packet& p : scen.packets)
    maxSlack = std::max(maxSlack, p.deadline - p.arrival + 1);
  scen.params = {maxSlack, maxSlack};
  return scen;
}

// Draw order per packet: inter-arrival gap (after the first), source, dest,
// slack. Changing it would silently change every seeded workload.
Scenario gen_small_scenario(std::uint64_t seed) {
  Scenario scen;
  scen.net = small9_topology();
  scen.seed = seed;
  scen.params = {7, 7};  // slack <= 6 means windows of at most 7 slots

  SplitMix64 rng(seed);
  Slot arrival = 1;
  for (int id = 0; id < 1000; ++id) {
    if (id > 0) arrival += rng.below(10) < 3 ? 1 : 0;  // gap 1 w.p. 0.3
    Packet p;
    p.id = id;
    p.arrival = arrival;
    p.source = static_cast<NodeId>(rng.below(6));      // nodes "1".."6"
    p.dest = static_cast<NodeId>(6 + rng.below(3));    // nodes "7".."9"
    const int slack = 2 + static_cast<int>(rng.below(5));
    p.deadline = arrival + slack;
    scen.packets.push_back(p);
  }
  return scen;
}

// Draw order: per-link capacity in link-id order, then slot batches; per
// packet: source, dest (skip-mapped off the source), slack.
Scenario gen_hetero_scenario(std::uint64_t seed) {
  SplitMix64 rng(seed);
  Network base = small9_topology();
  std::vector<std::string> names;
  for (NodeId n = 0; n < base.numNodes(); ++n) names.push_back(base.nodeName(n));
  std::vector<Link> links = base.links();
  for (Link& l : links) l.capacity = 5 + static_cast<int>(rng.below(6));

  Scenario scen;
  scen.net = Network::build(std::move(names), std::move(links));
  scen.seed = seed;
  scen.params = {7, 7};

  int id = 0;
  for (Slot t = 1; id < 10000; ++t) {
    const int batch = 100 + static_cast<int>(rng.below(401));
    for (int k = 0; k < batch && id < 10000; ++k) {
      Packet p;
      p.id = id++;
      p.arrival = t;
      p.source = static_cast<NodeId>(rng.below(9));
      NodeId d = static_cast<NodeId>(rng.below(8));
      if (d >= p.source) d += 1;
      p.dest = d;
      const int slack = 2 + static_cast<int>(rng.below(5));
      p.deadline = t + slack;
      scen.packets.push_back(p);
    }
  }
  return scen;
}

std::vector<SweepRow> sweep(const std::function<Scenario(std::uint64_t)>& makeScenario,
                            const std::vector<PolicySpec>& policies,
                            const std::vector<double>& Rs,
                            const std::vector<std::uint64_t>& seeds, int threads) {
  struct Job {
    PolicySpec spec;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const PolicySpec& p : policies)
    for (double R : Rs)
      for (std::uint64_t s : seeds) {
        PolicySpec spec = p;
        spec.R = R;
        jobs.push_back({spec, s});
      }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  std::exception_ptr firstError;
  std::mutex errorMutex;

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Scenario scen = makeScenario(jobs[i].seed);
        rows[i] = {jobs[i].spec.name(), jobs[i].spec.R, jobs[i].seed,
                   run(scen, jobs[i].spec)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!firstError) firstError = std::current_exception();
        return;
      }
    }
  };

  int n = threads > 0 ? threads
                      : static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  n = static_cast<int>(std::min<size_t>(static_cast<size_t>(n), jobs.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (firstError) std::rethrow_exception(firstError);
  return rows;
}

std::string csv_header() {
  return "policy,R,seed,arrived,delivered,dropped_source,dropped_network,delivery_ratio,"
         "dual_objective,certified_ratio";
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

std::string csv_rows(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << csv_header() << "\n";
  for (const SweepRow& r : rows) {
    out << r.policy << "," << format_double(r.R) << "," << r.seed << "," << r.metrics.arrived
        << "," << r.metrics.delivered << "," << r.metrics.droppedAtSource << ","
        << r.metrics.droppedInNetwork << "," << format_double(r.metrics.deliveryRatio) << ",";
    if (r.metrics.dualObjective) out << format_double(*r.metrics.dualObjective);
    out << ",";
    if (r.metrics.certifiedRatio) out << format_double(*r.metrics.certifiedRatio);
    out << "\n";
  }
  return out.str();
}

}  // namespace netsched
