#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <map>
#include <vector>

#include "netsched/core.hpp"
#include "netsched/engine.hpp"
#include "netsched/policy_dist.hpp"
#include "netsched/policy_pd.hpp"

using namespace netsched;

namespace {

const char* kTwoRouteText =
    "node A\nnode B\nnode D\nnode F\n"
    "link 0 A D 1\nlink 1 A B 1\nlink 2 B D 1\nlink 3 D F 1\n";

Packet mk(int id, Slot a, Slot f, NodeId s, NodeId d) {
  Packet p;
  p.id = id;
  p.arrival = a;
  p.deadline = f;
  p.source = s;
  p.dest = d;
  return p;
}

Scenario scenario_of(const Network& net, std::vector<Packet> packets, int maxSlack,
                     int maxRouteLen) {
  Scenario scen;
  scen.net = net;
  scen.packets = std::move(packets);
  scen.params = {maxSlack, maxRouteLen};
  return scen;
}

PolicySpec dist_spec(double R, int broadcastPeriod, bool pin = false) {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::Dist;
  spec.R = R;
  spec.broadcastPeriod = broadcastPeriod;
  spec.pinGammaToBeta = pin;
  return spec;
}

}  // namespace

TEST_CASE("configuration guards") {
  const Network net = load_topology(kTwoRouteText);
  const DistConfig cfg = DistConfig::make(net, 1.0, 5, 3);
  CHECK(cfg.pd.R == 1.0);
  CHECK(cfg.broadcastPeriod == 5);
  CHECK(cfg.maxSlack == 3);
  CHECK_FALSE(cfg.pinGammaToBeta);

  CHECK_THROWS_AS(DistConfig::make(net, 1.0, 0, 3), ConfigError);
  CHECK_THROWS_AS(DistConfig::make(net, 1.0, 5, 0), ConfigError);
  CHECK_THROWS_AS(DistConfig::make(net, 0.0, 5, 3), ConfigError);
}

TEST_CASE("price summaries are running means per lead time") {
  GammaProfile prof(2);
  CHECK(prof.gamma(0) == 0.0);  // no samples yet

  std::map<Slot, BetaCell> row;
  row[6] = {0.5, 1};

  sample_gamma(prof, row, 5);  // leads: slot 5 (empty), 6 (0.5), 7 (empty)
  CHECK(prof.samples == 1);
  CHECK(prof.gamma(0) == 0.0);
  CHECK(prof.gamma(1) == 0.5);
  CHECK(prof.gamma(2) == 0.0);

  row.clear();
  sample_gamma(prof, row, 5);  // same anchor, now quiet: the mean halves
  CHECK(prof.samples == 2);
  CHECK(prof.gamma(1) == 0.25);

  SUBCASE("a steady price converges to itself") {
    GammaProfile steady(1);
    std::map<Slot, BetaCell> r;
    for (Slot t = 1; t <= 20; ++t) {
      r[t] = {0.8, 1};
      r[t + 1] = {0.8, 1};
      sample_gamma(steady, r, t);
    }
    CHECK(steady.gamma(0) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(steady.gamma(1) == doctest::Approx(0.8).epsilon(1e-12));
  }

  SUBCASE("the mean is always sums over samples") {
    GammaProfile g(2);
    std::map<Slot, BetaCell> r = {{3, {0.4, 1}}, {4, {0.2, 1}}};
    sample_gamma(g, r, 3);
    sample_gamma(g, r, 3);
    sample_gamma(g, r, 4);
    for (int tau = 0; tau <= 2; ++tau)
      CHECK(g.gamma(tau) ==
            doctest::Approx(g.sums[static_cast<size_t>(tau)] / 3.0).epsilon(1e-15));
  }
}

TEST_CASE("snapshot lookups clamp beyond the horizon") {
  GammaSnapshot snap;
  snap.gammaOf = {{0.1, 0.2, 0.3}};
  const Slot anchor = 7;
  CHECK(snap(0, 7, anchor) == 0.1);
  CHECK(snap(0, 8, anchor) == 0.2);
  CHECK(snap(0, 9, anchor) == 0.3);
  CHECK(snap(0, 12, anchor) == 0.3);  // far leads read the last entry
}

TEST_CASE("source suggestions follow the summaries") {
  const Network net = load_topology(kTwoRouteText);

  SUBCASE("a quiet network suggests the canonical shortest plan") {
    GammaSnapshot quiet;
    quiet.gammaOf.assign(4, std::vector<double>(4, 0.0));
    const auto dec = dist_suggest_schedule(net, quiet, mk(0, 1, 3, 0, 3));
    REQUIRE(dec.accepted);
    CHECK(dec.cost == 0.0);
    CHECK(dec.alpha == 1.0);
    CHECK(dec.schedule == ValidSchedule{{{0, 1}, {3, 2}}});
  }

  SUBCASE("uniformly hot summaries reject multi-hop demand at the source") {
    GammaSnapshot hot;
    hot.gammaOf.assign(4, std::vector<double>(4, 0.6));
    const auto two = dist_suggest_schedule(net, hot, mk(0, 1, 3, 0, 3));
    CHECK_FALSE(two.accepted);
    CHECK(two.cost >= 1.0);
    // a single hop still fits under the bar
    const auto one = dist_suggest_schedule(net, hot, mk(1, 1, 2, 0, 2));
    CHECK(one.accepted);
    CHECK(one.cost == doctest::Approx(0.6).epsilon(1e-12));
  }

  SUBCASE("planted summaries steer onto the cheap long route") {
    GammaSnapshot snap;
    snap.gammaOf.assign(4, std::vector<double>(4, 0.0));
    snap.gammaOf[0] = {0.5, 0.5, 0.5, 0.5};    // A->D hot at every lead
    snap.gammaOf[3] = {0.3, 0.3, 0.3, 0.3};    // D->F warm
    snap.gammaOf[1] = {0.125, 0.125, 0.125, 0.125};
    const Packet pkt = mk(0, 4, 6, 0, 3);      // anchored away from slot 1
    const auto dec = dist_suggest_schedule(net, snap, pkt);
    REQUIRE(dec.accepted);
    CHECK(dec.schedule == ValidSchedule{{{1, 4}, {2, 5}, {3, 6}}});
    CHECK(dec.cost == doctest::Approx(0.425).epsilon(1e-12));

    // the generic price-view entry point sees exactly the same problem
    const auto same = dist_suggest_with(
        net, [&](LinkId l, Slot t) { return snap(l, t, pkt.arrival); }, pkt);
    CHECK(same.accepted == dec.accepted);
    CHECK(same.cost == dec.cost);
    CHECK(same.schedule == dec.schedule);
  }

  SUBCASE("windows reaching past the horizon use the clamped tail") {
    GammaSnapshot snap;
    snap.gammaOf.assign(4, std::vector<double>(2, 0.7));
    snap.gammaOf[0][0] = 0.2;  // only (link 0, lead 0) is cheap
    const auto dec = dist_suggest_schedule(net, snap, mk(0, 1, 4, 0, 2));
    REQUIRE(dec.accepted);
    CHECK(dec.schedule == ValidSchedule{{{0, 1}}});
    CHECK(dec.cost == doctest::Approx(0.2).epsilon(1e-12));
  }
}

TEST_CASE("link-side hop decisions") {
  const Network unit = load_topology("node A\nnode D\nlink 0 A D 1\n");

  SUBCASE("an empty row commits at the earliest slot and prices it") {
    const DistConfig cfg = DistConfig::make(unit, 1.0, 10, 3);
    std::map<Slot, BetaCell> row;
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 2, 4);
    CHECK(r.status == DistTxStatus::Commit);
    CHECK(r.transmitAt == 2);
    CHECK(row[2].beta == doctest::Approx(1.0).epsilon(1e-12));  // unit cell fills in one step
    CHECK(row[2].count == 1);
  }

  SUBCASE("the cheapest slot in the window wins") {
    const DistConfig cfg = DistConfig::make(unit, 2.0, 10, 3);
    std::map<Slot, BetaCell> row = {{2, {0.6, 1}}, {3, {0.2, 1}}, {4, {0.9, 1}}};
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 2, 4);
    CHECK(r.status == DistTxStatus::Commit);
    CHECK(r.transmitAt == 3);
    // multiplicative raise with d = 4: 0.2 * 2 + 1/3
    CHECK(row[3].beta == doctest::Approx(0.4 + 1.0 / 3.0).epsilon(1e-12));
    CHECK(row[3].count == 2);
    CHECK(row[2].beta == 0.6);  // untouched
  }

  SUBCASE("unpriced slots read as free and win the argmin") {
    const DistConfig cfg = DistConfig::make(unit, 1.0, 10, 3);
    std::map<Slot, BetaCell> row = {{2, {0.3, 1}}, {3, {0.3, 1}}};
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 2, 4);
    CHECK(r.status == DistTxStatus::Commit);
    CHECK(r.transmitAt == 4);
  }

  SUBCASE("price ties break to the earliest slot") {
    const DistConfig cfg = DistConfig::make(unit, 1.0, 10, 3);
    std::map<Slot, BetaCell> row = {{2, {0.3, 0}}, {3, {0.3, 0}}, {4, {0.3, 0}}};
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 2, 4);
    CHECK(r.status == DistTxStatus::Commit);
    CHECK(r.transmitAt == 2);
    CHECK(row[2].beta == doctest::Approx(1.6).epsilon(1e-12));  // 0.3 * 2 + 1
  }

  SUBCASE("a fully priced window drops the packet and mutates nothing") {
    const DistConfig cfg = DistConfig::make(unit, 1.0, 10, 3);
    std::map<Slot, BetaCell> row = {{2, {1.0, 1}}, {3, {1.0, 1}}};
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 2, 3);
    CHECK(r.status == DistTxStatus::Saturated);
    CHECK(row[2].count == 1);
    CHECK(row[3].count == 1);
  }

  SUBCASE("a missed local deadline expires") {
    const DistConfig cfg = DistConfig::make(unit, 1.0, 10, 3);
    std::map<Slot, BetaCell> row;
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 5, 4);
    CHECK(r.status == DistTxStatus::Expired);
    CHECK(row.empty());
  }

  SUBCASE("the integral cap blocks a cell the price would admit") {
    const DistConfig cfg = DistConfig::make(unit, 1.5, 10, 3);  // floor(1.5 * 1) = 1
    std::map<Slot, BetaCell> row = {{2, {0.5, 1}}};
    const auto r = dist_link_transmit(unit.link(0), row, cfg, 2, 2);
    CHECK(r.status == DistTxStatus::CapReached);
    CHECK(row[2].beta == 0.5);
    CHECK(row[2].count == 1);
  }
}

TEST_CASE("pinned summaries collapse onto the centralized rule") {
  SUBCASE("single link under same-slot overload") {
    const Network net = load_topology("node A\nnode D\nlink 0 A D 3\n");
    std::vector<Packet> packets;
    for (int i = 0; i < 6; ++i) packets.push_back(mk(i, 1, 1, 0, 1));

    PolicySpec pd;
    pd.kind = PolicySpec::Kind::Pd;
    pd.R = 1.0;
    const Metrics want = run(scenario_of(net, packets, 1, 1), pd);

    const Metrics got = run(scenario_of(net, packets, 1, 1), dist_spec(1.0, 10, true));
    CHECK(want.delivered == 3);
    CHECK(got.delivered == want.delivered);
    CHECK(got.droppedAtSource == want.droppedAtSource);
    CHECK(got.droppedInNetwork == 0);
    CHECK(want.droppedInNetwork == 0);
    CHECK(got.capRejections == want.capRejections);
    CHECK(got.auditViolations == 0);
    CHECK(got.invalidTraces == 0);
  }

  SUBCASE("serialized multi-hop trickle") {
    const Network net = load_topology(kTwoRouteText);
    std::vector<Packet> packets;
    for (int i = 0; i < 30; ++i) {
      const Slot a = 1 + 4 * i;
      packets.push_back(mk(i, a, a + 2, 0, 3));
    }
    PolicySpec pd;
    pd.kind = PolicySpec::Kind::Pd;
    pd.R = 1.0;
    const Metrics want = run(scenario_of(net, packets, 3, 3), pd);
    const Metrics got = run(scenario_of(net, packets, 3, 3), dist_spec(1.0, 10, true));
    CHECK(want.delivered == 30);
    CHECK(got.delivered == 30);
    CHECK(got.droppedAtSource == 0);
    CHECK(got.droppedInNetwork == 0);
    CHECK(got.auditViolations == 0);
    CHECK(got.invalidTraces == 0);
  }
}

TEST_CASE("the suggested slot is each hop's local deadline") {
  // A -> B (capacity 2) -> C (capacity 1). Two concurrent A->C packets both
  // plan (hop1 @1, hop2 @2); the second loses hop 2 to the first and dies
  // mid-route even though its end-to-end window had one slot spare, because
  // links never send later than the slot written in the plan.
  const Network net = load_topology("node A\nnode B\nnode C\nlink 0 A B 2\nlink 1 B C 1\n");
  const std::vector<Packet> packets = {
      mk(0, 1, 2, 0, 2),  // zero slack
      mk(1, 1, 3, 0, 2),  // one spare slot it will never use
      mk(2, 2, 3, 0, 2),  // arrives into hot summaries and is refused upfront
  };
  const Metrics m = run(scenario_of(net, packets, 3, 2), dist_spec(1.0, 1));
  CHECK(m.arrived == 3);
  CHECK(m.delivered == 1);
  CHECK(m.droppedInNetwork == 1);
  CHECK(m.droppedAtSource == 1);
  CHECK(m.capRejections == 0);
  CHECK(m.auditViolations == 0);
  CHECK(m.invalidTraces == 0);
  CHECK_FALSE(m.dualObjective.has_value());  // no ledger in distributed mode
  CHECK_FALSE(m.certifiedRatio.has_value());
}

TEST_CASE("broadcast cadence decides how fast sources learn") {
  // one unit link, twelve zero-slack packets in consecutive slots
  const Network net = load_topology("node A\nnode D\nlink 0 A D 1\n");
  std::vector<Packet> packets;
  for (int i = 0; i < 12; ++i) packets.push_back(mk(i, 1 + i, 1 + i, 0, 1));

  SUBCASE("fresh summaries every slot: only the immediate echo is lost") {
    const Metrics m = run(scenario_of(net, packets, 1, 1), dist_spec(1.0, 1));
    CHECK(m.arrived == 12);
    CHECK(m.delivered == 11);
    CHECK(m.droppedAtSource == 1);
    CHECK(m.droppedInNetwork == 0);
  }

  SUBCASE("a stale broadcast freezes the first hot reading") {
    const Metrics m = run(scenario_of(net, packets, 1, 1), dist_spec(1.0, 12));
    CHECK(m.arrived == 12);
    CHECK(m.delivered == 1);
    CHECK(m.droppedAtSource == 11);
    CHECK(m.droppedInNetwork == 0);
  }
}
