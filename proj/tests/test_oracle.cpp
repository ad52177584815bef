#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <map>
#include <vector>

#include "netsched/adversary.hpp"
#include "netsched/core.hpp"
#include "netsched/dual.hpp"
#include "netsched/oracle.hpp"
#include "netsched/policy_oo.hpp"
#include "netsched/policy_pd.hpp"
#include "netsched/rng.hpp"

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

// Re-count per-cell usage across the witness and compare against capacity.
void check_witness(const Network& net, const std::vector<Packet>& packets,
                   const OracleResult& r, int maxLen) {
  CHECK(static_cast<long>(r.witness.size()) == r.optCount);
  std::map<int, Packet> byId;
  for (const auto& p : packets) byId[p.id] = p;
  std::map<std::pair<LinkId, Slot>, int> used;
  for (const auto& [id, sched] : r.witness) {
    REQUIRE(byId.count(id) == 1);
    CHECK(validate_schedule(net, byId[id], sched));
    CHECK(sched.length() <= maxLen);
    for (const auto& e : sched.entries) used[{e.link, e.slot}] += 1;
  }
  for (const auto& [key, n] : used) CHECK(n <= net.link(key.first).capacity);
}

}  // namespace

TEST_CASE("two packets on one unit link admit exactly one") {
  const Network net = load_topology("node A\nnode D\nlink 0 A D 1\n");
  const std::vector<Packet> ps = {mk(0, 1, 1, 0, 1), mk(1, 1, 1, 0, 1)};
  const OracleResult r = brute_force_opt(net, ps, 1);
  CHECK(r.optCount == 1);
  check_witness(net, ps, r, 1);
}

TEST_CASE("disjoint demands all fit") {
  const Network net = load_topology(kTwoRouteText);
  const std::vector<Packet> ps = {
      mk(0, 1, 2, 0, 2),  // A -> D
      mk(1, 3, 4, 0, 2),
      mk(2, 1, 2, 1, 2),  // B -> D
      mk(3, 5, 6, 2, 3),  // D -> F
  };
  const OracleResult r = brute_force_opt(net, ps, 2);
  CHECK(r.optCount == 4);
  check_witness(net, ps, r, 2);
}

TEST_CASE("the two-route bottleneck caps concurrent flows") {
  // all traffic must cross D->F (link 3), one packet per slot
  const Network net = load_topology(kTwoRouteText);
  std::vector<Packet> ps;
  for (int i = 0; i < 5; ++i) ps.push_back(mk(i, 1, 3, 0, 3));
  const OracleResult r = brute_force_opt(net, ps, 3);
  CHECK(r.optCount == 2);  // link 3 free only in slots 2 and 3
  check_witness(net, ps, r, 3);
}

TEST_CASE("waiting unlocks an extra admission") {
  const Network net = load_topology("node A\nnode D\nlink 0 A D 1\n");
  // three packets share slot 1 but two can defer
  const std::vector<Packet> ps = {mk(0, 1, 1, 0, 1), mk(1, 1, 2, 0, 1), mk(2, 1, 3, 0, 1)};
  const OracleResult r = brute_force_opt(net, ps, 1);
  CHECK(r.optCount == 3);
  check_witness(net, ps, r, 1);
  CHECK(r.witness.at(0).entries[0].slot == 1);
}

TEST_CASE("the adversarial drip instance is fully served offline") {
  const AdversaryInstance inst = build_adversary_instance({3, 1, 1.0});
  const OracleResult r = brute_force_opt(inst.net, inst.packets, 4);
  CHECK(r.optCount == 3);
  check_witness(inst.net, inst.packets, r, 4);
}

TEST_CASE("oversized instances are refused") {
  // 12 packets with 4 schedule choices each: 5^12 combinations, over the guard
  const Network net = load_topology(kTwoRouteText);
  std::vector<Packet> ps;
  for (int i = 0; i < 12; ++i) ps.push_back(mk(i, 1, 3, 0, 3));
  CHECK_THROWS_AS(brute_force_opt(net, ps, 3), SearchLimitError);
}

TEST_CASE("weak duality: online price totals bound the offline optimum") {
  SplitMix64 rng(2468);
  int compared = 0;
  for (int iter = 0; iter < 14; ++iter) {
    const Network net = load_topology(kTwoRouteText);
    std::vector<Packet> ps;
    const int n = 3 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
      const Slot a = 1 + static_cast<int>(rng.below(3));
      const int slack = 1 + static_cast<int>(rng.below(3));
      const NodeId src = rng.below(2) == 0 ? 0 : 1;
      ps.push_back(mk(i, a, a + slack - 1, src, 3));
    }

    OracleResult opt;
    try {
      opt = brute_force_opt(net, ps, 3);
    } catch (const SearchLimitError&) {
      continue;
    }
    CHECK(opt.optCount <= static_cast<long>(ps.size()));

    // multiplicative-update prices
    {
      const PdConfig cfg = PdConfig::make(net, 1.0);
      DualLedger led;
      long accepted = 0;
      for (const auto& p : ps)
        if (pd_on_packet_arrival(net, cfg, led, p).accepted) ++accepted;
      CHECK(accepted <= opt.optCount);
      CHECK(static_cast<double>(opt.optCount) <= led.dualObjective() + 1e-9);
    }
    // fixed-capacity curve prices
    {
      const OoConfig cfg = OoConfig::make(4);
      DualLedger led;
      long accepted = 0;
      for (const auto& p : ps)
        if (oo_on_packet_arrival(net, cfg, led, p).accepted) ++accepted;
      CHECK(accepted <= opt.optCount);
      CHECK(static_cast<double>(opt.optCount) <= led.dualObjective() + 1e-9);
    }
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("the witness is deterministic") {
  const Network net = load_topology(kTwoRouteText);
  std::vector<Packet> ps;
  for (int i = 0; i < 4; ++i) ps.push_back(mk(i, 1, 3, 0, 3));
  const OracleResult a = brute_force_opt(net, ps, 3);
  const OracleResult b = brute_force_opt(net, ps, 3);
  CHECK(a.optCount == b.optCount);
  CHECK(a.witness == b.witness);
}
