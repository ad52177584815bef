#include "netsched/adversary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace netsched {

AdversaryInstance build_adversary_instance(const AdversaryParams& p) {
  if (p.N < 1) throw ConfigError("need N >= 1");
  if (p.C < 1) throw ConfigError("need C >= 1");
  const int N = p.N;

  std::vector<std::string> names;
  std::vector<NodeId> black(static_cast<size_t>(N));
  // whites[i-1][j-1] = relay j of chain i
  std::vector<std::vector<NodeId>> whites(static_cast<size_t>(N),
                                          std::vector<NodeId>(static_cast<size_t>(N)));
  for (int j = 1; j <= N; ++j) {
    black[static_cast<size_t>(j - 1)] = static_cast<NodeId>(names.size());
    names.push_back("b" + std::to_string(j));
  }
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      whites[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
          static_cast<NodeId>(names.size());
      names.push_back("w" + std::to_string(i) + "_" + std::to_string(j));
    }
  const NodeId root = static_cast<NodeId>(names.size());
  names.push_back("D");

  std::vector<Link> links;
  auto addLink = [&](NodeId s, NodeId d) {
    const LinkId id = static_cast<LinkId>(links.size());
    links.push_back({id, s, d, p.C});
    return id;
  };

  // Entry links first, most-shared chain first within each black node, so
  // that smallest-id tie-breaking prefers the shared chain.
  std::vector<std::vector<LinkId>> entry(static_cast<size_t>(N),
                                         std::vector<LinkId>(static_cast<size_t>(N), -1));
  for (int j = 1; j <= N; ++j)
    for (int i = N; i >= j; --i)
      entry[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] = addLink(
          black[static_cast<size_t>(j - 1)], whites[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]);

  std::vector<std::vector<LinkId>> chain(static_cast<size_t>(N));
  for (int i = 1; i <= N; ++i) {
    auto& row = chain[static_cast<size_t>(i - 1)];
    for (int j = 1; j < N; ++j)
      row.push_back(addLink(whites[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)],
                            whites[static_cast<size_t>(i - 1)][static_cast<size_t>(j)]));
    row.push_back(addLink(whites[static_cast<size_t>(i - 1)][static_cast<size_t>(N - 1)], root));
  }

  AdversaryInstance inst;
  inst.net = Network::build(std::move(names), std::move(links));
  inst.root = root;
  inst.blackNodes = std::move(black);
  inst.chainLinks = std::move(chain);
  inst.entryLinks = std::move(entry);

  // Wave j: C packets at slot j, all due at N+1. Hop count equals the slot
  // budget, so every schedule is fully forced.
  int id = 0;
  for (int j = 1; j <= N; ++j)
    for (int c = 0; c < p.C; ++c) {
      Packet pk;
      pk.id = id++;
      pk.arrival = j;
      pk.deadline = N + 1;
      pk.source = inst.blackNodes[static_cast<size_t>(j - 1)];
      pk.dest = root;
      inst.packets.push_back(pk);
    }
  return inst;
}

std::map<int, ValidSchedule> adversary_offline_witness(const AdversaryInstance& inst) {
  const int N = static_cast<int>(inst.blackNodes.size());
  std::map<int, ValidSchedule> witness;
  for (const Packet& pk : inst.packets) {
    const int j = pk.arrival;  // wave index
    ValidSchedule s;
    s.entries.push_back({inst.entryLinks[static_cast<size_t>(j - 1)][static_cast<size_t>(j - 1)], j});
    Slot t = j + 1;
    const auto& row = inst.chainLinks[static_cast<size_t>(j - 1)];
    for (int level = j - 1; level < N; ++level) s.entries.push_back({row[static_cast<size_t>(level)], t++});
    witness[pk.id] = s;
  }
  return witness;
}

double even_spread_accepted(const AdversaryParams& p) {
  const double C = static_cast<double>(p.C);
  double accepted = 0.0;
  double load = 0.0;  // per-chain load on the chains still reachable
  for (int k = 1; k <= p.N; ++k) {
    const double avail = static_cast<double>(p.N - k + 1);
    const double want = C / avail;
    const double room = std::max(0.0, p.R * C - load);
    const double take = std::min(want, room);
    accepted += take * avail;
    load += take;
  }
  return accepted;
}

std::pair<double, double> even_spread_interval(const AdversaryParams& p) {
  const double eR = std::exp(p.R);
  const double n = static_cast<double>(p.N);
  const double C = static_cast<double>(p.C);
  return {(n - n / eR - 1.0) * C, (n + 2.0 - (n + 1.0) / eR) * C};
}

double lower_bound_ratio(double R, int L) {
  const double eR = std::exp(R);
  const double l = static_cast<double>(L);
  const double den = (l + 1.0) * eR - l;
  return 1.0 + (l - 2.0 * eR) / den;
}

double capacity_for_target(int L, double theta) {
  if (!(theta > 1.0)) throw std::domain_error("target ratio must exceed 1");
  if (L < 1) throw std::domain_error("route bound must be >= 1");
  return std::log(static_cast<double>(L) * (theta - 1.0) + 1.0);
}

double augmentation_for_ratio(int L, double theta) {
  if (!(theta > 1.0)) throw std::domain_error("target ratio must exceed 1");
  if (L < 1) throw std::domain_error("route bound must be >= 1");
  const double l = static_cast<double>(L);
  return std::log(l) + std::log(theta) - std::log(l + 2.0 * theta - 1.0);
}

double augmentation_gap_ratio(int L, double theta) {
  const double l = static_cast<double>(L);
  return (std::log(l) + std::log(theta)) / augmentation_for_ratio(L, theta);
}

}  // namespace netsched
