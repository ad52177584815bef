#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netsched/adversary.hpp"
#include "netsched/core.hpp"
#include "netsched/engine.hpp"
#include "netsched/oracle.hpp"

namespace {

using namespace netsched;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

Scenario build_scenario(const std::string& scenarioName, const std::string& topologyPath,
                        const std::string& arrivalsPath, std::uint64_t seed) {
  if (!scenarioName.empty()) {
    if (scenarioName == "small9") return gen_small_scenario(seed);
    if (scenarioName == "hetero9") return gen_hetero_scenario(seed);
    throw ConfigError("unknown scenario '" + scenarioName + "'");
  }
  if (topologyPath.empty() || arrivalsPath.empty())
    throw ConfigError("need either --scenario or both --topology and --arrivals");
  Network net = load_topology(read_file(topologyPath));
  std::vector<Packet> packets = load_arrivals(read_file(arrivalsPath), net);
  return make_scenario(std::move(net), std::move(packets), seed);
}

void print_metrics(const PolicySpec& spec, std::uint64_t seed, const Metrics& m) {
  std::cout << "policy: " << spec.name() << "\n"
            << "R: " << format_double(spec.R) << "\n"
            << "seed: " << seed << "\n"
            << "arrived: " << m.arrived << "\n"
            << "delivered: " << m.delivered << "\n"
            << "dropped_source: " << m.droppedAtSource << "\n"
            << "dropped_network: " << m.droppedInNetwork << "\n"
            << "delivery_ratio: " << format_double(m.deliveryRatio) << "\n";
  if (m.dualObjective) std::cout << "dual_objective: " << format_double(*m.dualObjective) << "\n";
  if (m.certifiedRatio)
    std::cout << "certified_ratio: " << format_double(*m.certifiedRatio) << "\n";
  std::cout << "audit_violations: " << m.auditViolations << "\n"
            << "invalid_traces: " << m.invalidTraces << "\n"
            << "max_schedule_len: " << m.maxScheduleLen << "\n"
            << "cap_rejections: " << m.capRejections << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"slotted-time simulator for deadline-constrained packet scheduling"};
  app.require_subcommand(1);

  // ---- simulate ----------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "run one policy over one workload");
  std::string simTopology, simArrivals, simScenario, simPolicy = "pd", simOut;
  double simR = 1.0;
  int simL = 0, simPeriod = 10;
  std::uint64_t simSeed = 1;
  sim->add_option("--topology", simTopology, "topology file");
  sim->add_option("--arrivals", simArrivals, "arrivals file");
  sim->add_option("--scenario", simScenario, "built-in workload: small9 | hetero9");
  sim->add_option("--policy", simPolicy, "pd | oo | dist | edf")->required();
  sim->add_option("--R", simR, "augmentation factor (default 1)");
  sim->add_option("--L", simL, "route-length bound for oo (default: scenario bound)");
  sim->add_option("--broadcast-period", simPeriod, "price summary period for dist (default 10)");
  sim->add_option("--seed", simSeed, "workload seed (default 1)");
  sim->add_option("--out", simOut, "also write the run as a one-row CSV");

  // ---- sweep -------------------------------------------------------------
  auto* swp = app.add_subcommand("sweep", "cross product of policies x R values x seeds");
  std::string swpScenario, swpPolicies = "pd,oo,dist,edf", swpRs = "1,2,3,4,5,6",
              swpSeeds = "1,2,3,4,5", swpOut;
  int swpL = 0, swpPeriod = 10, swpThreads = 0;
  swp->add_option("--scenario", swpScenario, "small9 | hetero9")->required();
  swp->add_option("--policy", swpPolicies, "comma list (default pd,oo,dist,edf)");
  swp->add_option("--R", swpRs, "comma list (default 1,2,3,4,5,6)");
  swp->add_option("--seed", swpSeeds, "comma list (default 1,2,3,4,5)");
  swp->add_option("--L", swpL, "route-length bound for oo (default: scenario bound)");
  swp->add_option("--broadcast-period", swpPeriod, "price summary period for dist");
  swp->add_option("--threads", swpThreads, "worker threads (default: auto)");
  swp->add_option("--out", swpOut, "CSV output path (default: stdout)");

  // ---- oracle ------------------------------------------------------------
  auto* orc = app.add_subcommand("oracle", "exact offline optimum of a micro-instance");
  std::string orcTopology, orcArrivals;
  int orcMaxLen = 6;
  orc->add_option("--topology", orcTopology, "topology file")->required();
  orc->add_option("--arrivals", orcArrivals, "arrivals file")->required();
  orc->add_option("--max-len", orcMaxLen, "schedule length bound (default 6)");

  // ---- adversary ---------------------------------------------------------
  auto* adv = app.add_subcommand("adversary", "hard-instance family and its certified gap");
  int advN = 5, advC = 10;
  double advR = 1.0;
  std::string advTopologyOut, advArrivalsOut;
  adv->add_option("--N", advN, "waves / chains (default 5)");
  adv->add_option("--C", advC, "uniform capacity (default 10)");
  adv->add_option("--R", advR, "augmentation granted to the online policy (default 1)");
  adv->add_option("--topology-out", advTopologyOut, "write the instance topology");
  adv->add_option("--arrivals-out", advArrivalsOut, "write the instance arrivals");

  // ---- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "materialize a built-in workload to files");
  std::string genScenario, genTopologyOut, genArrivalsOut;
  std::uint64_t genSeed = 1;
  gen->add_option("--scenario", genScenario, "small9 | hetero9")->required();
  gen->add_option("--seed", genSeed, "workload seed (default 1)");
  gen->add_option("--topology-out", genTopologyOut, "topology output path")->required();
  gen->add_option("--arrivals-out", genArrivalsOut, "arrivals output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    PolicySpec spec = PolicySpec::parse(simPolicy);
    spec.R = simR;
    spec.L = simL;
    spec.broadcastPeriod = simPeriod;
    const Scenario scen = build_scenario(simScenario, simTopology, simArrivals, simSeed);
    const Metrics m = run(scen, spec);
    print_metrics(spec, simSeed, m);
    if (!simOut.empty()) write_file(simOut, csv_rows({{spec.name(), spec.R, simSeed, m}}));
    return 0;
  }

  if (swp->parsed()) {
    std::vector<PolicySpec> policies;
    for (const auto& name : split_csv(swpPolicies)) {
      PolicySpec spec = PolicySpec::parse(name);
      spec.L = swpL;
      spec.broadcastPeriod = swpPeriod;
      policies.push_back(spec);
    }
    std::vector<double> Rs;
    for (const auto& tok : split_csv(swpRs)) Rs.push_back(std::stod(tok));
    std::vector<std::uint64_t> seeds;
    for (const auto& tok : split_csv(swpSeeds)) seeds.push_back(std::stoull(tok));
    if (policies.empty() || Rs.empty() || seeds.empty())
      throw ConfigError("sweep needs at least one policy, R, and seed");

    auto make = [&](std::uint64_t seed) {
      return swpScenario == "small9" ? gen_small_scenario(seed)
             : swpScenario == "hetero9"
                 ? gen_hetero_scenario(seed)
                 : throw ConfigError("unknown scenario '" + swpScenario + "'");
    };
    const std::string csv = csv_rows(sweep(make, policies, Rs, seeds, swpThreads));
    if (swpOut.empty())
      std::cout << csv;
    else
      write_file(swpOut, csv);
    return 0;
  }

  if (orc->parsed()) {
    Network net = load_topology(read_file(orcTopology));
    std::vector<Packet> packets = load_arrivals(read_file(orcArrivals), net);
    const OracleResult res = brute_force_opt(net, packets, orcMaxLen);
    std::cout << "opt: " << res.optCount << "\n";
    for (const auto& [id, sched] : res.witness) {
      std::cout << "packet " << id << ":";
      for (const auto& e : sched.entries) std::cout << " " << e.link << "@" << e.slot;
      std::cout << "\n";
    }
    return 0;
  }

  if (adv->parsed()) {
    const AdversaryParams params{advN, advC, advR};
    const AdversaryInstance inst = build_adversary_instance(params);
    if (!advTopologyOut.empty()) write_file(advTopologyOut, serialize_topology(inst.net));
    if (!advArrivalsOut.empty())
      write_file(advArrivalsOut, serialize_arrivals(inst.packets, inst.net));

    PolicySpec spec = PolicySpec::parse("pd");
    spec.R = advR;
    const Metrics m = run(make_scenario(inst.net, inst.packets, 0), spec);
    const long offlineOpt = static_cast<long>(advN) * advC;
    const auto band = even_spread_interval(params);
    std::cout << "N: " << advN << "\nC: " << advC << "\nR: " << format_double(advR) << "\n"
              << "offline_opt: " << offlineOpt << "\n"
              << "online_delivered: " << m.delivered << "\n";
    if (m.delivered > 0)
      std::cout << "online_ratio: "
                << format_double(static_cast<double>(offlineOpt) /
                                 static_cast<double>(m.delivered))
                << "\n";
    std::cout << "even_spread_accepted: " << format_double(even_spread_accepted(params)) << "\n"
              << "even_spread_interval: (" << format_double(band.first) << ", "
              << format_double(band.second) << ")\n"
              << "lower_bound_ratio: " << format_double(lower_bound_ratio(advR, advN + 1))
              << "\n";
    return 0;
  }

  if (gen->parsed()) {
    const Scenario scen = build_scenario(genScenario, "", "", genSeed);
    write_file(genTopologyOut, serialize_topology(scen.net));
    write_file(genArrivalsOut, serialize_arrivals(scen.packets, scen.net));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
