#include "netsched/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace netsched {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void parse_fail(int lineNo, const std::string& what) {
  throw ParseError("line " + std::to_string(lineNo) + ": " + what);
}

int parse_int(const std::string& tok, int lineNo, const std::string& what) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    parse_fail(lineNo, "expected integer for " + what + ", got '" + tok + "'");
  }
  if (used != tok.size())
    parse_fail(lineNo, "trailing characters in " + what + " '" + tok + "'");
  return v;
}

}  // namespace

Network Network::build(std::vector<std::string> nodeNames, std::vector<Link> links) {
  std::set<std::string> seen;
  for (const auto& n : nodeNames) {
    if (n.empty()) throw ValidationError("empty node name");
    if (!seen.insert(n).second) throw ValidationError("duplicate node name '" + n + "'");
  }
  const int V = static_cast<int>(nodeNames.size());
  const int E = static_cast<int>(links.size());

  std::vector<bool> idSeen(static_cast<size_t>(E), false);
  for (const auto& l : links) {
    if (l.id < 0 || l.id >= E)
      throw ValidationError("link id " + std::to_string(l.id) + " outside dense range 0.." +
                            std::to_string(E - 1));
    if (idSeen[static_cast<size_t>(l.id)])
      throw ValidationError("duplicate link id " + std::to_string(l.id));
    idSeen[static_cast<size_t>(l.id)] = true;
    if (l.src < 0 || l.src >= V || l.dst < 0 || l.dst >= V)
      throw ValidationError("link " + std::to_string(l.id) + " references unknown node");
    if (l.src == l.dst)
      throw ValidationError("link " + std::to_string(l.id) + " is a self-loop");
    if (l.capacity < 1)
      throw ValidationError("link " + std::to_string(l.id) + " has capacity < 1");
  }
  std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) { return a.id < b.id; });

  Network net;
  net.nodeNames_ = std::move(nodeNames);
  net.links_ = std::move(links);
  net.out_.assign(static_cast<size_t>(V), {});
  net.in_.assign(static_cast<size_t>(V), {});
  for (const auto& l : net.links_) {
    net.out_[static_cast<size_t>(l.src)].push_back(l.id);
    net.in_[static_cast<size_t>(l.dst)].push_back(l.id);
  }
  return net;
}

std::optional<NodeId> Network::findNode(const std::string& name) const {
  for (NodeId n = 0; n < numNodes(); ++n)
    if (nodeNames_[static_cast<size_t>(n)] == name) return n;
  return std::nullopt;
}

bool validate_schedule(const Network& net, const Packet& pkt, const ValidSchedule& sched) {
  if (sched.entries.empty()) throw ValidationError("empty schedule");
  for (const auto& e : sched.entries)
    if (!net.hasLink(e.link))
      throw ReferenceError("schedule references unknown link id " + std::to_string(e.link));

  NodeId at = pkt.source;
  Slot prevSlot = pkt.arrival - 1;
  for (const auto& e : sched.entries) {
    const Link& l = net.link(e.link);
    if (l.src != at) return false;       // walk must be contiguous
    if (e.slot <= prevSlot) return false;  // slots strictly increase
    at = l.dst;
    prevSlot = e.slot;
  }
  if (at != pkt.dest) return false;
  if (sched.entries.front().slot < pkt.arrival) return false;
  if (sched.entries.back().slot > pkt.deadline) return false;
  return true;
}

Network load_topology(const std::string& text) {
  std::vector<std::string> nodeNames;
  std::unordered_map<std::string, NodeId> byName;
  std::vector<Link> links;

  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    auto toks = tokenize(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "node") {
      if (toks.size() != 2) parse_fail(lineNo, "node takes exactly one name");
      if (byName.count(toks[1])) parse_fail(lineNo, "duplicate node '" + toks[1] + "'");
      byName[toks[1]] = static_cast<NodeId>(nodeNames.size());
      nodeNames.push_back(toks[1]);
    } else if (toks[0] == "link") {
      if (toks.size() != 5) parse_fail(lineNo, "link takes id, src, dst, capacity");
      Link l;
      l.id = parse_int(toks[1], lineNo, "link id");
      auto s = byName.find(toks[2]);
      auto d = byName.find(toks[3]);
      if (s == byName.end())
        throw ReferenceError("line " + std::to_string(lineNo) + ": unknown node '" + toks[2] + "'");
      if (d == byName.end())
        throw ReferenceError("line " + std::to_string(lineNo) + ": unknown node '" + toks[3] + "'");
      l.src = s->second;
      l.dst = d->second;
      l.capacity = parse_int(toks[4], lineNo, "capacity");
      links.push_back(l);
    } else {
      parse_fail(lineNo, "unknown directive '" + toks[0] + "'");
    }
  }
  return Network::build(std::move(nodeNames), std::move(links));
}

std::vector<Packet> load_arrivals(const std::string& text, const Network& net) {
  std::vector<Packet> packets;
  std::set<int> ids;

  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    auto toks = tokenize(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] != "packet") parse_fail(lineNo, "unknown directive '" + toks[0] + "'");
    if (toks.size() != 6) parse_fail(lineNo, "packet takes id, arrival, src, dst, deadline");
    Packet p;
    p.id = parse_int(toks[1], lineNo, "packet id");
    p.arrival = parse_int(toks[2], lineNo, "arrival slot");
    auto s = net.findNode(toks[3]);
    auto d = net.findNode(toks[4]);
    if (!s) throw ReferenceError("line " + std::to_string(lineNo) + ": unknown node '" + toks[3] + "'");
    if (!d) throw ReferenceError("line " + std::to_string(lineNo) + ": unknown node '" + toks[4] + "'");
    p.source = *s;
    p.dest = *d;
    p.deadline = parse_int(toks[5], lineNo, "deadline slot");
    if (!ids.insert(p.id).second) parse_fail(lineNo, "duplicate packet id " + std::to_string(p.id));
    if (p.arrival < 1) parse_fail(lineNo, "arrival slot must be >= 1");
    if (p.deadline < p.arrival) parse_fail(lineNo, "deadline precedes arrival");
    if (p.source == p.dest) parse_fail(lineNo, "source equals destination");
    packets.push_back(p);
  }
  std::sort(packets.begin(), packets.end(), [](const Packet& a, const Packet& b) {
    return a.arrival != b.arrival ? a.arrival < b.arrival : a.id < b.id;
  });
  return packets;
}

std::string serialize_topology(const Network& net) {
  std::ostringstream out;
  for (NodeId n = 0; n < net.numNodes(); ++n) out << "node " << net.nodeName(n) << "\n";
  for (const auto& l : net.links())
    out << "link " << l.id << " " << net.nodeName(l.src) << " " << net.nodeName(l.dst) << " "
        << l.capacity << "\n";
  return out.str();
}

std::string serialize_arrivals(const std::vector<Packet>& packets, const Network& net) {
  std::vector<Packet> sorted = packets;
  std::sort(sorted.begin(), sorted.end(), [](const Packet& a, const Packet& b) {
    return a.arrival != b.arrival ? a.arrival < b.arrival : a.id < b.id;
  });
  std::ostringstream out;
  for (const auto& p : sorted)
    out << "packet " << p.id << " " << p.arrival << " " << net.nodeName(p.source) << " "
        << net.nodeName(p.dest) << " " << p.deadline << "\n";
  return out.str();
}

}  // namespace netsched
