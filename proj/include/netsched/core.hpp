#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace netsched {

using NodeId = int;
using LinkId = int;
using Slot = int;  // time slots are 1-based

// Error taxonomy for loaders and searches. Parse/reference errors carry the
// offending line number in the message.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ReferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when an exhaustive search exceeds its instance-size guard.
struct SearchLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directed capacitated link. capacity is the number of packets the link can
/// carry in one slot.
struct Link {
  LinkId id = -1;
  NodeId src = -1;
  NodeId dst = -1;
  int capacity = 1;
};

/// Directed graph with per-node adjacency lists. Node ids are dense
/// 0..numNodes()-1; link ids are dense 0..numLinks()-1. Parallel links
/// between the same node pair are allowed. Immutable after construction.
class Network {
 public:
  Network() = default;

  /// Validates invariants (capacity >= 1, src != dst, dense link ids) and
  /// builds the adjacency lists. Throws ValidationError on violation.
  static Network build(std::vector<std::string> nodeNames, std::vector<Link> links);

  int numNodes() const { return static_cast<int>(nodeNames_.size()); }
  int numLinks() const { return static_cast<int>(links_.size()); }

  const Link& link(LinkId id) const { return links_[static_cast<size_t>(id)]; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<LinkId>& outLinks(NodeId n) const { return out_[static_cast<size_t>(n)]; }
  const std::vector<LinkId>& inLinks(NodeId n) const { return in_[static_cast<size_t>(n)]; }

  const std::string& nodeName(NodeId n) const { return nodeNames_[static_cast<size_t>(n)]; }
  std::optional<NodeId> findNode(const std::string& name) const;

  bool hasLink(LinkId id) const { return id >= 0 && id < numLinks(); }

 private:
  std::vector<std::string> nodeNames_;
  std::vector<Link> links_;
  std::vector<std::vector<LinkId>> out_;
  std::vector<std::vector<LinkId>> in_;
};

/// Unit of demand: usable from the start of slot `arrival`, must complete its
/// final transmission no later than slot `deadline`.
struct Packet {
  int id = 0;
  Slot arrival = 1;
  Slot deadline = 1;
  NodeId source = -1;
  NodeId dest = -1;
};

struct ScheduleEntry {
  LinkId link = -1;
  Slot slot = 0;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

/// Ordered (link, slot) pairs forming a directed walk from a packet's source
/// to its destination with strictly increasing slots.
struct ValidSchedule {
  std::vector<ScheduleEntry> entries;

  int length() const { return static_cast<int>(entries.size()); }
  friend bool operator==(const ValidSchedule&, const ValidSchedule&) = default;
};

/// Per-scenario bounds: maxSlack bounds deadline - arrival + 1, maxRouteLen
/// bounds schedule length. maxRouteLen <= maxSlack since every hop takes a
/// full slot.
struct ScenarioParams {
  int maxSlack = 1;
  int maxRouteLen = 1;
};

/// True iff `sched` is a deadline-feasible walk for `pkt` on `net`: links are
/// contiguous from pkt.source to pkt.dest, slots strictly increase, the first
/// slot is >= arrival and the last is <= deadline.
/// Throws ReferenceError for an unknown link id (distinct from false) and
/// ValidationError for an empty schedule.
bool validate_schedule(const Network& net, const Packet& pkt, const ValidSchedule& sched);

/// Parses the line-oriented topology format: `node <name>` lines followed by
/// `link <id> <srcName> <dstName> <capacity>` lines; `#` starts a comment.
/// Throws ParseError / ReferenceError / ValidationError with line numbers.
Network load_topology(const std::string& text);

/// Parses `packet <id> <arrivalSlot> <srcName> <dstName> <deadlineSlot>`
/// lines; node names are resolved against `net`. Returns packets sorted by
/// (arrival, id).
std::vector<Packet> load_arrivals(const std::string& text, const Network& net);

/// Canonical text forms: nodes then links in id order, single spaces, no
/// comments. load(serialize(x)) reproduces x.
std::string serialize_topology(const Network& net);
std::string serialize_arrivals(const std::vector<Packet>& packets, const Network& net);

}  // namespace netsched
