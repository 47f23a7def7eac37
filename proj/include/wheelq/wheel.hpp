#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wheelq/errors.hpp"

namespace wheelq {

using NodeId = int;
using SiteId = std::string;

inline constexpr NodeId kHubId = 0;
inline constexpr int kMinWheelSize = 4;  // hub plus a cycle of at least 3

// Per-node attribute record: logical ID, physical location, the hub's ID
// (0 on every node, always) and the cycle links. The hub is not a cycle
// member; its suc/pred are held at -1.
struct NodeRecord {
    NodeId id = -1;
    SiteId node_location;
    NodeId hub = kHubId;
    NodeId suc = -1;
    NodeId pred = -1;

    bool operator==(const NodeRecord&) const = default;
};

// Logical wheel: node 0 (the hub) joined to every vertex of the cycle formed
// by nodes 1..n-1. Logical IDs never move; an election exchanges only the
// node_location bindings of two records, so the ID->site map stays a
// bijection for the lifetime of the wheel.
class Wheel {
public:
    Wheel() = default;  // the empty wheel, size() == 0

    static Wheel build(int n, std::vector<SiteId> sites);
    // Same, with explicit successor wiring for cycle nodes 1..n-1
    // (suc_override[i-1] is the successor of node i). The wiring must form a
    // single cycle covering all of 1..n-1.
    static Wheel build(int n, std::vector<SiteId> sites,
                       const std::vector<NodeId>& suc_override);

    int size() const { return static_cast<int>(nodes_.size()); }
    bool empty() const { return nodes_.empty(); }

    // Cycle navigation; defined for cycle nodes only (1..n-1).
    NodeId suc(NodeId i) const;
    NodeId pred(NodeId i) const;

    const SiteId& resolve(NodeId i) const;
    const NodeRecord& node(NodeId i) const;

    // Exchanges the physical locations bound to a and b; links untouched.
    void swap_locations(NodeId a, NodeId b);

    // All locations in logical-ID order.
    std::vector<SiteId> locations() const;

    std::string to_config() const;
    static Wheel parse_config(std::istream& in);
    static Wheel parse_config(const std::string& text);

    bool operator==(const Wheel&) const = default;

private:
    std::vector<NodeRecord> nodes_;

    void check_id(NodeId i) const;
    void check_cycle_id(NodeId i) const;
};

}  // namespace wheelq
