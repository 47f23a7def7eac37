#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wheelq/rng.hpp"
#include "wheelq/wheel.hpp"

namespace wheelq {

using Version = std::uint64_t;

// Callbacks the engine uses to probe copies. get_permission(i) must be false
// whenever is_accessible(i) is false: a node that cannot be contacted grants
// nothing. An accessible node may still refuse permission.
struct PermissionOracle {
    std::function<bool(NodeId)> get_permission;
    std::function<bool(NodeId)> is_accessible;
    std::function<Version(NodeId)> version_of;
};

enum class QuorumKind { Read, Write, Election };

// Granted member set for one operation, in collection order (hub first for
// writes). version_basis is the highest version observed among the members;
// it is meaningful for write and election quorums only.
struct QuorumSet {
    QuorumKind kind = QuorumKind::Read;
    std::vector<NodeId> members;
    Version version_basis = 0;
};

// Result of a hub election: the examined accessible adjacent pair, the
// member holding the fresher copy (whose site now serves as hub), and that
// copy's version.
struct ElectionOutcome {
    NodeId latest_node = -1;
    NodeId pair_first = -1;
    NodeId pair_second = -1;
    Version version_basis = 0;
};

struct EngineStats {
    std::uint64_t elections_ok = 0;
    std::uint64_t elections_failed = 0;
};

// Read path. Returns nullopt for the empty wheel. If the hub refuses
// permission, a hub election runs first (random cycle start drawn from rng)
// and the post-election hub is returned; the result is always {0}.
// Throws ElectionFailed when no new hub can be installed.
std::optional<QuorumSet> read_quorum(Wheel& w, const PermissionOracle& oracle,
                                     Rng& rng, EngineStats* stats = nullptr);

// Alternative read path used when hub reads are disabled by the caller's
// configuration: the first adjacent cycle pair with both permissions,
// scanning pairs (i, suc(i)) for i = 1..n-1. The reader must treat the
// higher-version member as authoritative. Throws QuorumUnavailable when no
// such pair exists.
QuorumSet read_quorum_fallback(const Wheel& w, const PermissionOracle& oracle);

// Write path: hub permission (electing a replacement first if refused), then
// an alternating walk of floor(n/2) cycle nodes, retrying from successive
// start positions. Returns hub plus the walk, size ceil((n-1)/2) + 1.
// Throws QuorumUnavailable when every start position fails or the hub is
// unobtainable even after an election.
QuorumSet write_quorum(Wheel& w, const PermissionOracle& oracle, Rng& rng,
                       NodeId start, EngineStats* stats = nullptr);

// Cycle half of a write quorum: the walk start, suc(suc(start)), ... over
// floor(n/2) probes. Any refused permission flushes the walk and yields the
// empty list. The +2 walk never revisits a node within floor(n/2) probes,
// so the result carries no duplicates.
std::vector<NodeId> check_alternating(const Wheel& w, const PermissionOracle& oracle,
                                      NodeId start);

// Hub election: scan from `start` (a random cycle node replaces a hub start)
// for an accessible adjacent pair, pick the pair member with the more recent
// version (ties resolved toward the lower logical ID) and swap its physical
// location with the hub's. Throws ElectionFailed when the scan bound (n
// nodes) passes without finding a pair.
ElectionOutcome election_quorum(Wheel& w, const PermissionOracle& oracle, Rng& rng,
                                NodeId start, EngineStats* stats = nullptr);

}  // namespace wheelq
