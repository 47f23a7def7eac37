#include "wheelq/quorum.hpp"

#include <algorithm>

namespace wheelq {

namespace {

NodeId random_cycle_node(Rng& rng, const Wheel& w) {
    return rng.next_in_range(1, w.size() - 1);
}

}  // namespace

std::optional<QuorumSet> read_quorum(Wheel& w, const PermissionOracle& oracle,
                                     Rng& rng, EngineStats* stats) {
    if (w.empty()) return std::nullopt;
    if (!oracle.get_permission(kHubId)) {
        election_quorum(w, oracle, rng, random_cycle_node(rng, w), stats);
    }
    return QuorumSet{QuorumKind::Read, {kHubId}, 0};
}

QuorumSet read_quorum_fallback(const Wheel& w, const PermissionOracle& oracle) {
    if (w.empty()) throw DomainError("fallback read on an empty wheel");
    for (NodeId i = 1; i < w.size(); ++i) {
        const NodeId j = w.suc(i);
        if (oracle.get_permission(i) && oracle.get_permission(j)) {
            return QuorumSet{QuorumKind::Read, {i, j}, 0};
        }
    }
    throw QuorumUnavailable("no adjacent cycle pair grants read access");
}

std::vector<NodeId> check_alternating(const Wheel& w, const PermissionOracle& oracle,
                                      NodeId start) {
    if (w.empty()) throw DomainError("walk on an empty wheel");
    const int probes = w.size() / 2;
    std::vector<NodeId> collected;
    collected.reserve(probes);
    NodeId cur = start;
    for (int k = 0; k < probes; ++k) {
        if (!oracle.get_permission(cur)) return {};  // flush everything collected
        collected.push_back(cur);
        cur = w.suc(w.suc(cur));
    }
    return collected;
}

QuorumSet write_quorum(Wheel& w, const PermissionOracle& oracle, Rng& rng,
                       NodeId start, EngineStats* stats) {
    if (w.empty()) throw DomainError("write quorum on an empty wheel");
    if (start < 0 || start >= w.size())
        throw DomainError("write start " + std::to_string(start) + " out of range");

    if (!oracle.get_permission(kHubId)) {
        election_quorum(w, oracle, rng, random_cycle_node(rng, w), stats);
        if (!oracle.get_permission(kHubId))
            throw QuorumUnavailable("hub refuses access after election");
    }

    NodeId current = start == kHubId ? random_cycle_node(rng, w) : start;
    const int n = w.size();
    std::vector<NodeId> walk;
    for (int covered = 0; walk.empty() && covered < n; ++covered) {
        walk = check_alternating(w, oracle, current);
        current = w.suc(current);
    }
    if (walk.empty())
        throw QuorumUnavailable("no alternating walk obtained permission from every node");

    QuorumSet q{QuorumKind::Write, {}, 0};
    q.members.reserve(walk.size() + 1);
    q.members.push_back(kHubId);
    q.members.insert(q.members.end(), walk.begin(), walk.end());
    for (NodeId m : q.members) q.version_basis = std::max(q.version_basis, oracle.version_of(m));
    return q;
}

ElectionOutcome election_quorum(Wheel& w, const PermissionOracle& oracle, Rng& rng,
                                NodeId start, EngineStats* stats) {
    if (w.empty()) throw DomainError("election on an empty wheel");
    if (start < 0 || start >= w.size())
        throw DomainError("election start " + std::to_string(start) + " out of range");

    NodeId current = start == kHubId ? random_cycle_node(rng, w) : start;
    const int n = w.size();
    int nodes_done = 0;
    while (nodes_done < n) {
        if (oracle.is_accessible(current)) {
            const NodeId next = w.suc(current);
            if (oracle.is_accessible(next)) {
                const Version vc = oracle.version_of(current);
                const Version vn = oracle.version_of(next);
                NodeId latest;
                if (vc != vn)
                    latest = vc > vn ? current : next;
                else
                    latest = std::min(current, next);  // tie: lower logical ID
                w.swap_locations(kHubId, latest);
                if (stats) ++stats->elections_ok;
                return ElectionOutcome{latest, current, next, std::max(vc, vn)};
            }
            current = w.suc(next);
            nodes_done += 2;
        } else {
            current = w.suc(current);
            nodes_done += 1;
        }
    }
    if (stats) ++stats->elections_failed;
    throw ElectionFailed("no accessible adjacent pair within the scan bound");
}

}  // namespace wheelq
