#include "wheelq/store.hpp"

#include <algorithm>
#include <sstream>

namespace wheelq {

ReplicaStore::ReplicaStore(Wheel wheel, StoreConfig config)
    : wheel_(std::move(wheel)), config_(config) {
    if (wheel_.empty()) throw DomainError("store needs a non-empty wheel");
    for (const auto& site : wheel_.locations()) copies_[site] = SiteCopy{};
}

ReplicaStore::SiteCopy& ReplicaStore::at(NodeId logical) {
    return copies_.at(wheel_.resolve(logical));
}

const ReplicaStore::SiteCopy& ReplicaStore::at(NodeId logical) const {
    return copies_.at(wheel_.resolve(logical));
}

PermissionOracle ReplicaStore::oracle() const {
    PermissionOracle o;
    o.get_permission = [this](NodeId i) { const auto& c = at(i); return c.up && c.granting; };
    o.is_accessible = [this](NodeId i) { return at(i).up; };
    o.version_of = [this](NodeId i) { return at(i).version; };
    return o;
}

ReadOutcome ReplicaStore::read(Rng& rng) {
    const PermissionOracle o = oracle();
    if (config_.fallback_reads && !o.get_permission(kHubId)) {
        QuorumSet q = read_quorum_fallback(wheel_, o);
        // the fresher pair member is authoritative
        const NodeId a = q.members[0];
        const NodeId b = q.members[1];
        NodeId best = at(a).version >= at(b).version ? a : b;
        const SiteCopy& c = at(best);
        return ReadOutcome{c.value, c.version, std::move(q)};
    }
    auto q = read_quorum(wheel_, o, rng, &stats_);
    // the store's wheel is never empty, so the nil branch cannot trigger
    const SiteCopy& hub = at(kHubId);
    return ReadOutcome{hub.value, hub.version, std::move(*q)};
}

WriteOutcome ReplicaStore::write(Payload payload, Rng& rng, NodeId start) {
    QuorumSet q = write_quorum(wheel_, oracle(), rng, start, &stats_);
    const Version next = q.version_basis + 1;
    for (NodeId m : q.members) {
        SiteCopy& c = at(m);
        c.value = payload;
        c.version = next;
    }
    committed_ = std::max(committed_, next);
    return WriteOutcome{next, std::move(q)};
}

ElectionOutcome ReplicaStore::elect_hub(Rng& rng) {
    return election_quorum(wheel_, oracle(), rng, kHubId, &stats_);
}

ReplicaCopy ReplicaStore::copy(NodeId logical) const {
    const SiteCopy& c = at(logical);
    return ReplicaCopy{logical, c.value, c.version, c.up, c.granting};
}

void ReplicaStore::set_up(NodeId logical, bool up) {
    SiteCopy& c = at(logical);
    c.up = up;
    c.granting = up;
}

void ReplicaStore::set_granting(NodeId logical, bool granting) {
    SiteCopy& c = at(logical);
    if (granting && !c.up)
        throw DomainError("a down copy cannot grant access");
    c.granting = granting;
}

std::string ReplicaStore::export_snapshot() const {
    std::ostringstream os;
    for (NodeId i = 0; i < wheel_.size(); ++i) {
        const SiteId& site = wheel_.resolve(i);
        const SiteCopy& c = copies_.at(site);
        os << "copy " << i << ' ' << site << ' ' << c.value << ' ' << c.version << ' '
           << (c.up ? 1 : 0) << ' ' << (c.granting ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace wheelq
