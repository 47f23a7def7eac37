#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wheelq/quorum.hpp"
#include "wheelq/wheel.hpp"

namespace wheelq {

using Payload = std::uint64_t;

inline constexpr Payload kInitialPayload = 0;

// One site's copy as seen through its current logical binding.
struct ReplicaCopy {
    NodeId logical_id = -1;
    Payload value = kInitialPayload;
    Version version = 0;
    bool up = true;
    bool granting = true;
};

struct StoreConfig {
    // When set, a read whose hub permission is refused falls back to an
    // adjacent cycle pair instead of electing a replacement hub.
    bool fallback_reads = false;
};

struct ReadOutcome {
    Payload value = 0;
    Version version = 0;
    QuorumSet quorum;
};

struct WriteOutcome {
    Version version = 0;
    QuorumSet quorum;
};

// Versioned single-object replicated store over the quorum engine. Copy
// state lives with the physical site; an election re-binds logical IDs by
// swapping locations inside the wheel, so data never moves between sites.
// Operations are serialized: one read or write runs to completion before
// the next begins.
class ReplicaStore {
public:
    explicit ReplicaStore(Wheel wheel, StoreConfig config = {});

    // One-copy read: hub copy under a read quorum, or the fresher member of
    // an adjacent pair in fallback mode. Throws QuorumUnavailable.
    ReadOutcome read(Rng& rng);

    // Quorum write: installs (payload, 1 + highest version observed in the
    // quorum) on every member. A refused write mutates nothing.
    WriteOutcome write(Payload payload, Rng& rng, NodeId start);

    // Hub election outside any read/write, used by the load monitor.
    ElectionOutcome elect_hub(Rng& rng);

    // Permission callbacks backed by per-copy state; bound to this store.
    PermissionOracle oracle() const;

    const Wheel& wheel() const { return wheel_; }
    int size() const { return wheel_.size(); }
    ReplicaCopy copy(NodeId logical) const;
    Version committed_version() const { return committed_; }
    const EngineStats& engine_stats() const { return stats_; }
    const StoreConfig& config() const { return config_; }

    // Fail-stop transitions. Going down revokes the grant; recovery restores
    // it along with the copy's pre-crash value and version.
    void set_up(NodeId logical, bool up);
    void set_granting(NodeId logical, bool granting);

    // Line-delimited dump of every copy in logical-ID order.
    std::string export_snapshot() const;

private:
    struct SiteCopy {
        Payload value = kInitialPayload;
        Version version = 0;
        bool up = true;
        bool granting = true;
    };

    Wheel wheel_;
    StoreConfig config_;
    std::map<SiteId, SiteCopy> copies_;
    Version committed_ = 0;
    EngineStats stats_;

    SiteCopy& at(NodeId logical);
    const SiteCopy& at(NodeId logical) const;
};

}  // namespace wheelq
