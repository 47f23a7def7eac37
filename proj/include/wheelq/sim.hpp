#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wheelq/store.hpp"

namespace wheelq {

inline constexpr std::uint64_t kDefaultLoadThreshold = 16;

enum class EventKind { Read, Write, Crash, Recover, OverloadCheck };

struct Event {
    EventKind kind = EventKind::Read;
    std::uint64_t seq = 0;  // monotone issue index
    Payload payload = 0;    // Write only
    NodeId target = -1;     // Crash/Recover only, a logical ID
};

struct Scenario {
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t load_threshold = kDefaultLoadThreshold;
    bool fallback_reads = false;
    std::vector<SiteId> sites;        // empty: s0..s(n-1)
    std::vector<NodeId> suc_override; // empty: ascending cycle wiring
    std::vector<Event> events;
};

struct TraceRecord {
    Event event;
    bool ok = false;
    std::optional<Payload> value;   // successful reads
    std::optional<Version> version; // successful reads and writes
    std::vector<NodeId> quorum;     // logical IDs, as used by the operation
    SiteId hub_site;                // site bound to logical 0 after the event
    std::uint64_t elections_so_far = 0;
};

struct Metrics {
    std::uint64_t reads_ok = 0;
    std::uint64_t reads_failed = 0;
    std::uint64_t writes_ok = 0;
    std::uint64_t writes_failed = 0;
    std::map<std::size_t, std::uint64_t> read_quorum_sizes;
    std::map<std::size_t, std::uint64_t> write_quorum_sizes;
    std::uint64_t elections = 0;
    std::uint64_t elections_failed = 0;
    std::map<SiteId, std::uint64_t> hub_tenure;  // events served as hub
};

struct SimResult {
    std::vector<TraceRecord> trace;
    Metrics metrics;
    std::string final_snapshot;
};

struct TraceFile {
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t load_threshold = kDefaultLoadThreshold;
    std::vector<TraceRecord> records;
};

void validate_scenario(const Scenario& sc);

// Executes the events in order against a fresh store. Failures take effect
// between events; every event yields exactly one trace record. A successful
// hub-only read bumps the per-incarnation load counter; reaching
// load_threshold fires a hand-off election and resets it. Deterministic
// function of the scenario.
SimResult run_scenario(const Scenario& sc);

// Replays a shadow register (value 0, version 0) over the trace: each
// successful write must advance the version by exactly one, each successful
// read must return the shadow pair exactly.
bool check_one_copy(const std::vector<TraceRecord>& trace);

// Seeded generator. Per step one band draw: crash a random up node with
// p_crash (skipped when fewer than two are up), recover a random down node
// with p_recover (skipped when none are down); a skipped band falls through
// to an ordinary operation, so the scenario always carries exactly `steps`
// events. Operations are reads with probability read_fraction, writes
// otherwise.
Scenario random_scenario(int n, std::uint64_t seed, int steps, double p_crash,
                         double p_recover, double read_fraction);

std::string serialize_scenario(const Scenario& sc);
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario(const std::string& text);

std::string serialize_trace(const Scenario& sc, const std::vector<TraceRecord>& trace);
TraceFile parse_trace(std::istream& in);
TraceFile parse_trace(const std::string& text);

std::string serialize_metrics(const Metrics& metrics, const std::string& snapshot);

}  // namespace wheelq
