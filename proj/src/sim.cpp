#include "wheelq/sim.hpp"

#include <sstream>
#include <utility>

#include "wheelq/errors.hpp"
#include "text_util.hpp"

namespace wheelq {

namespace {

const char* kind_token(EventKind k) {
    switch (k) {
        case EventKind::Read: return "read";
        case EventKind::Write: return "write";
        case EventKind::Crash: return "crash";
        case EventKind::Recover: return "recover";
        case EventKind::OverloadCheck: return "overload_check";
    }
    throw DomainError("unknown event kind");
}

EventKind kind_from(const std::string& token) {
    if (token == "read") return EventKind::Read;
    if (token == "write") return EventKind::Write;
    if (token == "crash") return EventKind::Crash;
    if (token == "recover") return EventKind::Recover;
    if (token == "overload_check") return EventKind::OverloadCheck;
    throw DomainError("unknown event kind '" + token + "'");
}

Wheel build_wheel(const Scenario& sc) {
    std::vector<SiteId> sites = sc.sites;
    if (sites.empty())
        for (int i = 0; i < sc.n; ++i) sites.push_back("s" + std::to_string(i));
    if (sc.suc_override.empty()) return Wheel::build(sc.n, std::move(sites));
    return Wheel::build(sc.n, std::move(sites), sc.suc_override);
}

void check_probability(double p, const char* label) {
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError(std::string(label) + " must lie in [0,1]");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_flag(const std::string& token, const char* label) {
    if (token == "0") return false;
    if (token == "1") return true;
    throw DomainError(std::string(label) + " must be 0 or 1");
}

}  // namespace

void validate_scenario(const Scenario& sc) {
    if (sc.n < kMinWheelSize)
        throw DomainError("scenario needs at least " + std::to_string(kMinWheelSize) + " nodes");
    if (sc.load_threshold < 1) throw DomainError("load threshold must be at least 1");
    if (!sc.sites.empty() && static_cast<int>(sc.sites.size()) != sc.n)
        throw DomainError("scenario lists " + std::to_string(sc.sites.size()) + " sites for n=" +
                          std::to_string(sc.n));
    if (!sc.suc_override.empty() && static_cast<int>(sc.suc_override.size()) != sc.n - 1)
        throw DomainError("scenario successor wiring must list " + std::to_string(sc.n - 1) +
                          " entries");

    bool first = true;
    std::uint64_t prev = 0;
    for (const Event& ev : sc.events) {
        if (!first && ev.seq <= prev)
            throw DomainError("event sequence indices must be strictly increasing");
        prev = ev.seq;
        first = false;
        if (ev.kind == EventKind::Crash || ev.kind == EventKind::Recover) {
            if (ev.target < 0 || ev.target >= sc.n)
                throw DomainError("event targets node " + std::to_string(ev.target) +
                                  " outside 0.." + std::to_string(sc.n - 1));
        }
    }
}

SimResult run_scenario(const Scenario& sc) {
    validate_scenario(sc);
    ReplicaStore store(build_wheel(sc), StoreConfig{sc.fallback_reads});
    Rng rng(sc.seed);

    SimResult result;
    result.trace.reserve(sc.events.size());
    Metrics& m = result.metrics;
    std::uint64_t hub_reads = 0;

    for (const Event& ev : sc.events) {
        TraceRecord rec;
        rec.event = ev;
        const std::uint64_t pre_elections = store.engine_stats().elections_ok;

        switch (ev.kind) {
            case EventKind::Read: {
                try {
                    const ReadOutcome out = store.read(rng);
                    rec.ok = true;
                    rec.value = out.value;
                    rec.version = out.version;
                    rec.quorum = out.quorum.members;
                    ++m.reads_ok;
                    ++m.read_quorum_sizes[out.quorum.members.size()];
                } catch (const QuorumUnavailable&) {
                    ++m.reads_failed;
                }
                break;
            }
            case EventKind::Write: {
                // The starting cycle node is drawn before the attempt so a
                // failed write consumes the same randomness as a successful
                // one.
                const NodeId start = rng.next_in_range(1, sc.n - 1);
                try {
                    const WriteOutcome out = store.write(ev.payload, rng, start);
                    rec.ok = true;
                    rec.version = out.version;
                    rec.quorum = out.quorum.members;
                    ++m.writes_ok;
                    ++m.write_quorum_sizes[out.quorum.members.size()];
                } catch (const QuorumUnavailable&) {
                    ++m.writes_failed;
                }
                break;
            }
            case EventKind::Crash:
                store.set_up(ev.target, false);
                rec.ok = true;
                break;
            case EventKind::Recover:
                store.set_up(ev.target, true);
                rec.ok = true;
                break;
            case EventKind::OverloadCheck: {
                try {
                    const ElectionOutcome out = store.elect_hub(rng);
                    rec.ok = true;
                    rec.quorum = {out.pair_first, out.pair_second};
                } catch (const QuorumUnavailable&) {
                }
                hub_reads = 0;
                break;
            }
        }

        // A successful election starts a new hub incarnation whose load
        // counter begins empty.
        if (store.engine_stats().elections_ok != pre_elections) hub_reads = 0;
        if (ev.kind == EventKind::Read && rec.ok &&
            rec.quorum == std::vector<NodeId>{kHubId}) {
            ++hub_reads;
            if (hub_reads >= sc.load_threshold) {
                try {
                    store.elect_hub(rng);
                } catch (const QuorumUnavailable&) {
                }
                hub_reads = 0;
            }
        }

        rec.hub_site = store.wheel().resolve(kHubId);
        rec.elections_so_far = store.engine_stats().elections_ok;
        ++m.hub_tenure[rec.hub_site];
        result.trace.push_back(std::move(rec));
    }

    m.elections = store.engine_stats().elections_ok;
    m.elections_failed = store.engine_stats().elections_failed;
    result.final_snapshot = store.export_snapshot();
    return result;
}

bool check_one_copy(const std::vector<TraceRecord>& trace) {
    Payload value = kInitialPayload;
    Version version = 0;
    for (const TraceRecord& rec : trace) {
        if (!rec.ok) continue;
        if (rec.event.kind == EventKind::Write) {
            if (!rec.version.has_value() || *rec.version != version + 1) return false;
            version = *rec.version;
            value = rec.event.payload;
        } else if (rec.event.kind == EventKind::Read) {
            if (!rec.value.has_value() || !rec.version.has_value()) return false;
            if (*rec.value != value || *rec.version != version) return false;
        }
    }
    return true;
}

Scenario random_scenario(int n, std::uint64_t seed, int steps, double p_crash,
                         double p_recover, double read_fraction) {
    if (n < kMinWheelSize)
        throw DomainError("scenario needs at least " + std::to_string(kMinWheelSize) + " nodes");
    if (steps < 0) throw DomainError("steps must be non-negative");
    check_probability(p_crash, "p_crash");
    check_probability(p_recover, "p_recover");
    check_probability(read_fraction, "read_fraction");

    Scenario sc;
    sc.n = n;
    sc.seed = seed;

    Rng rng(seed);
    std::vector<bool> up(n, true);
    int up_count = n;

    // Picks the k-th set bit of `state` equal to `want`, 1-based.
    const auto pick_nth = [&](bool want, int k) {
        for (int i = 0; i < n; ++i) {
            if (up[i] == want && --k == 0) return i;
        }
        throw DomainError("internal generator bookkeeping error");
    };

    for (int step = 0; step < steps; ++step) {
        Event ev;
        ev.seq = static_cast<std::uint64_t>(step);
        bool placed = false;
        const double band = rng.next_unit();
        if (band < p_crash) {
            // Crashing the last node up is dropped rather than retried; the
            // step degrades to an ordinary operation.
            if (up_count > 1) {
                const int victim = pick_nth(true, rng.next_in_range(1, up_count));
                ev.kind = EventKind::Crash;
                ev.target = victim;
                up[victim] = false;
                --up_count;
                placed = true;
            }
        } else if (band < p_crash + p_recover) {
            if (up_count < n) {
                const int node = pick_nth(false, rng.next_in_range(1, n - up_count));
                ev.kind = EventKind::Recover;
                ev.target = node;
                up[node] = true;
                ++up_count;
                placed = true;
            }
        }
        if (!placed) {
            if (rng.next_unit() < read_fraction) {
                ev.kind = EventKind::Read;
            } else {
                ev.kind = EventKind::Write;
                ev.payload = rng.next_u64() % 1000000;
            }
        }
        sc.events.push_back(ev);
    }
    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream os;
    os << "wheelq-scenario v1\n";
    os << "n " << sc.n << "\n";
    os << "seed " << sc.seed << "\n";
    os << "load_threshold " << sc.load_threshold << "\n";
    os << "fallback_reads " << (sc.fallback_reads ? 1 : 0) << "\n";
    if (!sc.sites.empty()) {
        os << "sites";
        for (const SiteId& s : sc.sites) os << ' ' << s;
        os << "\n";
    }
    if (!sc.suc_override.empty()) {
        os << "suc";
        for (NodeId s : sc.suc_override) os << ' ' << s;
        os << "\n";
    }
    for (const Event& ev : sc.events) {
        os << "event " << kind_token(ev.kind);
        if (ev.kind == EventKind::Write) os << ' ' << ev.payload;
        if (ev.kind == EventKind::Crash || ev.kind == EventKind::Recover) os << ' ' << ev.target;
        os << "\n";
    }
    return os.str();
}

Scenario parse_scenario(std::istream& in) {
    const auto rows = text::tokenize_lines(in);
    if (rows.empty() || rows[0] != std::vector<std::string>{"wheelq-scenario", "v1"})
        throw DomainError("missing 'wheelq-scenario v1' header");

    Scenario sc;
    bool have_n = false;
    bool have_generator = false;
    int gen_steps = 100;
    double gen_p_crash = 0.0;
    double gen_p_recover = 0.0;
    double gen_read_fraction = 0.7;

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row[0] == "n" && row.size() == 2) {
            sc.n = text::parse_int(row[1], "n");
            have_n = true;
        } else if (row[0] == "seed" && row.size() == 2) {
            sc.seed = text::parse_u64(row[1], "seed");
        } else if (row[0] == "load_threshold" && row.size() == 2) {
            sc.load_threshold = text::parse_u64(row[1], "load_threshold");
        } else if (row[0] == "fallback_reads" && row.size() == 2) {
            sc.fallback_reads = parse_flag(row[1], "fallback_reads");
        } else if (row[0] == "sites") {
            sc.sites.assign(row.begin() + 1, row.end());
        } else if (row[0] == "suc") {
            sc.suc_override.clear();
            for (std::size_t k = 1; k < row.size(); ++k)
                sc.suc_override.push_back(text::parse_int(row[k], "suc entry"));
        } else if (row[0] == "event") {
            if (row.size() < 2) throw DomainError("event line missing kind");
            Event ev;
            ev.seq = sc.events.size();
            const std::string& tok = row[1];
            if (tok == "read" && row.size() == 2) {
                ev.kind = EventKind::Read;
            } else if (tok == "overload_check" && row.size() == 2) {
                ev.kind = EventKind::OverloadCheck;
            } else if (tok == "write" && row.size() == 3) {
                ev.kind = EventKind::Write;
                ev.payload = text::parse_u64(row[2], "write payload");
            } else if (tok == "crash" && row.size() == 3) {
                ev.kind = EventKind::Crash;
                ev.target = text::parse_int(row[2], "crash target");
            } else if (tok == "recover" && row.size() == 3) {
                ev.kind = EventKind::Recover;
                ev.target = text::parse_int(row[2], "recover target");
            } else {
                throw DomainError("malformed event line '" + tok + "'");
            }
            sc.events.push_back(ev);
        } else if (row[0] == "generate") {
            if (have_generator) throw DomainError("scenario lists more than one generator line");
            have_generator = true;
            if (row.size() % 2 != 1)
                throw DomainError("generator line expects key value pairs");
            for (std::size_t k = 1; k + 1 < row.size(); k += 2) {
                const std::string& key = row[k];
                const std::string& val = row[k + 1];
                if (key == "steps")
                    gen_steps = text::parse_int(val, "steps");
                else if (key == "p_crash")
                    gen_p_crash = text::parse_double(val, "p_crash");
                else if (key == "p_recover")
                    gen_p_recover = text::parse_double(val, "p_recover");
                else if (key == "read_fraction")
                    gen_read_fraction = text::parse_double(val, "read_fraction");
                else
                    throw DomainError("unknown generator parameter '" + key + "'");
            }
        } else {
            throw DomainError("unknown scenario line '" + row[0] + "'");
        }
    }

    if (!have_n) throw DomainError("scenario missing n");
    if (have_generator && !sc.events.empty())
        throw DomainError("scenario mixes scripted events with a generator");
    if (have_generator) {
        Scenario generated = random_scenario(sc.n, sc.seed, gen_steps, gen_p_crash,
                                             gen_p_recover, gen_read_fraction);
        sc.events = std::move(generated.events);
    }
    validate_scenario(sc);
    return sc;
}

Scenario parse_scenario(const std::string& text) {
    std::istringstream is(text);
    return parse_scenario(is);
}

std::string serialize_trace(const Scenario& sc, const std::vector<TraceRecord>& trace) {
    std::ostringstream os;
    os << "wheelq-trace v1\n";
    os << "n " << sc.n << "\n";
    os << "seed " << sc.seed << "\n";
    os << "load_threshold " << sc.load_threshold << "\n";
    for (const TraceRecord& rec : trace) {
        os << "rec " << rec.event.seq << ' ' << kind_token(rec.event.kind) << ' ';
        if (rec.event.kind == EventKind::Write)
            os << rec.event.payload;
        else if (rec.event.kind == EventKind::Crash || rec.event.kind == EventKind::Recover)
            os << rec.event.target;
        else
            os << '-';
        os << ' ' << (rec.ok ? "ok" : "fail") << ' ';
        if (rec.value.has_value())
            os << *rec.value;
        else
            os << '-';
        os << ' ';
        if (rec.version.has_value())
            os << *rec.version;
        else
            os << '-';
        os << ' ';
        if (rec.quorum.empty()) {
            os << '-';
        } else {
            for (std::size_t i = 0; i < rec.quorum.size(); ++i) {
                if (i > 0) os << ',';
                os << rec.quorum[i];
            }
        }
        os << ' ' << rec.hub_site << ' ' << rec.elections_so_far << "\n";
    }
    os << "end " << trace.size() << "\n";
    return os.str();
}

TraceFile parse_trace(std::istream& in) {
    const auto rows = text::tokenize_lines(in);
    if (rows.empty() || rows[0] != std::vector<std::string>{"wheelq-trace", "v1"})
        throw DomainError("missing 'wheelq-trace v1' header");

    TraceFile tf;
    bool have_end = false;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (have_end) throw DomainError("trace continues past its end marker");
        if (row[0] == "n" && row.size() == 2) {
            tf.n = text::parse_int(row[1], "n");
        } else if (row[0] == "seed" && row.size() == 2) {
            tf.seed = text::parse_u64(row[1], "seed");
        } else if (row[0] == "load_threshold" && row.size() == 2) {
            tf.load_threshold = text::parse_u64(row[1], "load_threshold");
        } else if (row[0] == "rec") {
            if (row.size() != 10) throw DomainError("malformed trace record");
            TraceRecord rec;
            rec.event.seq = text::parse_u64(row[1], "record sequence");
            rec.event.kind = kind_from(row[2]);
            if (rec.event.kind == EventKind::Write) {
                rec.event.payload = text::parse_u64(row[3], "write payload");
            } else if (rec.event.kind == EventKind::Crash ||
                       rec.event.kind == EventKind::Recover) {
                rec.event.target = text::parse_int(row[3], "event target");
            } else if (row[3] != "-") {
                throw DomainError("unexpected argument on " + row[2] + " record");
            }
            if (row[4] == "ok")
                rec.ok = true;
            else if (row[4] == "fail")
                rec.ok = false;
            else
                throw DomainError("record status must be ok or fail");
            if (row[5] != "-") rec.value = text::parse_u64(row[5], "record value");
            if (row[6] != "-") rec.version = text::parse_u64(row[6], "record version");
            if (row[7] != "-") {
                for (const std::string& piece : split_csv(row[7]))
                    rec.quorum.push_back(text::parse_int(piece, "quorum member"));
            }
            rec.hub_site = row[8];
            rec.elections_so_far = text::parse_u64(row[9], "election counter");
            tf.records.push_back(std::move(rec));
        } else if (row[0] == "end" && row.size() == 2) {
            const std::uint64_t declared = text::parse_u64(row[1], "record count");
            if (declared != tf.records.size())
                throw DomainError("trace truncated: expected " + row[1] + " records, found " +
                                  std::to_string(tf.records.size()));
            have_end = true;
        } else {
            throw DomainError("unknown trace line '" + row[0] + "'");
        }
    }
    if (!have_end) throw DomainError("trace truncated: missing end marker");
    return tf;
}

TraceFile parse_trace(const std::string& text) {
    std::istringstream is(text);
    return parse_trace(is);
}

std::string serialize_metrics(const Metrics& metrics, const std::string& snapshot) {
    std::ostringstream os;
    os << "wheelq-metrics v1\n";
    os << "reads_ok " << metrics.reads_ok << "\n";
    os << "reads_failed " << metrics.reads_failed << "\n";
    os << "writes_ok " << metrics.writes_ok << "\n";
    os << "writes_failed " << metrics.writes_failed << "\n";
    os << "elections " << metrics.elections << "\n";
    os << "elections_failed " << metrics.elections_failed << "\n";
    for (const auto& [size, count] : metrics.read_quorum_sizes)
        os << "read_quorum_size " << size << ' ' << count << "\n";
    for (const auto& [size, count] : metrics.write_quorum_sizes)
        os << "write_quorum_size " << size << ' ' << count << "\n";
    for (const auto& [site, count] : metrics.hub_tenure)
        os << "hub_tenure " << site << ' ' << count << "\n";
    os << snapshot;
    return os.str();
}

}  // namespace wheelq
