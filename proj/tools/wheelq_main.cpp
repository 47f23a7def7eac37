#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wheelq/coterie.hpp"
#include "wheelq/errors.hpp"
#include "wheelq/sim.hpp"

namespace {

int log_level() {
    const char* env = std::getenv("WHEELQ_LOG");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0') return 1;
    return static_cast<int>(v);
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[wheelq] " << msg << "\n";
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"replica control over a logical wheel: simulation, coterie "
                 "analysis, trace verification"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a scenario, emit trace and metrics");
    std::string scenario_path;
    int sim_n = 0;
    std::uint64_t seed = 0;
    int steps = 100;
    double p_crash = 0.0;
    double p_recover = 0.0;
    double read_fraction = 0.7;
    std::uint64_t load_threshold = wheelq::kDefaultLoadThreshold;
    bool fallback_reads = false;
    std::string sim_out = "wheelq.trace";
    auto* opt_scenario = sim->add_option("--scenario", scenario_path, "scenario file to run");
    auto* opt_n = sim->add_option("--n", sim_n, "wheel size for a generated scenario");
    auto* opt_seed = sim->add_option("--seed", seed, "seed (default 0, never wall-clock)");
    auto* opt_steps = sim->add_option("--steps", steps, "generated event count (default 100)");
    auto* opt_pc = sim->add_option("--p-crash", p_crash, "per-step crash probability");
    auto* opt_pr = sim->add_option("--p-recover", p_recover, "per-step recovery probability");
    auto* opt_rf =
        sim->add_option("--read-fraction", read_fraction, "fraction of operations that read");
    auto* opt_lt = sim->add_option("--load-threshold", load_threshold,
                                   "hub reads per incarnation before a hand-off election");
    auto* opt_fb = sim->add_flag("--fallback-reads", fallback_reads,
                                 "serve reads from an adjacent cycle pair when the hub is out");
    sim->add_option("--out", sim_out, "trace output path (metrics at <out>.metrics)");
    opt_scenario->excludes(opt_n, opt_steps, opt_pc, opt_pr, opt_rf);

    // analyze
    auto* ana = app.add_subcommand("analyze", "enumerate quorums, check coterie properties, "
                                              "search for a vote equivalent");
    int ana_n = 0;
    int max_vote = 0;
    std::string ana_out = "wheelq.coterie";
    ana->add_option("--n", ana_n, "wheel size")->required();
    auto* opt_mv = ana->add_option("--max-vote", max_vote, "vote search bound (default: n)");
    ana->add_option("--out", ana_out, "report output path");

    // verify
    auto* ver = app.add_subcommand("verify", "replay the one-copy check on a stored trace");
    std::string trace_path;
    ver->add_option("trace", trace_path, "trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto run_simulate = [&]() -> int {
        wheelq::Scenario sc;
        if (opt_scenario->count() > 0) {
            std::ifstream in(scenario_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot open scenario '" << scenario_path << "'\n";
                return 2;
            }
            sc = wheelq::parse_scenario(in);
            info("loaded scenario " + scenario_path);
            if (opt_seed->count() > 0) sc.seed = seed;
            if (opt_lt->count() > 0) sc.load_threshold = load_threshold;
            if (opt_fb->count() > 0) sc.fallback_reads = fallback_reads;
        } else {
            if (opt_n->count() == 0) {
                std::cerr << "error: simulate needs --scenario or --n\n";
                return 2;
            }
            sc = wheelq::random_scenario(sim_n, seed, steps, p_crash, p_recover, read_fraction);
            sc.load_threshold = load_threshold;
            sc.fallback_reads = fallback_reads;
        }

        const wheelq::SimResult result = wheelq::run_scenario(sc);
        const bool one_copy = wheelq::check_one_copy(result.trace);

        const std::string metrics_path = sim_out + ".metrics";
        if (!write_file(sim_out, wheelq::serialize_trace(sc, result.trace))) {
            std::cerr << "error: cannot write trace '" << sim_out << "'\n";
            return 2;
        }
        if (!write_file(metrics_path,
                        wheelq::serialize_metrics(result.metrics, result.final_snapshot))) {
            std::cerr << "error: cannot write metrics '" << metrics_path << "'\n";
            return 2;
        }

        const wheelq::Metrics& m = result.metrics;
        std::cout << "events " << result.trace.size() << " (n=" << sc.n << " seed=" << sc.seed
                  << ")\n";
        std::cout << "reads " << m.reads_ok << " ok, " << m.reads_failed << " failed; writes "
                  << m.writes_ok << " ok, " << m.writes_failed << " failed\n";
        std::cout << "elections " << m.elections << " (" << m.elections_failed << " failed)\n";
        std::cout << "one-copy " << (one_copy ? "ok" : "VIOLATION") << "\n";
        std::cout << "trace " << sim_out << "\nmetrics " << metrics_path << "\n";
        return one_copy ? 0 : 1;
    };

    const auto run_analyze = [&]() -> int {
        const int bound = opt_mv->count() > 0 ? max_vote : ana_n;
        const wheelq::CoterieReport report = wheelq::analyze_coterie(ana_n, bound);
        if (!write_file(ana_out, wheelq::to_report_text(report))) {
            std::cerr << "error: cannot write report '" << ana_out << "'\n";
            return 2;
        }
        bool ok = true;
        const auto complain = [&](const char* what) {
            std::cout << "property failed: " << what << "\n";
            ok = false;
        };
        if (!report.minimality_ok) complain("coterie minimality");
        if (!report.rw_intersection_ok) complain("read-write intersection");
        if (!report.ww_intersection_ok) complain("write-write intersection");
        if (!report.adjacent_cover_ok) complain("adjacent-pair coverage");
        if (report.vote_equivalent.has_value()) {
            std::ostringstream os;
            os << "vote equivalent found within bound " << report.search_bound << ":";
            for (int v : report.vote_equivalent->votes) os << ' ' << v;
            complain(os.str().c_str());
        }
        std::cout << "write quorums " << report.write_quorums.size() << ", bound "
                  << report.search_bound << ", report " << ana_out << "\n";
        std::cout << (ok ? "all properties hold, no vote equivalent within bound\n"
                         : "see report for details\n");
        return ok ? 0 : 1;
    };

    const auto run_verify = [&]() -> int {
        std::ifstream in(trace_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open trace '" << trace_path << "'\n";
            return 2;
        }
        const wheelq::TraceFile tf = wheelq::parse_trace(in);
        const bool ok = wheelq::check_one_copy(tf.records);
        std::cout << tf.records.size() << " records, one-copy " << (ok ? "ok" : "VIOLATION")
                  << "\n";
        return ok ? 0 : 1;
    };

    try {
        if (sim->parsed()) return run_simulate();
        if (ana->parsed()) return run_analyze();
        if (ver->parsed()) return run_verify();
    } catch (const wheelq::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
