#include "wheelq/coterie.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#include "wheelq/errors.hpp"
#include "wheelq/quorum.hpp"

namespace wheelq {

namespace {

constexpr int kMaxVoteUniverse = 20;

std::vector<SiteId> default_sites(int n) {
    std::vector<SiteId> sites;
    sites.reserve(n > 0 ? n : 0);
    for (int i = 0; i < n; ++i) sites.push_back("s" + std::to_string(i));
    return sites;
}

PermissionOracle all_grant_oracle() {
    PermissionOracle o;
    o.get_permission = [](NodeId) { return true; };
    o.is_accessible = [](NodeId) { return true; };
    o.version_of = [](NodeId) { return Version{0}; };
    return o;
}

void check_universe(int n) {
    if (n < 1 || n > kMaxVoteUniverse)
        throw DomainError("vote universe must have 1.." +
                          std::to_string(kMaxVoteUniverse) + " members");
}

std::uint32_t to_mask(const IdSet& s, int n) {
    std::uint32_t mask = 0;
    for (NodeId id : s) {
        if (id < 0 || id >= n) throw DomainError("set member " + std::to_string(id) +
                                                 " outside universe 0.." + std::to_string(n - 1));
        mask |= std::uint32_t{1} << id;
    }
    return mask;
}

long long mask_sum(std::uint32_t mask, const std::vector<int>& votes) {
    long long s = 0;
    while (mask != 0) {
        s += votes[std::countr_zero(mask)];
        mask &= mask - 1;
    }
    return s;
}

// Advances the assignment in lexicographic order, last index fastest.
// Returns false once the all-max assignment rolls over.
bool next_assignment(std::vector<int>& v, int max_vote) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
        if (v[i] < max_vote) {
            ++v[i];
            return true;
        }
        v[i] = 0;
    }
    return false;
}

void check_vote_bound(int max_vote) {
    if (max_vote < 1) throw DomainError("vote bound must be at least 1");
}

}  // namespace

IdSetFamily enumerate_write_quorums(int n) {
    const Wheel w = Wheel::build(n, default_sites(n));
    const PermissionOracle grant = all_grant_oracle();
    IdSetFamily family;
    for (NodeId start = 1; start < n; ++start) {
        const std::vector<NodeId> walk = check_alternating(w, grant, start);
        IdSet q{kHubId};
        q.insert(walk.begin(), walk.end());
        family.insert(std::move(q));
    }
    return family;
}

IdSetFamily read_quorum_family(int n) {
    if (n < kMinWheelSize)
        throw DomainError("wheel needs at least " + std::to_string(kMinWheelSize) + " nodes");
    return IdSetFamily{IdSet{kHubId}};
}

CoterieCheck verify_coterie(const IdSetFamily& quorums) {
    if (quorums.empty()) throw DomainError("quorum family is empty");
    for (const IdSet& q : quorums)
        if (q.empty()) throw DomainError("quorum family contains an empty set");

    CoterieCheck result;
    result.minimality_ok = true;
    result.intersection_ok = true;
    for (const IdSet& a : quorums) {
        for (const IdSet& b : quorums) {
            if (&a == &b) continue;
            if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end()))
                result.minimality_ok = false;
            IdSet common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(common, common.begin()));
            if (common.empty()) result.intersection_ok = false;
        }
    }
    return result;
}

TheoremCheck verify_theorems(int n) {
    const Wheel w = Wheel::build(n, default_sites(n));
    const IdSetFamily writes = enumerate_write_quorums(n);
    const IdSetFamily reads = read_quorum_family(n);

    TheoremCheck result;
    result.rw_ok = true;
    result.ww_ok = true;
    result.adjacent_cover_ok = true;

    for (const IdSet& r : reads) {
        for (const IdSet& q : writes) {
            IdSet common;
            std::set_intersection(r.begin(), r.end(), q.begin(), q.end(),
                                  std::inserter(common, common.begin()));
            if (common.empty()) result.rw_ok = false;
        }
    }
    for (const IdSet& a : writes) {
        for (const IdSet& b : writes) {
            IdSet common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(common, common.begin()));
            if (common.empty()) result.ww_ok = false;
        }
    }
    // Every adjacent cycle pair must hold at least one cycle member of every
    // write quorum; this is what keeps one adjacent copy current across
    // hub swaps.
    for (const IdSet& q : writes) {
        for (NodeId i = 1; i < n; ++i) {
            const NodeId j = w.suc(i);
            if (q.count(i) == 0 && q.count(j) == 0) result.adjacent_cover_ok = false;
        }
    }
    return result;
}

std::vector<IdSet> minimal_majority_family(const std::vector<int>& votes) {
    const int n = static_cast<int>(votes.size());
    check_universe(n);
    for (int v : votes)
        if (v < 0) throw DomainError("votes must be non-negative");

    const std::uint32_t limit = std::uint32_t{1} << n;
    std::vector<long long> sum(limit, 0);
    long long total = 0;
    for (int i = 0; i < n; ++i) total += votes[i];
    for (std::uint32_t mask = 1; mask < limit; ++mask)
        sum[mask] = sum[mask & (mask - 1)] + votes[std::countr_zero(mask)];

    IdSetFamily family;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        if (2 * sum[mask] <= total) continue;
        bool minimal = true;
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            const int m = std::countr_zero(rest);
            if (2 * (sum[mask] - votes[m]) > total) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        IdSet s;
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
            s.insert(std::countr_zero(rest));
        family.insert(std::move(s));
    }
    return {family.begin(), family.end()};
}

std::optional<VoteAssignment> vote_equivalence_search(const IdSetFamily& quorums,
                                                      int n, int max_vote) {
    check_universe(n);
    check_vote_bound(max_vote);
    if (quorums.empty()) throw DomainError("quorum family is empty");

    std::vector<std::uint32_t> target;
    target.reserve(quorums.size());
    for (const IdSet& q : quorums) {
        if (q.empty()) throw DomainError("quorum family contains an empty set");
        target.push_back(to_mask(q, n));
    }

    const std::uint32_t limit = std::uint32_t{1} << n;
    std::vector<long long> sum(limit, 0);
    std::vector<int> votes(n, 0);

    // An assignment matches when the target sets are exactly the minimal
    // strict majorities: (a) each target is a majority, (b) each is minimal
    // under single-member removal, (c) every majority contains a target.
    // With non-negative votes (a)+(b)+(c) pins the minimal-majority family
    // to the target exactly.
    do {
        long long total = 0;
        for (int v : votes) total += v;
        if (total == 0) continue;

        bool ok = true;
        for (std::uint32_t f : target) {
            const long long s = mask_sum(f, votes);
            if (2 * s <= total) {
                ok = false;
                break;
            }
            for (std::uint32_t rest = f; rest != 0; rest &= rest - 1) {
                if (2 * (s - votes[std::countr_zero(rest)]) > total) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (!ok) continue;

        for (std::uint32_t mask = 1; mask < limit && ok; ++mask) {
            sum[mask] = sum[mask & (mask - 1)] + votes[std::countr_zero(mask)];
            if (2 * sum[mask] <= total) continue;
            bool covered = false;
            for (std::uint32_t f : target) {
                if ((mask & f) == f) {
                    covered = true;
                    break;
                }
            }
            if (!covered) ok = false;
        }
        if (ok) return VoteAssignment{votes, total};
    } while (next_assignment(votes, max_vote));
    return std::nullopt;
}

bool vote_system_feasible_bounded(int n, const std::vector<IdSet>& majorities,
                                  const std::vector<IdSet>& minorities, int max_vote) {
    check_universe(n);
    check_vote_bound(max_vote);

    std::vector<std::uint32_t> maj_masks;
    std::vector<std::uint32_t> min_masks;
    maj_masks.reserve(majorities.size());
    min_masks.reserve(minorities.size());
    for (const IdSet& s : majorities) maj_masks.push_back(to_mask(s, n));
    for (const IdSet& s : minorities) min_masks.push_back(to_mask(s, n));

    std::vector<int> votes(n, 0);
    do {
        long long total = 0;
        for (int v : votes) total += v;
        bool ok = true;
        for (std::uint32_t f : maj_masks) {
            if (2 * mask_sum(f, votes) <= total) {
                ok = false;
                break;
            }
        }
        for (std::size_t i = 0; ok && i < min_masks.size(); ++i) {
            if (2 * mask_sum(min_masks[i], votes) > total) ok = false;
        }
        if (ok) return true;
    } while (next_assignment(votes, max_vote));
    return false;
}

bool vote_system_sum_contradiction(const std::vector<IdSet>& majorities,
                                   const std::vector<IdSet>& minorities) {
    if (majorities.empty() || majorities.size() < minorities.size()) return false;
    std::vector<NodeId> maj_indices;
    std::vector<NodeId> min_indices;
    for (const IdSet& s : majorities) maj_indices.insert(maj_indices.end(), s.begin(), s.end());
    for (const IdSet& s : minorities) min_indices.insert(min_indices.end(), s.begin(), s.end());
    std::sort(maj_indices.begin(), maj_indices.end());
    std::sort(min_indices.begin(), min_indices.end());
    // Identical index multisets force the two side sums to coincide, yet the
    // majority side must exceed |majorities| * total/2 while the minority
    // side stays at or below |minorities| * total/2. With at least as many
    // majority sets, no non-negative assignment can satisfy both.
    return maj_indices == min_indices;
}

CoterieReport analyze_coterie(int n, int max_vote) {
    check_vote_bound(max_vote);
    CoterieReport report;
    report.n = n;
    report.write_quorums = enumerate_write_quorums(n);
    report.read_quorums = read_quorum_family(n);

    const CoterieCheck writes_check = verify_coterie(report.write_quorums);
    report.minimality_ok = writes_check.minimality_ok;
    report.ww_intersection_ok = writes_check.intersection_ok;

    const TheoremCheck theorems = verify_theorems(n);
    report.rw_intersection_ok = theorems.rw_ok;
    report.adjacent_cover_ok = theorems.adjacent_cover_ok;

    report.search_bound = max_vote;
    report.vote_equivalent = vote_equivalence_search(report.write_quorums, n, max_vote);
    return report;
}

namespace {

std::string csv(const IdSet& s) {
    std::ostringstream os;
    bool first = true;
    for (NodeId id : s) {
        if (!first) os << ',';
        os << id;
        first = false;
    }
    return os.str();
}

const char* ok_token(bool ok) { return ok ? "ok" : "fail"; }

}  // namespace

std::string to_report_text(const CoterieReport& report) {
    std::ostringstream os;
    os << "wheelq-coterie v1\n";
    os << "n " << report.n << "\n";
    for (const IdSet& q : report.write_quorums) os << "write_quorum " << csv(q) << "\n";
    for (const IdSet& q : report.read_quorums) os << "read_quorum " << csv(q) << "\n";
    os << "minimality " << ok_token(report.minimality_ok) << "\n";
    os << "rw_intersection " << ok_token(report.rw_intersection_ok) << "\n";
    os << "ww_intersection " << ok_token(report.ww_intersection_ok) << "\n";
    os << "adjacent_cover " << ok_token(report.adjacent_cover_ok) << "\n";
    os << "vote_search_bound " << report.search_bound << "\n";
    if (report.vote_equivalent.has_value()) {
        os << "vote_equivalent ";
        const auto& votes = report.vote_equivalent->votes;
        for (std::size_t i = 0; i < votes.size(); ++i) {
            if (i > 0) os << ',';
            os << votes[i];
        }
        os << "\n";
    } else {
        os << "vote_equivalent none\n";
    }
    return os.str();
}

}  // namespace wheelq
