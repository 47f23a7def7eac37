#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wheelq/wheel.hpp"

namespace wheelq {

using IdSet = std::set<NodeId>;
using IdSetFamily = std::set<IdSet>;

// Non-negative weights over the nodes; a set carries a quorum when its
// weight strictly exceeds half the total.
struct VoteAssignment {
    std::vector<int> votes;
    long long total = 0;
};

struct CoterieCheck {
    bool minimality_ok = false;   // no quorum is a proper subset of another
    bool intersection_ok = false; // every pair of quorums intersects
};

struct TheoremCheck {
    bool rw_ok = false;             // {0} meets every write quorum
    bool ww_ok = false;             // write quorums pairwise intersect
    bool adjacent_cover_ok = false; // every adjacent cycle pair meets every
                                    // write quorum's cycle part
};

struct CoterieReport {
    int n = 0;
    IdSetFamily write_quorums;
    IdSetFamily read_quorums;
    bool minimality_ok = false;
    bool rw_intersection_ok = false;
    bool ww_intersection_ok = false;
    bool adjacent_cover_ok = false;
    std::optional<VoteAssignment> vote_equivalent;  // absent: none within bound
    int search_bound = 0;
};

// All sets {0} + alternating-walk(i) for cycle starts i on the fault-free
// wheel, deduplicated. Every member has cardinality ceil((n-1)/2) + 1.
IdSetFamily enumerate_write_quorums(int n);

// Always {{0}}.
IdSetFamily read_quorum_family(int n);

CoterieCheck verify_coterie(const IdSetFamily& quorums);

// Exhaustive checks of the intersection and coverage properties over the
// enumerated write-quorum family for a given wheel size.
TheoremCheck verify_theorems(int n);

// Minimal sets whose vote sum strictly exceeds half the total.
std::vector<IdSet> minimal_majority_family(const std::vector<int>& votes);

// Exhaustive search over assignments v_i in {0..max_vote}: a witness is an
// assignment whose family of minimal strict-majority sets equals `quorums`
// exactly. Absence means "none within the bound", not a proof.
std::optional<VoteAssignment> vote_equivalence_search(const IdSetFamily& quorums,
                                                      int n, int max_vote);

// Bounded-integer feasibility of a mixed system: every set in `majorities`
// must carry more than half the total vote while every set in `minorities`
// carries less.
bool vote_system_feasible_bounded(int n, const std::vector<IdSet>& majorities,
                                  const std::vector<IdSet>& minorities, int max_vote);

// Recognizes the unsatisfiable shape where both sides sum over the same
// index multiset (with at least as many majority sets as minority sets),
// forcing an identical total to be both above and below the same bound.
// Holds over any ordered field, independent of the integer search bound.
bool vote_system_sum_contradiction(const std::vector<IdSet>& majorities,
                                   const std::vector<IdSet>& minorities);

// Full offline pass: enumeration, coterie checks, theorem checks, vote
// search up to max_vote.
CoterieReport analyze_coterie(int n, int max_vote);

std::string to_report_text(const CoterieReport& report);

}  // namespace wheelq
