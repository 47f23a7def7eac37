#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "wheelq/coterie.hpp"
#include "wheelq/errors.hpp"
#include "wheelq/rng.hpp"

using namespace wheelq;

namespace {

// Independent oracle for the eligible write-quorum family, computed from
// modular arithmetic on the ascending cycle instead of walking a wheel:
// start s contributes {0} plus 1 + ((s-1) + 2j) mod (n-1) for j < floor(n/2).
IdSetFamily closed_form_family(int n) {
    IdSetFamily family;
    const int m = n - 1;
    const int k = n / 2;
    for (int s = 1; s <= m; ++s) {
        IdSet q{0};
        for (int j = 0; j < k; ++j) q.insert(1 + ((s - 1) + 2 * j) % m);
        family.insert(q);
    }
    return family;
}

int expected_write_size(int n) { return (n - 1 + 1) / 2 + 1; }  // ceil((n-1)/2)+1

const IdSetFamily kWheelSix = {{0, 1, 3, 5}, {0, 1, 2, 4}, {0, 2, 3, 5},
                               {0, 1, 3, 4}, {0, 2, 4, 5}};

}  // namespace

TEST_CASE("the six-node enumeration matches the published family exactly") {
    CHECK(enumerate_write_quorums(6) == kWheelSix);
}

TEST_CASE("small enumerations match hand-walked families") {
    CHECK(enumerate_write_quorums(4) == IdSetFamily{{0, 1, 3}, {0, 1, 2}, {0, 2, 3}});
    CHECK(enumerate_write_quorums(5) == IdSetFamily{{0, 1, 3}, {0, 2, 4}});
}

TEST_CASE("enumeration agrees with the closed form across sizes") {
    for (int n = 4; n <= 16; ++n) CHECK(enumerate_write_quorums(n) == closed_form_family(n));
}

TEST_CASE("every write quorum contains the hub and has the published size") {
    for (int n = 4; n <= 16; ++n) {
        for (const IdSet& q : enumerate_write_quorums(n)) {
            CHECK(q.count(0) == 1);
            CHECK(static_cast<int>(q.size()) == expected_write_size(n));
        }
    }
}

TEST_CASE("read quorums are always the hub singleton") {
    for (int n : {4, 7, 16}) CHECK(read_quorum_family(n) == IdSetFamily{IdSet{0}});
    CHECK_THROWS_AS(read_quorum_family(3), DomainError);
}

TEST_CASE("enumeration rejects undersized wheels") {
    CHECK_THROWS_AS(enumerate_write_quorums(3), DomainError);
}

TEST_CASE("coterie checks flag subset and disjointness violations") {
    CHECK(verify_coterie({{1, 2}, {1}}).minimality_ok == false);
    CHECK(verify_coterie({{1, 2}, {1}}).intersection_ok == true);
    CHECK(verify_coterie({{1}, {2}}).minimality_ok == true);
    CHECK(verify_coterie({{1}, {2}}).intersection_ok == false);
    CHECK(verify_coterie({{0}, {1, 3, 5}}).intersection_ok == false);
    CHECK_THROWS_AS(verify_coterie({}), DomainError);
    CHECK_THROWS_AS(verify_coterie({{1}, {}}), DomainError);
}

TEST_CASE("the enumerated families are genuine coteries for all sizes") {
    for (int n = 4; n <= 16; ++n) {
        const CoterieCheck c = verify_coterie(enumerate_write_quorums(n));
        CHECK(c.minimality_ok);
        CHECK(c.intersection_ok);
    }
}

TEST_CASE("the intersection and coverage properties hold for all sizes") {
    for (int n = 4; n <= 16; ++n) {
        const TheoremCheck t = verify_theorems(n);
        CHECK(t.rw_ok);
        CHECK(t.ww_ok);
        CHECK(t.adjacent_cover_ok);
    }
}

TEST_CASE("minimal majority families come out exactly") {
    CHECK(minimal_majority_family({1, 1, 1}) ==
          std::vector<IdSet>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(minimal_majority_family({1, 0, 0, 0}) == std::vector<IdSet>{{0}});
    CHECK(minimal_majority_family({0, 1, 1, 1}) ==
          std::vector<IdSet>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(minimal_majority_family({2, 1, 1}) == std::vector<IdSet>{{0, 1}, {0, 2}});
    CHECK(minimal_majority_family({0, 0}).empty());
    CHECK_THROWS_AS(minimal_majority_family({-1, 2}), DomainError);
    CHECK_THROWS_AS(minimal_majority_family(std::vector<int>(21, 1)), DomainError);
    CHECK_THROWS_AS(minimal_majority_family({}), DomainError);
}

TEST_CASE("the vote search finds the expected witnesses for definable coteries") {
    SUBCASE("majority of three, embedded at IDs 1..3 of a four-node universe") {
        const auto found = vote_equivalence_search({{1, 2}, {1, 3}, {2, 3}}, 4, 2);
        REQUIRE(found.has_value());
        CHECK(found->votes == std::vector<int>{0, 1, 1, 1});
        CHECK(found->total == 3);
    }
    SUBCASE("dictator") {
        const auto found = vote_equivalence_search({{0}}, 6, 2);
        REQUIRE(found.has_value());
        CHECK(found->votes == std::vector<int>{1, 0, 0, 0, 0, 0});
        CHECK(found->total == 1);
    }
    SUBCASE("plain majority of three") {
        const auto found = vote_equivalence_search({{0, 1}, {0, 2}, {1, 2}}, 3, 2);
        REQUIRE(found.has_value());
        CHECK(found->votes == std::vector<int>{1, 1, 1});
    }
}

TEST_CASE("no bounded vote assignment reproduces the six-node wheel coterie") {
    CHECK_FALSE(vote_equivalence_search(enumerate_write_quorums(6), 6, 6).has_value());
}

TEST_CASE("the eligible family is closed under cycle rotation") {
    // Rotating the cycle labels maps each alternating walk onto another
    // one, so the family maps onto itself and every search verdict is
    // rotation invariant for free.
    for (int n = 4; n <= 10; ++n) {
        const IdSetFamily base = enumerate_write_quorums(n);
        const int m = n - 1;
        for (int shift = 1; shift < m; ++shift) {
            IdSetFamily rotated;
            for (const IdSet& q : base) {
                IdSet r;
                for (NodeId id : q) r.insert(id == 0 ? 0 : 1 + ((id - 1 + shift) % m));
                rotated.insert(r);
            }
            CHECK(rotated == base);
        }
    }
}

TEST_CASE("witnesses found by the search reproduce their source family") {
    Rng rng(31);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = rng.next_in_range(3, 5);
        std::vector<int> votes(n);
        int total = 0;
        for (int& v : votes) {
            v = rng.next_in_range(0, 3);
            total += v;
        }
        if (total == 0) votes[0] = 1;
        const auto family_vec = minimal_majority_family(votes);
        const IdSetFamily family(family_vec.begin(), family_vec.end());
        const auto witness = vote_equivalence_search(family, n, 3);
        REQUIRE(witness.has_value());
        const auto back = minimal_majority_family(witness->votes);
        CHECK(IdSetFamily(back.begin(), back.end()) == family);
    }
}

TEST_CASE("search preconditions are enforced") {
    CHECK_THROWS_AS(vote_equivalence_search({{0}}, 6, 0), DomainError);
    CHECK_THROWS_AS(vote_equivalence_search({}, 6, 3), DomainError);
    CHECK_THROWS_AS(vote_equivalence_search({{7}}, 4, 3), DomainError);
    CHECK_THROWS_AS(vote_equivalence_search({{0}}, 21, 3), DomainError);
}

TEST_CASE("the quoted inequality system has no solution") {
    const std::vector<IdSet> majorities{{0, 1, 3, 4}, {0, 2, 4, 5}};
    const std::vector<IdSet> minorities{{0, 2, 3, 4}, {0, 1, 4, 5}};
    // both sides sum over the same index multiset, so no ordered field
    // admits a solution; the bounded integer search agrees
    CHECK(vote_system_sum_contradiction(majorities, minorities));
    CHECK_FALSE(vote_system_feasible_bounded(6, majorities, minorities, 6));
}

TEST_CASE("the sum contradiction needs matching multisets and enough majorities") {
    CHECK_FALSE(vote_system_sum_contradiction({{0, 1}}, {{2}}));
    CHECK_FALSE(vote_system_sum_contradiction({}, {}));
    // same multiset but more minority sets: actually satisfiable
    const std::vector<IdSet> majorities{{0, 1, 2}};
    const std::vector<IdSet> minorities{{0}, {1, 2}};
    CHECK_FALSE(vote_system_sum_contradiction(majorities, minorities));
    CHECK(vote_system_feasible_bounded(3, majorities, minorities, 2));
}

TEST_CASE("feasibility search accepts simple satisfiable systems") {
    CHECK(vote_system_feasible_bounded(3, {{0}}, {{1}, {2}}, 2));
    CHECK(vote_system_feasible_bounded(4, {{0, 1}, {0, 2}, {1, 2}}, {{0}, {1}, {2}}, 2));
    CHECK_THROWS_AS(vote_system_feasible_bounded(3, {{0}}, {}, 0), DomainError);
}

TEST_CASE("the full analysis report carries every verdict") {
    const CoterieReport report = analyze_coterie(6, 6);
    CHECK(report.n == 6);
    CHECK(report.write_quorums == kWheelSix);
    CHECK(report.read_quorums == IdSetFamily{IdSet{0}});
    CHECK(report.minimality_ok);
    CHECK(report.rw_intersection_ok);
    CHECK(report.ww_intersection_ok);
    CHECK(report.adjacent_cover_ok);
    CHECK_FALSE(report.vote_equivalent.has_value());
    CHECK(report.search_bound == 6);
    CHECK_THROWS_AS(analyze_coterie(3, 6), DomainError);
    CHECK_THROWS_AS(analyze_coterie(6, 0), DomainError);
}

TEST_CASE("the report text is stable and complete") {
    const std::string expected =
        "wheelq-coterie v1\n"
        "n 6\n"
        "write_quorum 0,1,2,4\n"
        "write_quorum 0,1,3,4\n"
        "write_quorum 0,1,3,5\n"
        "write_quorum 0,2,3,5\n"
        "write_quorum 0,2,4,5\n"
        "read_quorum 0\n"
        "minimality ok\n"
        "rw_intersection ok\n"
        "ww_intersection ok\n"
        "adjacent_cover ok\n"
        "vote_search_bound 6\n"
        "vote_equivalent none\n";
    CHECK(to_report_text(analyze_coterie(6, 6)) == expected);
}

TEST_CASE("a definable family reports its witness in the text") {
    CoterieReport report;
    report.n = 3;
    report.write_quorums = {{0, 1}, {0, 2}, {1, 2}};
    report.read_quorums = {{0}};
    report.search_bound = 2;
    report.vote_equivalent = vote_equivalence_search(report.write_quorums, 3, 2);
    const std::string text = to_report_text(report);
    CHECK(text.find("vote_equivalent 1,1,1\n") != std::string::npos);
}
