#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "partite/exact.hpp"
#include "partite/random_model.hpp"

#include "oracles.hpp"

using namespace partite;

namespace {

// candidate enumeration completeness: the solver's growth generation must
// reach exactly the blocks the assignment brute force finds
void check_enumeration(const Hypergraph& H, std::uint64_t) {
    if (H.edge_count() == 0) return;
    detail::ExactSolver solver(H, BlockMode::all_blocks, SolveBudget{1ULL << 62, 600.0});
    const Edge& pivot = H.edges().front();
    std::set<Edge> allowed(H.edges().begin(), H.edges().end());
    std::set<oracles::Parts> expect = oracles::all_blocks_containing(H, pivot, allowed);

    std::uint64_t full = H.edge_count() == 64 ? ~0ULL : (1ULL << H.edge_count()) - 1;
    std::set<oracles::Parts> got;
    for (const Block& b : solver.candidate_blocks(0, full)) got.insert(b.parts());
    CHECK(got == expect);
}

}  // namespace

TEST_CASE("candidate enumeration matches the naive block enumeration") {
    check_enumeration(complete_hypergraph(5, 2), 0);
    check_enumeration(complete_hypergraph(5, 3), 0);
    for (std::uint64_t seed : {51, 52, 53}) {
        check_enumeration(sample_hypergraph({7, 2, EdgeProbability::parse("0.5"), seed, 0}), seed);
        check_enumeration(sample_hypergraph({7, 3, EdgeProbability::parse("0.4"), seed, 0}), seed);
    }
}

TEST_CASE("bipartition numbers of complete graphs") {
    for (int n = 2; n <= 6; ++n) {
        ExactResult res = exact_min_partition(complete_hypergraph(n, 2));
        CHECK(res.status == SolveStatus::optimal);
        CHECK(res.value == n - 1);
        CHECK(res.lower_bound == n - 1);
        CHECK(res.partition.verified());
        CHECK(verify_partition(complete_hypergraph(n, 2), res.partition).valid);
    }
}

TEST_CASE("complete 3-uniform minimums") {
    ExactResult k4 = exact_min_partition(complete_hypergraph(4, 3));
    CHECK(k4.status == SolveStatus::optimal);
    CHECK(k4.value == 2);

    ExactResult k5 = exact_min_partition(complete_hypergraph(5, 3));
    CHECK(k5.status == SolveStatus::optimal);
    CHECK(k5.value == 3);
    CHECK(verify_partition(complete_hypergraph(5, 3), k5.partition).valid);
}

TEST_CASE("edgeless input is an empty optimal partition") {
    ExactResult res = exact_min_partition(Hypergraph(5, 3));
    CHECK(res.status == SolveStatus::optimal);
    CHECK(res.value == 0);
    CHECK(res.partition.blocks().empty());
}

TEST_CASE("nontrivial-only mode") {
    SUBCASE("triangle is infeasible: a nontrivial block needs a 4-cycle") {
        ExactResult res = exact_min_partition(complete_hypergraph(3, 2), BlockMode::nontrivial_only);
        CHECK(res.status == SolveStatus::infeasible);
        CHECK(res.value == -1);
    }

    SUBCASE("a 4-cycle is one nontrivial block") {
        Hypergraph c4(4, 2, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
        ExactResult res = exact_min_partition(c4, BlockMode::nontrivial_only);
        CHECK(res.status == SolveStatus::optimal);
        CHECK(res.value == 1);
        CHECK(res.partition.blocks()[0] == Block({{1, 3}, {2, 4}}));
    }

    SUBCASE("complete bipartite graphs are single blocks") {
        Hypergraph k23(5, 2, {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
        ExactResult res = exact_min_partition(k23, BlockMode::nontrivial_only);
        CHECK(res.status == SolveStatus::optimal);
        CHECK(res.value == 1);
    }

    SUBCASE("two disjoint 4-cycles need two blocks") {
        Hypergraph two(8, 2, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {5, 6}, {6, 7}, {7, 8}, {5, 8}});
        ExactResult res = exact_min_partition(two, BlockMode::nontrivial_only);
        CHECK(res.status == SolveStatus::optimal);
        CHECK(res.value == 2);
    }

    SUBCASE("a pendant edge forces infeasibility") {
        Hypergraph pendant(5, 2, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}});
        ExactResult res = exact_min_partition(pendant, BlockMode::nontrivial_only);
        CHECK(res.status == SolveStatus::infeasible);
    }

    // only K_{2,2} (4 edges) and K_{2,3} (6 edges) fit in 5 vertices; 4+6
    // must tile the 10 edges, and deleting a K_{2,3} from the complete graph
    // leaves a triangle plus an edge, never a 4-cycle
    SUBCASE("the complete graph on 5 vertices has no nontrivial partition") {
        ExactResult res = exact_min_partition(complete_hypergraph(5, 2), BlockMode::nontrivial_only);
        CHECK(res.status == SolveStatus::infeasible);
    }

    SUBCASE("nontrivial minimum is never below the unrestricted one") {
        for (std::uint64_t seed : {61, 62, 63, 64, 65}) {
            Hypergraph H = sample_hypergraph({7, 2, EdgeProbability::parse("0.5"), seed, 0});
            if (H.edge_count() > 14) continue;
            ExactResult all = exact_min_partition(H);
            ExactResult non = exact_min_partition(H, BlockMode::nontrivial_only);
            REQUIRE(all.status == SolveStatus::optimal);
            if (non.status == SolveStatus::optimal) CHECK(non.value >= all.value);
        }
    }
}

TEST_CASE("solver values match the brute-force minimum on tiny instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (int r : {2, 3}) {
            Hypergraph H = sample_hypergraph({5, r, EdgeProbability::parse("0.4"), 900 + seed, 0});
            if (H.edge_count() > 6) continue;
            std::set<Edge> all(H.edges().begin(), H.edges().end());
            for (bool nontrivial : {false, true}) {
                int oracle = oracles::min_partition_size(H, all, nontrivial);
                ExactResult res = exact_min_partition(
                    H, nontrivial ? BlockMode::nontrivial_only : BlockMode::all_blocks);
                if (oracle < 0) {
                    CHECK(res.status == SolveStatus::infeasible);
                } else {
                    REQUIRE(res.status == SolveStatus::optimal);
                    CHECK(res.value == oracle);
                }
            }
        }
    }
}

TEST_CASE("budget exhaustion reports bounds honestly") {
    // tau(K_6) = 5; any cut-off bracket must contain it
    ExactResult tiny = exact_min_partition(complete_hypergraph(6, 2), BlockMode::all_blocks,
                                           SolveBudget{100, 60.0});
    CHECK(tiny.status == SolveStatus::upper_bound_only);
    CHECK(tiny.value >= 5);  // an incumbent always exists in all-blocks mode
    CHECK(tiny.lower_bound >= 1);
    CHECK(tiny.lower_bound <= 5);
    CHECK(tiny.partition.blocks().size() == static_cast<std::size_t>(tiny.value));
    CHECK(verify_partition(complete_hypergraph(6, 2), tiny.partition).valid);

    // a budget that survives some deepening iterations proves more
    ExactResult mid = exact_min_partition(complete_hypergraph(6, 2), BlockMode::all_blocks,
                                          SolveBudget{5000, 60.0});
    CHECK(mid.status == SolveStatus::upper_bound_only);
    CHECK(mid.lower_bound >= tiny.lower_bound);
    CHECK(mid.lower_bound <= 5);
    CHECK(mid.value >= 5);
}

TEST_CASE("solver output is deterministic") {
    Hypergraph H = sample_hypergraph({7, 3, EdgeProbability::parse("0.5"), 77, 0});
    ExactResult a = exact_min_partition(H);
    ExactResult b = exact_min_partition(H);
    CHECK(a.value == b.value);
    CHECK(a.partition == b.partition);
}

TEST_CASE("exact minimum never exceeds heuristic block counts") {
    for (std::uint64_t seed : {71, 72, 73, 74}) {
        Hypergraph H = sample_hypergraph({6, 3, EdgeProbability::parse("0.5"), seed, 0});
        if (H.edge_count() == 0 || H.edge_count() > 14) continue;
        ExactResult exact = exact_min_partition(H);
        REQUIRE(exact.status == SolveStatus::optimal);
        std::vector<Edge> cover;
        for_each_subset(6, 2, [&](const Edge& e) { cover.push_back(e); });
        GreedyResult greedy = greedy_turan_decomposition(H, cover);
        CHECK(static_cast<std::size_t>(exact.value) <= greedy.partition.blocks().size());
    }
}

TEST_CASE("scale guards") {
    CHECK_THROWS_AS(exact_min_partition(complete_hypergraph(12, 2)), ConfigError);  // 66 edges
}
