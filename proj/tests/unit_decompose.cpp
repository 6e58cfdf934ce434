#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "partite/decompose.hpp"
#include "partite/random_model.hpp"

#include "oracles.hpp"

using namespace partite;

TEST_CASE("greedy decomposition on the complete 3-uniform system, explicit cover") {
    Hypergraph K43 = complete_hypergraph(4, 3);
    GreedyResult res = greedy_turan_decomposition(K43, {{1, 3}, {2, 4}});
    REQUIRE(res.partition.blocks().size() == 2);
    CHECK(res.partition.blocks()[0] == Block(Prefix({{1}, {3}}), {2, 4}));
    CHECK(res.partition.blocks()[1] == Block(Prefix({{2}, {4}}), {1, 3}));
    CHECK(res.partition.verified());
    CHECK(verify_partition(K43, res.partition).valid);

    REQUIRE(res.trace.steps.size() == 2);
    CHECK(res.trace.steps[0].assigned == std::vector<Edge>{{1, 2, 3}, {1, 3, 4}});
    CHECK(res.trace.steps[0].last_part == std::vector<Vertex>{2, 4});
    CHECK(res.trace.steps[1].assigned == std::vector<Edge>{{1, 2, 4}, {2, 3, 4}});
    CHECK(res.trace.steps[1].last_part == std::vector<Vertex>{1, 3});
    CHECK(res.trace.skipped.empty());
}

TEST_CASE("greedy on an edgeless hypergraph emits nothing") {
    Hypergraph empty(6, 3);
    GreedyResult res = greedy_turan_decomposition(empty, {{1, 2}, {3, 4}});
    CHECK(res.partition.blocks().empty());
    CHECK(res.trace.skipped.size() == 2);
}

TEST_CASE("greedy single-edge case and trace") {
    Hypergraph single(3, 3, {{1, 2, 3}});
    GreedyResult res = greedy_turan_decomposition(single, {{1, 3}});
    REQUIRE(res.partition.blocks().size() == 1);
    CHECK(res.partition.blocks()[0].product_edges() == std::vector<Edge>{{1, 2, 3}});
    CHECK(res.trace.steps[0].last_part == std::vector<Vertex>{2});
}

TEST_CASE("greedy reports a cover gap with the offending edge") {
    Hypergraph H(4, 3, {{1, 2, 4}});
    CHECK_THROWS_WITH_AS(greedy_turan_decomposition(H, {{1, 3}}), "edge contains no cover member",
                         CoverGap);
    try {
        greedy_turan_decomposition(H, {{1, 3}});
    } catch (const CoverGap& gap) {
        CHECK(gap.witness == Edge{1, 2, 4});
    }
    CHECK_THROWS_AS(greedy_turan_decomposition(complete_hypergraph(4, 2), {{1}}), ConfigError);
}

TEST_CASE("greedy emits only trivial blocks; step families are disjoint") {
    for (std::uint64_t seed : {3, 4, 5}) {
        Hypergraph H = sample_hypergraph({8, 3, EdgeProbability::parse("0.5"), seed, 0});
        std::vector<Edge> cover;
        for_each_subset(8, 2, [&](const Edge& e) { cover.push_back(e); });
        GreedyResult res = greedy_turan_decomposition(H, cover);
        CHECK(verify_partition(H, res.partition).valid);
        CHECK(res.partition.blocks().size() ==
              res.trace.cover.size() - res.trace.skipped.size());
        for (const Block& b : res.partition.blocks()) CHECK(b.is_trivial());
        std::size_t assigned_total = 0;
        for (const auto& step : res.trace.steps) assigned_total += step.assigned.size();
        CHECK(assigned_total == H.edge_count());
    }
}

TEST_CASE("greedy stays valid under cover permutations") {
    Hypergraph H = sample_hypergraph({7, 3, EdgeProbability::parse("0.6"), 99, 0});
    std::vector<Edge> cover;
    for_each_subset(7, 2, [&](const Edge& e) { cover.push_back(e); });
    for (int perm = 0; perm < 4; ++perm) {
        std::rotate(cover.begin(), cover.begin() + 3, cover.end());
        std::swap(cover[0], cover[5]);
        GreedyResult res = greedy_turan_decomposition(H, cover);
        CHECK(verify_partition(H, res.partition).valid);
    }
}

TEST_CASE("upper_bound_pipeline worked cases") {
    PipelineResult k4 = upper_bound_pipeline(complete_hypergraph(4, 3));
    CHECK(k4.report.block_count == 2);
    CHECK(k4.report.q == 2);
    CHECK(k4.report.universe == 6);
    CHECK(k4.report.turan_exact);
    CHECK(verify_partition(complete_hypergraph(4, 3), k4.partition).valid);

    PipelineResult k5 = upper_bound_pipeline(complete_hypergraph(5, 3));
    CHECK(k5.report.q == 4);
    CHECK(k5.report.block_count <= 4);
    CHECK(verify_partition(complete_hypergraph(5, 3), k5.partition).valid);

    PipelineResult none = upper_bound_pipeline(Hypergraph(6, 3));
    CHECK(none.report.block_count == 0);
    CHECK(none.report.q == binomial(6, 2) - 9);

    CHECK_THROWS_AS(upper_bound_pipeline(complete_hypergraph(4, 2)), ConfigError);
}

TEST_CASE("max_independent_set") {
    MisResult k4 = max_independent_set(complete_hypergraph(4, 2));
    CHECK(k4.exact);
    CHECK(k4.vertices == std::vector<Vertex>{1});

    MisResult empty = max_independent_set(Hypergraph(6, 2));
    CHECK(empty.vertices == std::vector<Vertex>{1, 2, 3, 4, 5, 6});

    Hypergraph c5(5, 2, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
    MisResult five = max_independent_set(c5);
    CHECK(five.exact);
    CHECK(five.vertices.size() == oracles::max_independent_set_size(c5));
    CHECK(five.vertices == std::vector<Vertex>{1, 3});  // lexicographically least optimum

    CHECK_THROWS_AS(max_independent_set(complete_hypergraph(4, 3)), ConfigError);
}

TEST_CASE("max_independent_set matches the brute force on random graphs") {
    for (std::uint64_t seed : {31, 32, 33, 34, 35, 36}) {
        Hypergraph G = sample_hypergraph({10, 2, EdgeProbability::parse("0.4"), seed, 0});
        MisResult res = max_independent_set(G);
        CHECK(res.exact);
        CHECK(res.vertices.size() == oracles::max_independent_set_size(G));
    }
}

TEST_CASE("max_independent_set budget exhaustion flags inexact") {
    Hypergraph G = sample_hypergraph({16, 2, EdgeProbability::parse("0.5"), 7, 0});
    MisResult res = max_independent_set(G, SearchBudget{10, 60.0});
    CHECK_FALSE(res.exact);
}

TEST_CASE("star decomposition") {
    Hypergraph K4 = complete_hypergraph(4, 2);
    Partition stars = star_decomposition(K4, {1});
    CHECK(stars.blocks().size() == 3);
    CHECK(verify_partition(K4, stars).valid);
    for (const Block& b : stars.blocks()) CHECK(b.is_trivial());

    Hypergraph path(3, 2, {{1, 2}, {2, 3}});
    Partition one = star_decomposition(path, {1, 3});
    REQUIRE(one.blocks().size() == 1);
    CHECK(one.blocks()[0] == Block({{2}, {1, 3}}));

    Partition zero = star_decomposition(Hypergraph(5, 2), {1, 2, 3, 4, 5});
    CHECK(zero.blocks().empty());

    CHECK_THROWS_AS(star_decomposition(K4, {1, 2}), NotIndependent);
    try {
        star_decomposition(K4, {1, 2});
    } catch (const NotIndependent& e) {
        CHECK(e.witness == Edge{1, 2});
    }
}

TEST_CASE("star block count never exceeds n - |I|") {
    for (std::uint64_t seed : {41, 42, 43, 44}) {
        Hypergraph G = sample_hypergraph({9, 2, EdgeProbability::parse("0.5"), seed, 0});
        MisResult mis = max_independent_set(G);
        Partition part = star_decomposition(G, mis.vertices);
        CHECK(part.blocks().size() <= G.vertex_count() - mis.vertices.size());
        CHECK(verify_partition(G, part).valid);
    }
}
