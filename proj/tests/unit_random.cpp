#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "partite/random_model.hpp"

using namespace partite;

TEST_CASE("edge probability parsing") {
    CHECK(EdgeProbability::parse("0").threshold() == 0);
    CHECK_FALSE(EdgeProbability::parse("0").always());
    CHECK(EdgeProbability::parse("1").always());
    CHECK(EdgeProbability::parse("1.0").always());
    CHECK(EdgeProbability::parse("3/3").always());
    CHECK(EdgeProbability::parse("0.5").threshold() == (1ULL << 63));
    CHECK(EdgeProbability::parse("1/2").threshold() == (1ULL << 63));
    CHECK(EdgeProbability::parse(".25").threshold() == (1ULL << 62));
    CHECK(EdgeProbability::parse("1/4") == EdgeProbability::parse("0.25"));
    CHECK(EdgeProbability::parse("2/4") == EdgeProbability::parse("0.5"));
    CHECK(EdgeProbability::parse("0.2").text() == "0.2");

    CHECK_THROWS_AS(EdgeProbability::parse("1.5"), ConfigError);
    CHECK_THROWS_AS(EdgeProbability::parse("2/1"), ConfigError);
    CHECK_THROWS_AS(EdgeProbability::parse("1/0"), ConfigError);
    CHECK_THROWS_AS(EdgeProbability::parse("-0.1"), ConfigError);
    CHECK_THROWS_AS(EdgeProbability::parse("abc"), ConfigError);
    CHECK_THROWS_AS(EdgeProbability::parse(""), ConfigError);
}

TEST_CASE("complete hypergraph edge counts") {
    CHECK(complete_hypergraph(4, 3).edge_count() == 4);
    CHECK(complete_hypergraph(5, 2).edge_count() == 10);
    CHECK(complete_hypergraph(2, 3).edge_count() == 0);
    CHECK(complete_hypergraph(0, 2).edge_count() == 0);
}

TEST_CASE("degenerate probabilities") {
    SampleConfig zero{10, 3, EdgeProbability::parse("0"), 7, 0};
    CHECK(sample_hypergraph(zero).edge_count() == 0);

    SampleConfig one{6, 3, EdgeProbability::parse("1"), 7, 0};
    CHECK(sample_hypergraph(one) == complete_hypergraph(6, 3));
}

TEST_CASE("sampling is a pure function of (n, r, p, seed, trial)") {
    SampleConfig cfg{9, 3, EdgeProbability::parse("0.5"), 123456789, 4};
    CHECK(sample_hypergraph(cfg) == sample_hypergraph(cfg));

    SampleConfig other = cfg;
    other.trial_index = 5;
    CHECK_FALSE(sample_hypergraph(cfg) == sample_hypergraph(other));

    SampleConfig reseeded = cfg;
    reseeded.seed = 987654321;
    CHECK_FALSE(sample_hypergraph(cfg) == sample_hypergraph(reseeded));
}

TEST_CASE("per-edge decisions use the set's own rank, not the visit order") {
    SampleConfig cfg{8, 3, EdgeProbability::parse("0.5"), 42, 0};
    Hypergraph H = sample_hypergraph(cfg);
    for_each_subset(8, 3, [&](const Edge& e) {
        std::uint64_t rank = subset_lex_rank(e, 8);
        bool decided = cfg.p.decide(rng::keyed(cfg.seed, cfg.trial_index, rank));
        CHECK(decided == H.has_edge(e));
    });
}

TEST_CASE("edge count mean across trials matches p * C(n,r)") {
    const int n = 12, r = 3, trials = 200;
    const double p = 0.5;
    const double expect = p * static_cast<double>(binomial(n, r));  // 110
    double sum = 0;
    for (int t = 0; t < trials; ++t) {
        SampleConfig cfg{n, r, EdgeProbability::parse("0.5"), 20260808, static_cast<std::uint64_t>(t)};
        sum += static_cast<double>(sample_hypergraph(cfg).edge_count());
    }
    double mean = sum / trials;
    double sigma_mean = std::sqrt(static_cast<double>(binomial(n, r)) * p * (1 - p) / trials);
    CHECK(std::abs(mean - expect) < 5.0 * sigma_mean);
}
