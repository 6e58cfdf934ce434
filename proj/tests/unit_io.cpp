#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "partite/decompose.hpp"
#include "partite/experiment.hpp"
#include "partite/io.hpp"
#include "partite/random_model.hpp"

using namespace partite;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Hypergraph from_string(const std::string& text) {
    std::istringstream in(text);
    return read_hypergraph(in);
}

}  // namespace

TEST_CASE("hypergraph reading") {
    Hypergraph H = from_string("4 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    CHECK(H == complete_hypergraph(4, 3));

    // comments, blank lines, arbitrary edge order
    Hypergraph relaxed = from_string("# comment\n\n4 3\n2 3 4\n# middle\n1 2 3\n");
    CHECK(relaxed.edge_count() == 2);
    CHECK(relaxed.edges()[0] == Edge{1, 2, 3});
}

TEST_CASE("hypergraph parse errors carry line numbers") {
    CHECK_THROWS_AS(from_string("3 2\n1 2\n1 2\n"), ParseError);
    try {
        from_string("3 2\n1 2\n1 2\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(from_string("3 2\n2 1\n"), ParseError);        // non-ascending
    CHECK_THROWS_AS(from_string("3 2\n1 1\n"), ParseError);        // repeated
    CHECK_THROWS_AS(from_string("3 2\n1 2 3\n"), ParseError);      // wrong arity
    CHECK_THROWS_AS(from_string("3 2\n1 4\n"), ParseError);        // out of range
    CHECK_THROWS_AS(from_string("x y\n"), ParseError);             // bad header
    CHECK_THROWS_AS(from_string("3 1\n"), ParseError);             // r too small
    CHECK_THROWS_AS(from_string(""), ParseError);                  // missing header
    CHECK_THROWS_AS(from_string("3 2\n1 z\n"), ParseError);        // non-integer
}

TEST_CASE("hypergraph round trips") {
    // write(read(f)) == f for canonical files
    std::string canonical = "4 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n";
    CHECK(hypergraph_to_string(from_string(canonical)) == canonical);

    // read(write(H)) == H on sampled instances
    for (std::uint64_t seed : {5, 6, 7}) {
        Hypergraph H = sample_hypergraph({9, 3, EdgeProbability::parse("0.3"), seed, 0});
        CHECK(from_string(hypergraph_to_string(H)) == H);
    }
}

TEST_CASE("partition writer emits the fixed byte layout") {
    Hypergraph K43 = complete_hypergraph(4, 3);
    GreedyResult res = greedy_turan_decomposition(K43, {{1, 3}, {2, 4}});
    std::string expect = slurp(std::string(PARTITE_TEST_DATA_DIR) + "/partition_k4_greedy.json");
    CHECK(partition_to_string(res.partition) == expect);
}

TEST_CASE("partition round trip and parse errors") {
    Hypergraph K43 = complete_hypergraph(4, 3);
    Partition part = greedy_turan_decomposition(K43, {{1, 3}, {2, 4}}).partition;
    std::istringstream in(partition_to_string(part));
    CHECK(read_partition(in) == part);

    Partition empty(3, 2, {}, Source::external);
    std::istringstream in2(partition_to_string(empty));
    Partition back = read_partition(in2);
    CHECK(back.blocks().empty());
    CHECK(back == empty);

    auto parse = [](const std::string& text) {
        std::istringstream s(text);
        return read_partition(s);
    };
    // repeated vertex within a block part
    CHECK_THROWS_AS(
        parse(R"({"n":3,"r":2,"source":"external","blocks":[[[1,1],[2]]]})"), ParseError);
    // overlapping parts
    CHECK_THROWS_AS(
        parse(R"({"n":3,"r":2,"source":"external","blocks":[[[1],[1,2]]]})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"n":3,"r":2,"blocks":[]})"), ParseError);          // missing source
    CHECK_THROWS_AS(parse(R"({"n":3,"r":2,"source":"odd","blocks":[]})"), ParseError);
    CHECK_THROWS_AS(parse("not json"), ParseError);
}

TEST_CASE("csv layout") {
    ExperimentConfig cfg;
    cfg.n = 4;
    cfg.r = 3;
    cfg.p = EdgeProbability::parse("1");
    cfg.seed = 9;
    cfg.trials = 1;
    cfg.method = Method::greedy;
    cfg.zero_runtime = true;
    auto records = run_experiment(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].block_count == 2);
    CHECK(records[0].ratio == doctest::Approx(2.0 / 6.0));
    std::string csv = csv_to_string(records);
    CHECK(csv ==
          "n,r,p,seed,trial,method,blocks,q_bound,ratio,turan_exact,runtime_ms\n"
          "4,3,1,9,0,greedy,2,2,0.333333333333,1,0\n");
}

TEST_CASE("ratio formatting is fixed-point with 12 digits") {
    CHECK(format_ratio(0.0) == "0.000000000000");
    CHECK(format_ratio(1.0) == "1.000000000000");
    CHECK(format_ratio(2.0 / 6.0) == "0.333333333333");
    CHECK(format_ratio(0.5) == "0.500000000000");
}

TEST_CASE("zero-probability experiments record zero blocks") {
    ExperimentConfig cfg;
    cfg.n = 10;
    cfg.r = 3;
    cfg.p = EdgeProbability::parse("0");
    cfg.seed = 1;
    cfg.trials = 3;
    cfg.method = Method::greedy;
    cfg.zero_runtime = true;
    auto records = run_experiment(cfg);
    REQUIRE(records.size() == 3);
    for (const auto& rec : records) CHECK(rec.block_count == 0);
}
