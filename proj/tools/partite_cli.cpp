// partite_cli.cpp - command-line front end: generation, decomposition, exact
// minimization, extremal search, verification, experiments, and the
// prefix-bound checker.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "partite/decompose.hpp"
#include "partite/exact.hpp"
#include "partite/experiment.hpp"
#include "partite/io.hpp"
#include "partite/random_model.hpp"
#include "partite/turan.hpp"

namespace {

using namespace partite;

Hypergraph load_hypergraph(const std::string& path) {
    if (path == "-") return read_hypergraph(std::cin);
    return read_hypergraph_file(path);
}

void emit_hypergraph(const Hypergraph& H, const std::string& path) {
    if (path == "-") {
        write_hypergraph(H, std::cout);
        return;
    }
    write_hypergraph_file(H, path);
}

void emit_partition(const Partition& part, const std::string& path) {
    if (path == "-") {
        write_partition(part, std::cout);
        return;
    }
    write_partition_file(part, path);
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::upper_bound_only: return "upper_bound_only";
        case SolveStatus::infeasible: return "infeasible";
    }
    return "?";
}

struct GenArgs {
    int n = 0;
    int r = 3;
    std::string p;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    bool complete = false;
    bool seed_set = false;
    std::string out = "-";
};

int run_gen(const GenArgs& a) {
    if (a.complete) {
        emit_hypergraph(complete_hypergraph(a.n, a.r), a.out);
        return 0;
    }
    if (a.p.empty()) throw ConfigError("--p is required unless --complete is given");
    if (!a.seed_set) throw ConfigError("--seed is required for randomized generation");
    SampleConfig cfg{a.n, a.r, EdgeProbability::parse(a.p), a.seed, a.trial};
    emit_hypergraph(sample_hypergraph(cfg), a.out);
    return 0;
}

struct DecomposeArgs {
    std::string in;
    std::string method;
    std::string out = "-";
    std::uint64_t max_nodes = 100'000'000;
    double max_seconds = 60.0;
    std::uint64_t turan_seed = 1;
};

int run_decompose(const DecomposeArgs& a) {
    Hypergraph H = load_hypergraph(a.in);
    Partition part;
    Method method = method_from_string(a.method);
    switch (method) {
        case Method::greedy: {
            PipelineResult res = upper_bound_pipeline(H, {a.max_nodes, a.max_seconds}, a.turan_seed);
            std::cerr << "blocks=" << res.report.block_count << " q=" << res.report.q
                      << " universe=" << res.report.universe << " ratio=" << format_ratio(res.report.ratio)
                      << " turan_exact=" << res.report.turan_exact << "\n";
            part = std::move(res.partition);
            break;
        }
        case Method::star: {
            MisResult mis = max_independent_set(H, {a.max_nodes, a.max_seconds});
            part = star_decomposition(H, mis.vertices);
            std::cerr << "blocks=" << part.blocks().size() << " independent_set=" << mis.vertices.size()
                      << " mis_exact=" << mis.exact << "\n";
            break;
        }
        case Method::exact: {
            ExactResult res = exact_min_partition(H, BlockMode::all_blocks,
                                                  {a.max_nodes, a.max_seconds});
            std::cerr << "status=" << status_name(res.status) << " value=" << res.value
                      << " lower_bound=" << res.lower_bound << " nodes=" << res.nodes_expanded << "\n";
            part = std::move(res.partition);
            break;
        }
    }
    VerificationReport report = verify_partition(H, part);
    if (!report.valid) {
        std::cerr << "verification failed\n";
        return 1;
    }
    emit_partition(part, a.out);
    return 0;
}

struct ExactArgs {
    std::string in;
    bool nontrivial_only = false;
    std::string out;
    std::uint64_t max_nodes = 10'000'000;
    double max_seconds = 60.0;
};

int run_exact(const ExactArgs& a) {
    Hypergraph H = load_hypergraph(a.in);
    ExactResult res = exact_min_partition(
        H, a.nontrivial_only ? BlockMode::nontrivial_only : BlockMode::all_blocks,
        {a.max_nodes, a.max_seconds});
    std::cout << "status=" << status_name(res.status) << " value=" << res.value
              << " lower_bound=" << res.lower_bound << " nodes=" << res.nodes_expanded << "\n";
    if (!a.out.empty() && res.value >= 0) emit_partition(res.partition, a.out);
    return 0;
}

struct TuranArgs {
    int n = 0;
    int uniformity = 2;
    int clique = 3;
    std::uint64_t max_nodes = 100'000'000;
    double max_seconds = 60.0;
    std::uint64_t seed = 1;
    std::string witness_out;
};

int run_turan(const TuranArgs& a) {
    TuranResult res = turan_number_exact(a.n, a.uniformity, a.clique, {a.max_nodes, a.max_seconds});
    if (!res.exact) {
        // keep the better of the cut-off search and a seeded local search
        detail::KFreeSlots work(a.n, a.uniformity, a.clique);
        std::uint64_t best = res.ex_value;
        std::vector<char> best_included(work.slot_count(), 0);
        detail::local_search_kfree(work, a.seed, best, best_included);
        if (best > res.ex_value) {
            res.ex_value = best;
            work.set_included(best_included);
            res.witness = Hypergraph(a.n, a.uniformity, work.included_edges());
        }
    }
    std::cout << "n=" << res.n << " s=" << res.s << " t=" << res.t << " ex=" << res.ex_value
              << " exact=" << res.exact << " maximal=" << res.witness_maximal
              << " nodes=" << res.nodes_expanded << " elapsed_s=" << res.elapsed_seconds << "\n";
    if (!a.witness_out.empty()) emit_hypergraph(res.witness, a.witness_out);
    return 0;
}

struct VerifyArgs {
    std::string hypergraph;
    std::string partition;
};

int run_verify(const VerifyArgs& a) {
    Hypergraph H = load_hypergraph(a.hypergraph);
    Partition part = read_partition_file(a.partition);
    VerificationReport report = verify_partition(H, part);
    if (report.valid) {
        std::cout << "valid\n";
        return 0;
    }
    std::cout << "invalid: " << report.violations.size() << " violation(s)\n";
    for (const Violation& v : report.violations) {
        std::cout << "  " << to_string(v.kind);
        if (!v.edge.empty()) {
            std::cout << " edge";
            for (Vertex x : v.edge) std::cout << ' ' << x;
        }
        if (v.block_index != Violation::npos) std::cout << " block " << v.block_index;
        std::cout << "\n";
    }
    return 1;
}

struct ExperimentArgs {
    int n = 0;
    int r = 3;
    std::string p;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    std::string method = "greedy";
    std::string out = "-";
    unsigned workers = 1;
    bool zero_runtime = false;
    bool spot_check = false;
    std::uint64_t max_nodes = 10'000'000;
    double max_seconds = 60.0;
};

int run_experiment_cmd(const ExperimentArgs& a) {
    ExperimentConfig cfg;
    cfg.n = a.n;
    cfg.r = a.r;
    cfg.p = EdgeProbability::parse(a.p);
    cfg.seed = a.seed;
    cfg.trials = a.trials;
    cfg.method = method_from_string(a.method);
    cfg.workers = a.workers;
    cfg.zero_runtime = a.zero_runtime;
    cfg.solver_budget = {a.max_nodes, a.max_seconds};
    std::vector<ExperimentRecord> records = run_experiment(cfg);
    if (a.spot_check) {
        // replay every tenth trial and re-verify its partition from scratch
        for (std::uint64_t t = 0; t < cfg.trials; t += 10) {
            ExperimentConfig one = cfg;
            one.workers = 1;
            one.trials = 1;
            Hypergraph H = sample_hypergraph({cfg.n, cfg.r, cfg.p, cfg.seed, t});
            Partition part;
            if (cfg.method == Method::greedy)
                part = upper_bound_pipeline(H, cfg.turan_budget, cfg.turan_seed).partition;
            else if (cfg.method == Method::star)
                part = star_decomposition(H, max_independent_set(H, cfg.turan_budget).vertices);
            else
                part = exact_min_partition(H, BlockMode::all_blocks, cfg.solver_budget).partition;
            if (!verify_partition(H, part).valid) {
                std::cerr << "spot check failed at trial " << t << "\n";
                return 1;
            }
        }
        std::cerr << "spot check ok\n";
    }
    if (a.out == "-") {
        write_csv(records, std::cout);
    } else {
        std::ofstream out(a.out, std::ios::binary);
        if (!out) throw ConfigError("cannot open " + a.out + " for writing");
        write_csv(records, out);
    }
    return 0;
}

struct PrefixBoundArgs {
    int n = 0;
    int r = 3;
    std::string p;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1000;
    std::size_t witness_limit = 16;
};

int run_prefix_bound(const PrefixBoundArgs& a) {
    PrefixBoundConfig cfg{a.n, a.r, EdgeProbability::parse(a.p), a.seed, a.samples, a.witness_limit};
    PrefixBoundReport report = check_prefix_bound(cfg);
    std::cout << "n=" << report.n << " r=" << report.r << " p=" << report.p_text
              << " threshold=" << report.threshold << " samples=" << report.samples_drawn
              << " violations=" << report.violations
              << " sampler_feasible=" << report.sampler_feasible << "\n";
    for (const PrefixWitness& w : report.witnesses) {
        std::cout << "  witness";
        for (const auto& part : w.prefix_parts) {
            std::cout << " {";
            for (std::size_t i = 0; i < part.size(); ++i) std::cout << (i ? "," : "") << part[i];
            std::cout << "}";
        }
        std::cout << " extension=" << w.extension_size << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge decompositions of uniform hypergraphs into complete r-partite blocks"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a hypergraph (random sample or complete)");
    gen_cmd->add_option("--n", gen.n, "vertex count")->required();
    gen_cmd->add_option("--uniformity,-r", gen.r, "edge size r")->required();
    gen_cmd->add_option("--p", gen.p, "edge probability (decimal or a/b)");
    gen_cmd->add_option("--seed", gen.seed, "sampler seed")->each([&](const std::string&) {
        gen.seed_set = true;
    });
    gen_cmd->add_option("--trial", gen.trial, "trial index within the seed's stream");
    gen_cmd->add_flag("--complete", gen.complete, "emit the complete hypergraph instead of sampling");
    gen_cmd->add_option("--out,-o", gen.out, "output path ('-' for stdout)");

    DecomposeArgs dec;
    CLI::App* dec_cmd = app.add_subcommand("decompose", "decompose a hypergraph file");
    dec_cmd->add_option("--in,-i", dec.in, "hypergraph file ('-' for stdin)")->required();
    dec_cmd->add_option("--method", dec.method, "greedy | star | exact")->required();
    dec_cmd->add_option("--out,-o", dec.out, "partition output path ('-' for stdout)");
    dec_cmd->add_option("--max-nodes", dec.max_nodes, "search node budget");
    dec_cmd->add_option("--max-seconds", dec.max_seconds, "search wall-clock budget");
    dec_cmd->add_option("--turan-seed", dec.turan_seed, "seed for the witness local search");

    ExactArgs ex;
    CLI::App* ex_cmd = app.add_subcommand("exact", "exact minimum block partition");
    ex_cmd->add_option("--in,-i", ex.in, "hypergraph file ('-' for stdin)")->required();
    ex_cmd->add_flag("--nontrivial-only", ex.nontrivial_only, "restrict to prefix product >= 2");
    ex_cmd->add_option("--out,-o", ex.out, "partition output path");
    ex_cmd->add_option("--max-nodes", ex.max_nodes, "search node budget");
    ex_cmd->add_option("--max-seconds", ex.max_seconds, "search wall-clock budget");

    TuranArgs tu;
    CLI::App* tu_cmd = app.add_subcommand("turan", "extremal edge count for a forbidden clique");
    tu_cmd->add_option("--n", tu.n, "vertex count")->required();
    tu_cmd->add_option("--uniformity,-r", tu.uniformity, "host uniformity s")->required();
    tu_cmd->add_option("--clique,-t", tu.clique, "forbidden clique order t")->required();
    tu_cmd->add_option("--max-nodes", tu.max_nodes, "search node budget");
    tu_cmd->add_option("--max-seconds", tu.max_seconds, "search wall-clock budget");
    tu_cmd->add_option("--seed", tu.seed, "seed for the local-search fallback");
    tu_cmd->add_option("--witness-out", tu.witness_out, "write the witness hypergraph here");

    VerifyArgs ver;
    CLI::App* ver_cmd = app.add_subcommand("verify", "verify a partition against a hypergraph");
    ver_cmd->add_option("--hypergraph", ver.hypergraph, "hypergraph file")->required();
    ver_cmd->add_option("--partition", ver.partition, "partition document")->required();

    ExperimentArgs exp;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "run seeded trials and emit CSV");
    exp_cmd->add_option("--n", exp.n, "vertex count")->required();
    exp_cmd->add_option("--uniformity,-r", exp.r, "edge size r")->required();
    exp_cmd->add_option("--p", exp.p, "edge probability (decimal or a/b)")->required();
    exp_cmd->add_option("--seed", exp.seed, "sampler seed")->required();
    exp_cmd->add_option("--trials", exp.trials, "trial count");
    exp_cmd->add_option("--method", exp.method, "greedy | star | exact");
    exp_cmd->add_option("--out,-o", exp.out, "CSV output path ('-' for stdout)");
    exp_cmd->add_option("--workers", exp.workers, "worker threads");
    exp_cmd->add_flag("--zero-runtime", exp.zero_runtime, "zero the runtime column (determinism runs)");
    exp_cmd->add_flag("--spot-check", exp.spot_check, "re-verify every tenth trial");
    exp_cmd->add_option("--max-nodes", exp.max_nodes, "exact-solver node budget");
    exp_cmd->add_option("--max-seconds", exp.max_seconds, "exact-solver wall-clock budget");

    PrefixBoundArgs pb;
    CLI::App* pb_cmd = app.add_subcommand("check-prefix-bound",
                                          "sample prefixes above the product threshold and count "
                                          "complete-block violations");
    pb_cmd->add_option("--n", pb.n, "vertex count")->required();
    pb_cmd->add_option("--uniformity,-r", pb.r, "edge size r")->required();
    pb_cmd->add_option("--p", pb.p, "edge probability (decimal or a/b)")->required();
    pb_cmd->add_option("--seed", pb.seed, "sampler seed")->required();
    pb_cmd->add_option("--samples", pb.samples, "number of prefixes to draw");
    pb_cmd->add_option("--witness-limit", pb.witness_limit, "max witnesses to keep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (dec_cmd->parsed()) return run_decompose(dec);
        if (ex_cmd->parsed()) return run_exact(ex);
        if (tu_cmd->parsed()) return run_turan(tu);
        if (ver_cmd->parsed()) return run_verify(ver);
        if (exp_cmd->parsed()) return run_experiment_cmd(exp);
        if (pb_cmd->parsed()) return run_prefix_bound(pb);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
