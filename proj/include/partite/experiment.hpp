// experiment.hpp - trial orchestration, CSV emission, and the randomized
// prefix-bound checker.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "partite/blocks.hpp"
#include "partite/decompose.hpp"
#include "partite/exact.hpp"
#include "partite/hypergraph.hpp"
#include "partite/random_model.hpp"
#include "partite/turan.hpp"

namespace partite {

// ---------------------------------------------------------------------------
// Experiment runs
// ---------------------------------------------------------------------------

enum class Method { greedy, star, exact };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::greedy: return "greedy";
        case Method::star: return "star";
        case Method::exact: return "exact";
    }
    return "?";
}

inline Method method_from_string(const std::string& s) {
    if (s == "greedy") return Method::greedy;
    if (s == "star") return Method::star;
    if (s == "exact") return Method::exact;
    throw ConfigError("unknown method: " + s);
}

struct ExperimentConfig {
    int n = 0;
    int r = 2;
    EdgeProbability p;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    Method method = Method::greedy;
    unsigned workers = 1;
    bool zero_runtime = false;        // report runtime_ms as 0 (determinism runs)
    SearchBudget turan_budget{};      // witness search inside the greedy pipeline
    std::uint64_t turan_seed = 1;
    SolveBudget solver_budget{};      // exact method
};

struct ExperimentRecord {
    int n = 0;
    int r = 2;
    std::string p_text;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    Method method = Method::greedy;
    std::uint64_t block_count = 0;
    std::uint64_t q_bound = 0;        // method's a-priori bound on the block count
    double ratio = 0.0;               // block_count / C(n, r-1)
    bool turan_exact = true;
    std::uint64_t runtime_ms = 0;
};

namespace detail {

inline ExperimentRecord run_single_trial(const ExperimentConfig& cfg, std::uint64_t trial) {
    ExperimentRecord rec;
    rec.n = cfg.n;
    rec.r = cfg.r;
    rec.p_text = cfg.p.text();
    rec.seed = cfg.seed;
    rec.trial = trial;
    rec.method = cfg.method;

    Hypergraph H = sample_hypergraph({cfg.n, cfg.r, cfg.p, cfg.seed, trial});
    auto t0 = std::chrono::steady_clock::now();
    Partition part;
    switch (cfg.method) {
        case Method::greedy: {
            PipelineResult res = upper_bound_pipeline(H, cfg.turan_budget, cfg.turan_seed);
            rec.block_count = res.report.block_count;
            rec.q_bound = res.report.q;
            rec.turan_exact = res.report.turan_exact;
            part = std::move(res.partition);
            break;
        }
        case Method::star: {
            MisResult mis = max_independent_set(H, cfg.turan_budget);
            part = star_decomposition(H, mis.vertices);
            rec.block_count = part.blocks().size();
            rec.q_bound = static_cast<std::uint64_t>(cfg.n) - mis.vertices.size();
            rec.turan_exact = mis.exact;
            break;
        }
        case Method::exact: {
            ExactResult res = exact_min_partition(H, BlockMode::all_blocks, cfg.solver_budget);
            part = std::move(res.partition);
            rec.block_count = part.blocks().size();
            rec.q_bound = H.edge_count();
            rec.turan_exact = res.status == SolveStatus::optimal;
            break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();

    VerificationReport report = verify_partition(H, part);
    if (!report.valid) throw Error("trial " + std::to_string(trial) + " produced an invalid partition");

    std::uint64_t universe = cfg.n >= cfg.r - 1
                                 ? binomial(static_cast<std::uint64_t>(cfg.n),
                                            static_cast<std::uint64_t>(cfg.r - 1))
                                 : 0;
    rec.ratio = universe == 0 ? 0.0
                              : static_cast<double>(rec.block_count) / static_cast<double>(universe);
    rec.runtime_ms =
        cfg.zero_runtime
            ? 0
            : static_cast<std::uint64_t>(
                  std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    return rec;
}

}  // namespace detail

// One record per trial_index in 0..trials-1. Trials are independent and may
// run on several workers; record order is by trial index either way, and the
// sampled hypergraphs depend only on (seed, trial), never on scheduling.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.method == Method::star && cfg.r != 2)
        throw ConfigError("method star requires uniformity 2");
    if (cfg.method == Method::greedy && cfg.r < 3)
        throw ConfigError("method greedy requires uniformity at least 3");
    if (cfg.workers == 0) throw ConfigError("workers must be at least 1");

    std::vector<ExperimentRecord> records(cfg.trials);
    unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(cfg.workers, cfg.trials == 0 ? 1 : cfg.trials));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < cfg.trials; ++t) records[t] = detail::run_single_trial(cfg, t);
        return records;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::uint64_t t = w; t < cfg.trials; t += workers)
                    records[t] = detail::run_single_trial(cfg, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return records;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "n,r,p,seed,trial,method,blocks,q_bound,ratio,turan_exact,runtime_ms";

// Fixed-point with 12 fractional digits; locale-independent.
inline std::string format_ratio(double x) {
    if (x < 0) return "-" + format_ratio(-x);
    std::uint64_t whole = static_cast<std::uint64_t>(x);
    std::uint64_t frac = static_cast<std::uint64_t>(std::llround((x - static_cast<double>(whole)) * 1e12));
    if (frac >= 1000000000000ULL) {
        frac -= 1000000000000ULL;
        ++whole;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%llu.%012llu", static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac));
    return buf;
}

inline void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const ExperimentRecord& rec : records) {
        out << rec.n << ',' << rec.r << ',' << rec.p_text << ',' << rec.seed << ',' << rec.trial
            << ',' << to_string(rec.method) << ',' << rec.block_count << ',' << rec.q_bound << ','
            << format_ratio(rec.ratio) << ',' << (rec.turan_exact ? 1 : 0) << ',' << rec.runtime_ms
            << '\n';
    }
}

inline std::string csv_to_string(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    write_csv(records, out);
    return out.str();
}

// ---------------------------------------------------------------------------
// Prefix-bound checker
// ---------------------------------------------------------------------------
//
// Samples H once, then draws random prefixes whose part-size product reaches
// (r+1) * log2(n), and flags those that still extend to a complete block
// whose last part is at least as large as the biggest prefix part. The size
// generator is rejection sampling: part sizes are drawn iid uniformly from
// {1..ceil(threshold)} and a draw is kept when the product reaches the
// threshold and the parts fit into [n]. Exhausting all prefixes is
// exponential, so a zero count is statistical evidence, not proof.

struct PrefixBoundConfig {
    int n = 0;
    int r = 3;
    EdgeProbability p;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1;
    std::size_t witness_limit = 1024;
};

struct PrefixWitness {
    std::vector<std::vector<Vertex>> prefix_parts;
    std::size_t extension_size;
};

struct PrefixBoundReport {
    int n = 0;
    int r = 0;
    std::string p_text;
    double threshold = 0.0;        // (r+1) * log2(n)
    std::uint64_t samples_drawn = 0;
    std::uint64_t violations = 0;
    std::vector<PrefixWitness> witnesses;  // truncated at witness_limit
    bool sampler_feasible = true;  // false when no size vector can qualify
};

inline PrefixBoundReport check_prefix_bound(const PrefixBoundConfig& cfg) {
    if (cfg.n < 2) throw ConfigError("check_prefix_bound requires n >= 2");
    if (cfg.r < 2) throw ConfigError("uniformity must be at least 2");
    if (cfg.samples < 1) throw ConfigError("samples must be at least 1");

    PrefixBoundReport report;
    report.n = cfg.n;
    report.r = cfg.r;
    report.p_text = cfg.p.text();
    report.threshold = (cfg.r + 1) * std::log2(static_cast<double>(cfg.n));

    const int parts = cfg.r - 1;
    const std::uint64_t cap = static_cast<std::uint64_t>(
        std::max(1.0, std::ceil(report.threshold)));

    // a qualifying size vector must exist, or rejection sampling never halts
    {
        std::vector<std::uint64_t> sizes(static_cast<std::size_t>(parts), 1);
        bool feasible = false;
        while (!feasible) {
            std::uint64_t product = 1, sum = 0;
            for (std::uint64_t k : sizes) {
                product *= k;
                sum += k;
            }
            if (sum <= static_cast<std::uint64_t>(cfg.n) &&
                static_cast<double>(product) >= report.threshold)
                feasible = true;
            int i = parts - 1;
            while (i >= 0 && sizes[static_cast<std::size_t>(i)] == cap) --i;
            if (i < 0) break;
            ++sizes[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < parts; ++j) sizes[static_cast<std::size_t>(j)] = 1;
        }
        if (!feasible) {
            report.sampler_feasible = false;
            return report;
        }
    }

    Hypergraph H = sample_hypergraph({cfg.n, cfg.r, cfg.p, cfg.seed, 0});
    rng::SplitMix gen(rng::mix(cfg.seed) ^ 0x5b1ce8a9d3f07642ULL);
    std::vector<Vertex> pool(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;

    for (std::uint64_t s = 0; s < cfg.samples; ++s) {
        std::vector<std::uint64_t> sizes(static_cast<std::size_t>(parts));
        std::uint64_t product, sum;
        do {
            product = 1;
            sum = 0;
            for (int i = 0; i < parts; ++i) {
                sizes[static_cast<std::size_t>(i)] = 1 + gen.below(cap);
                product *= sizes[static_cast<std::size_t>(i)];
                sum += sizes[static_cast<std::size_t>(i)];
            }
        } while (sum > static_cast<std::uint64_t>(cfg.n) ||
                 static_cast<double>(product) < report.threshold);

        // partial Fisher-Yates: the first `sum` entries become the parts
        for (std::uint64_t i = 0; i < sum; ++i) {
            std::uint64_t j = i + gen.below(static_cast<std::uint64_t>(cfg.n) - i);
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::vector<Vertex>> vertex_parts;
        std::size_t offset = 0;
        std::uint64_t max_part = 0;
        for (int i = 0; i < parts; ++i) {
            std::uint64_t k = sizes[static_cast<std::size_t>(i)];
            vertex_parts.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(offset),
                                      pool.begin() + static_cast<std::ptrdiff_t>(offset + k));
            offset += k;
            max_part = std::max(max_part, k);
        }
        Prefix prefix(std::move(vertex_parts));
        std::vector<Vertex> ext = extension_set(H, prefix);
        ++report.samples_drawn;
        if (ext.size() >= max_part) {
            ++report.violations;
            if (report.witnesses.size() < cfg.witness_limit)
                report.witnesses.push_back({prefix.parts(), ext.size()});
        }
    }
    return report;
}

}  // namespace partite
