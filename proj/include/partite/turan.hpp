// turan.hpp - extremal edge counts for forbidden cliques: exhaustive search at
// small scale, seeded local search beyond, and density-ratio sequences.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "partite/hypergraph.hpp"
#include "partite/random_model.hpp"

namespace partite {

struct SearchBudget {
    std::uint64_t max_nodes = 100'000'000;
    double max_seconds = 60.0;
};

struct TuranResult {
    int n = 0;               // host vertex count
    int s = 2;               // host uniformity
    int t = 3;               // forbidden clique order (K_t^(s))
    std::uint64_t ex_value = 0;  // witness edge count; equals ex(n, K_t^(s)) when exact
    Hypergraph witness;
    bool exact = false;      // true only for a completed exhaustive search (or a classical identity)
    bool witness_maximal = false;  // no single edge can be added without a clique
    std::uint64_t nodes_expanded = 0;
    double elapsed_seconds = 0.0;
};

// Number of t-vertex subsets of G all of whose s-subsets are edges.
inline std::uint64_t count_clique_copies(const Hypergraph& G, int t) {
    int s = G.uniformity();
    if (t <= s) throw ConfigError("clique order must exceed host uniformity");
    std::uint64_t copies = 0;
    for_each_subset(G.vertex_count(), t, [&](const Edge& t_set) {
        bool all = true;
        for_each_subset(t, s, [&](const Edge& pick) {
            if (!all) return;
            Edge sub(pick.size());
            for (std::size_t i = 0; i < pick.size(); ++i)
                sub[i] = t_set[static_cast<std::size_t>(pick[i] - 1)];
            if (!G.has_edge(sub)) all = false;
        });
        if (all) ++copies;
    });
    return copies;
}

namespace detail {

// Shared scaffolding for clique-free searches over the C(n,s) edge slots.
class KFreeSlots {
public:
    KFreeSlots(int n, int s, int t) : n_(n), s_(s), t_(t) {
        for_each_subset(n, s, [&](const Edge& e) { slots_.push_back(e); });
        included_.assign(slots_.size(), 0);
    }

    std::size_t slot_count() const { return slots_.size(); }
    const std::vector<Edge>& slots() const { return slots_; }
    std::uint64_t included_count() const { return count_; }
    const std::vector<char>& included() const { return included_; }

    void set_included(std::vector<char> inc) {
        included_ = std::move(inc);
        count_ = static_cast<std::uint64_t>(std::count(included_.begin(), included_.end(), 1));
    }

    void add(std::size_t idx) { included_[idx] = 1; ++count_; }
    void remove(std::size_t idx) { included_[idx] = 0; --count_; }

    bool has(const Edge& sub) const {
        return included_[static_cast<std::size_t>(subset_lex_rank(sub, n_))] != 0;
    }

    // Would including slot `idx` complete a copy of K_t^(s)?
    bool creates_clique(std::size_t idx) const {
        const Edge& e = slots_[idx];
        std::vector<Vertex> others;
        others.reserve(static_cast<std::size_t>(n_ - s_));
        for (Vertex v = 1; v <= n_; ++v)
            if (!std::binary_search(e.begin(), e.end(), v)) others.push_back(v);
        Edge extras(static_cast<std::size_t>(t_ - s_));
        return search_extras(e, others, extras, 0, 0);
    }

    std::vector<Edge> included_edges() const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (included_[i]) out.push_back(slots_[i]);
        return out;
    }

private:
    bool search_extras(const Edge& e, const std::vector<Vertex>& others, Edge& extras,
                       std::size_t depth, std::size_t start) const {
        if (depth == extras.size()) return clique_completed(e, extras);
        for (std::size_t i = start; i < others.size(); ++i) {
            extras[depth] = others[i];
            if (search_extras(e, others, extras, depth + 1, i + 1)) return true;
        }
        return false;
    }

    bool clique_completed(const Edge& e, const Edge& extras) const {
        Edge t_set;
        t_set.reserve(static_cast<std::size_t>(t_));
        std::merge(e.begin(), e.end(), extras.begin(), extras.end(), std::back_inserter(t_set));
        bool all = true;
        for_each_subset(t_, s_, [&](const Edge& pick) {
            if (!all) return;
            Edge sub(pick.size());
            for (std::size_t i = 0; i < pick.size(); ++i)
                sub[i] = t_set[static_cast<std::size_t>(pick[i] - 1)];
            if (sub == e) return;  // the slot being added
            if (!has(sub)) all = false;
        });
        return all;
    }

    int n_, s_, t_;
    std::vector<Edge> slots_;
    std::vector<char> included_;
    std::uint64_t count_ = 0;
};

inline bool witness_is_maximal(const KFreeSlots& work) {
    for (std::size_t idx = 0; idx < work.slot_count(); ++idx)
        if (!work.included()[idx] && !work.creates_clique(idx)) return false;
    return true;
}

struct ExhaustiveSearch {
    KFreeSlots work;
    std::uint64_t best = 0;
    std::vector<char> best_included;
    std::uint64_t nodes = 0;
    std::uint64_t max_nodes;
    std::chrono::steady_clock::time_point deadline;
    bool budget_hit = false;

    ExhaustiveSearch(int n, int s, int t, const SearchBudget& budget)
        : work(n, s, t),
          best_included(work.slot_count(), 0),
          max_nodes(budget.max_nodes),
          deadline(std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.max_seconds))) {}

    // Include-first lexicographic DFS; the first maximum reached is the
    // lexicographically least one, so results are scheduling-independent.
    void dfs(std::size_t idx) {
        if (budget_hit) return;
        if (++nodes >= max_nodes) {
            budget_hit = true;
            return;
        }
        if ((nodes & 0xfff) == 0 && std::chrono::steady_clock::now() >= deadline) {
            budget_hit = true;
            return;
        }
        if (idx == work.slot_count()) {
            if (work.included_count() > best) {
                best = work.included_count();
                best_included = work.included();
            }
            return;
        }
        // remaining slots cannot beat the incumbent
        if (work.included_count() + (work.slot_count() - idx) <= best) return;
        if (!work.creates_clique(idx)) {
            work.add(idx);
            dfs(idx + 1);
            work.remove(idx);
        }
        dfs(idx + 1);
    }
};

// Seeded restarts of greedy maximal fill plus remove-one/refill climbing.
inline void local_search_kfree(KFreeSlots& work, std::uint64_t seed, std::uint64_t& best,
                               std::vector<char>& best_included) {
    rng::SplitMix gen(rng::mix(seed) ^ 0x7c0ffee1d2b3a4c5ULL);
    const std::size_t m = work.slot_count();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});

    auto shuffle = [&]() {
        for (std::size_t i = m; i > 1; --i)
            std::swap(order[i - 1], order[gen.below(i)]);
    };
    auto greedy_fill = [&]() {
        for (std::size_t idx : order)
            if (!work.included()[idx] && !work.creates_clique(idx)) work.add(idx);
    };

    const int restarts = 12;
    const int passes = 6;
    for (int rs = 0; rs < restarts; ++rs) {
        work.set_included(std::vector<char>(m, 0));
        shuffle();
        greedy_fill();
        for (int pass = 0; pass < passes; ++pass) {
            std::vector<char> saved = work.included();
            std::uint64_t saved_count = work.included_count();
            if (saved_count == 0) break;
            std::uint64_t pick = gen.below(saved_count);
            for (std::size_t idx = 0; idx < m; ++idx) {
                if (!work.included()[idx]) continue;
                if (pick-- == 0) {
                    work.remove(idx);
                    break;
                }
            }
            shuffle();
            greedy_fill();
            if (work.included_count() <= saved_count) work.set_included(std::move(saved));
        }
        if (work.included_count() > best) {
            best = work.included_count();
            best_included = work.included();
        }
    }
}

}  // namespace detail

// Exhaustive maximum edge count of a K_t^(s)-free s-uniform hypergraph on n
// vertices. Supersets of a clique-containing graph are never visited; the
// incumbent-count bound prunes the rest. Budget exhaustion downgrades the
// result to a lower bound (exact = false).
inline TuranResult turan_number_exact(int n, int s, int t, SearchBudget budget = {}) {
    if (s < 2) throw ConfigError("host uniformity must be at least 2");
    if (t <= s) throw ConfigError("clique order must exceed host uniformity");
    if (n < 0) throw ConfigError("vertex count must be nonnegative");
    auto t0 = std::chrono::steady_clock::now();
    detail::ExhaustiveSearch search(n, s, t, budget);
    search.dfs(0);
    TuranResult result;
    result.n = n;
    result.s = s;
    result.t = t;
    result.ex_value = search.best;
    result.exact = !search.budget_hit;
    result.nodes_expanded = search.nodes;
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail::KFreeSlots materialize(n, s, t);
    materialize.set_included(search.best_included);
    result.witness = Hypergraph(n, s, materialize.included_edges());
    result.witness_maximal = detail::witness_is_maximal(materialize);
    return result;
}

// Slot counts above this make exhaustive search pointless within any sane
// node budget (the tree has 2^m leaves before pruning).
inline constexpr std::size_t kExhaustiveSlotCap = 34;

// Witness construction for the forbidden clique K_r^(r-1) on (r-1)-uniform
// hosts. r = 3 gets the balanced complete bipartite graph (classical
// triangle-free optimum). r >= 4 runs the exhaustive search when the slot
// count and budget allow, otherwise a seeded local search; such witnesses are
// clique-free lower bounds only and carry exact = false.
inline TuranResult extremal_construction(int n, int r, SearchBudget budget = {},
                                         std::uint64_t seed = 1) {
    if (r < 3) throw ConfigError("extremal_construction requires uniformity at least 3");
    if (n < 0) throw ConfigError("vertex count must be nonnegative");
    if (r == 3) {
        int left = (n + 1) / 2;
        std::vector<Edge> edges;
        for (Vertex a = 1; a <= left; ++a)
            for (Vertex b = left + 1; b <= n; ++b) edges.push_back({a, b});
        TuranResult result;
        result.n = n;
        result.s = 2;
        result.t = 3;
        result.witness = Hypergraph(n, 2, std::move(edges));
        result.ex_value = result.witness.edge_count();
        result.exact = true;
        detail::KFreeSlots check(n, 2, 3);
        std::vector<char> included(check.slot_count(), 0);
        for (const Edge& e : result.witness.edges())
            included[static_cast<std::size_t>(subset_lex_rank(e, n))] = 1;
        check.set_included(std::move(included));
        result.witness_maximal = detail::witness_is_maximal(check);
        return result;
    }
    int s = r - 1;
    int t = r;
    std::uint64_t slot_count = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s));
    TuranResult result;
    if (slot_count <= kExhaustiveSlotCap) {
        result = turan_number_exact(n, s, t, budget);
        if (result.exact) return result;
    } else {
        result.n = n;
        result.s = s;
        result.t = t;
        result.witness = Hypergraph(n, s);
    }
    detail::KFreeSlots work(n, s, t);
    std::uint64_t best = result.ex_value;
    std::vector<char> best_included(work.slot_count(), 0);
    detail::local_search_kfree(work, seed, best, best_included);
    if (best > result.ex_value) {
        result.ex_value = best;
        work.set_included(best_included);
        result.witness = Hypergraph(n, s, work.included_edges());
    }
    result.exact = false;
    {
        detail::KFreeSlots check(n, s, t);
        std::vector<char> included(check.slot_count(), 0);
        for (const Edge& e : result.witness.edges())
            included[static_cast<std::size_t>(subset_lex_rank(e, n))] = 1;
        check.set_included(std::move(included));
        result.witness_maximal = detail::witness_is_maximal(check);
    }
    return result;
}

struct DensityPoint {
    int n;
    std::uint64_t value;  // extremal edge count, or best known lower bound
    double ratio;         // value / C(n, r-1)
    bool exact;
};

// Ratios ex(n, K_r^(r-1)) / C(n, r-1) for n in [n_min, n_max]; where exact
// values are available the sequence is nonincreasing.
inline std::vector<DensityPoint> density_sequence(int r, int n_min, int n_max,
                                                  SearchBudget budget = {}) {
    if (n_min < r) throw ConfigError("density_sequence requires n_min >= r");
    std::vector<DensityPoint> out;
    for (int n = n_min; n <= n_max; ++n) {
        TuranResult res = extremal_construction(n, r, budget);
        double denom = static_cast<double>(
            binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r - 1)));
        out.push_back({n, res.ex_value,
                       denom == 0.0 ? 0.0 : static_cast<double>(res.ex_value) / denom, res.exact});
    }
    return out;
}

}  // namespace partite
