// decompose.hpp - decomposition constructions: cover-driven greedy, the star
// decomposition for graphs, and an exact maximum independent set solver.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "partite/blocks.hpp"
#include "partite/hypergraph.hpp"
#include "partite/turan.hpp"

namespace partite {

// ---------------------------------------------------------------------------
// Greedy decomposition driven by an ordered cover of (r-1)-sets.
// ---------------------------------------------------------------------------

struct GreedyStep {
    std::size_t cover_index;
    std::vector<Edge> assigned;      // hyperedges taken at this step
    std::vector<Vertex> last_part;   // their leftover vertices
};

struct GreedyTrace {
    std::vector<Edge> cover;          // the cover members e_1..e_q, in order
    std::vector<GreedyStep> steps;    // one entry per cover member
    std::vector<std::size_t> skipped; // indices whose step assigned nothing
};

struct GreedyResult {
    Partition partition;
    GreedyTrace trace;
};

// Walks the cover in order; step i takes every not-yet-assigned edge
// containing cover member e_i and emits the trivial block (singletons of
// e_i) x leftovers. Equivalently: each edge goes to the first cover member
// it contains. Every edge of H must contain some cover member.
inline GreedyResult greedy_turan_decomposition(const Hypergraph& H, const std::vector<Edge>& cover) {
    const int r = H.uniformity();
    if (r < 3) throw ConfigError("greedy decomposition requires uniformity at least 3");
    GreedyResult result;
    result.trace.cover.reserve(cover.size());
    std::map<Edge, std::size_t> first_index;
    for (const Edge& raw : cover) {
        Edge member = canonicalize_edge(raw, r - 1, H.vertex_count());
        first_index.emplace(member, result.trace.cover.size());  // keeps the first occurrence
        result.trace.cover.push_back(std::move(member));
    }

    result.trace.steps.resize(result.trace.cover.size());
    for (std::size_t i = 0; i < result.trace.cover.size(); ++i)
        result.trace.steps[i].cover_index = i;

    Edge sub(static_cast<std::size_t>(r - 1));
    for (const Edge& edge : H.edges()) {
        std::size_t assigned = Violation::npos;
        Vertex leftover = 0;
        for (int drop = 0; drop < r; ++drop) {
            for (int j = 0, k = 0; j < r; ++j)
                if (j != drop) sub[static_cast<std::size_t>(k++)] = edge[static_cast<std::size_t>(j)];
            auto it = first_index.find(sub);
            if (it != first_index.end() && it->second < assigned) {
                assigned = it->second;
                leftover = edge[static_cast<std::size_t>(drop)];
            }
        }
        if (assigned == Violation::npos)
            throw CoverGap("edge contains no cover member", edge);
        result.trace.steps[assigned].assigned.push_back(edge);
        result.trace.steps[assigned].last_part.push_back(leftover);
    }

    std::vector<Block> blocks;
    for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
        GreedyStep& step = result.trace.steps[i];
        std::sort(step.last_part.begin(), step.last_part.end());
        if (step.assigned.empty()) {
            result.trace.skipped.push_back(i);
            continue;
        }
        std::vector<std::vector<Vertex>> parts;
        parts.reserve(static_cast<std::size_t>(r));
        for (Vertex v : result.trace.cover[i]) parts.push_back({v});
        parts.push_back(step.last_part);
        blocks.emplace_back(std::move(parts));
    }

    result.partition = Partition(H.vertex_count(), r, std::move(blocks), Source::greedy);
    VerificationReport report = verify_partition(H, result.partition);
    if (!report.valid) throw Error("greedy decomposition produced an invalid partition");
    result.partition.set_verified(true);
    return result;
}

// ---------------------------------------------------------------------------
// Upper-bound pipeline: clique-free witness -> complement cover -> greedy.
// ---------------------------------------------------------------------------

struct BoundReport {
    std::uint64_t universe;    // C(n, r-1)
    std::uint64_t q;           // cover size = universe - witness edge count
    std::uint64_t block_count;
    double ratio;              // block_count / universe
    bool turan_exact;          // witness found by completed exhaustive search
};

struct PipelineResult {
    Partition partition;
    GreedyTrace trace;
    BoundReport report;
};

// Builds a K_r^(r-1)-free witness G on H's vertices, takes the
// lexicographically sorted complement of E(G) as the cover, and runs the
// greedy decomposition. Every r-set contains a non-witness (r-1)-set
// (otherwise G would contain the forbidden clique), so the cover
// precondition holds for any H.
inline PipelineResult upper_bound_pipeline(const Hypergraph& H, SearchBudget budget = {},
                                           std::uint64_t seed = 1) {
    const int n = H.vertex_count();
    const int r = H.uniformity();
    if (r < 3) throw ConfigError("upper_bound_pipeline requires uniformity at least 3");
    TuranResult witness = extremal_construction(n, r, budget, seed);
    std::vector<Edge> cover;
    for_each_subset(n, r - 1, [&](const Edge& e) {
        if (!witness.witness.has_edge(e)) cover.push_back(e);
    });
    GreedyResult greedy = greedy_turan_decomposition(H, cover);
    std::uint64_t universe = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r - 1));
    PipelineResult out{std::move(greedy.partition), std::move(greedy.trace),
                       BoundReport{universe, cover.size(), 0, 0.0, witness.exact}};
    out.report.block_count = out.partition.blocks().size();
    out.report.ratio = universe == 0
                           ? 0.0
                           : static_cast<double>(out.report.block_count) / static_cast<double>(universe);
    return out;
}

// ---------------------------------------------------------------------------
// Maximum independent set (graphs only)
// ---------------------------------------------------------------------------

struct MisResult {
    std::vector<Vertex> vertices;
    bool exact;
    std::uint64_t nodes_expanded;
};

namespace detail {

struct MisSolver {
    int n;
    std::vector<std::uint64_t> adj;  // adjacency masks, vertex i at bit i (0-based)
    std::uint64_t nodes = 0;
    std::uint64_t max_nodes;
    bool budget_hit = false;

    MisSolver(const Hypergraph& G, std::uint64_t max_nodes_in)
        : n(G.vertex_count()), adj(static_cast<std::size_t>(G.vertex_count()), 0),
          max_nodes(max_nodes_in) {
        for (const Edge& e : G.edges()) {
            int a = e[0] - 1, b = e[1] - 1;
            adj[static_cast<std::size_t>(a)] |= 1ULL << b;
            adj[static_cast<std::size_t>(b)] |= 1ULL << a;
        }
    }

    // Greedy clique cover of the candidate vertices: each clique meets an
    // independent set at most once, so the cover size bounds it from above.
    int clique_cover_bound(std::uint64_t cand) const {
        int cliques = 0;
        std::uint64_t rest = cand;
        std::vector<std::uint64_t> members;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            bool placed = false;
            for (std::uint64_t& m : members) {
                if ((m & ~adj[static_cast<std::size_t>(v)]) == 0) {
                    m |= 1ULL << v;
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                members.push_back(1ULL << v);
                ++cliques;
            }
        }
        return cliques;
    }

    void dfs(std::uint64_t cand, int size, std::uint64_t chosen, int& best, std::uint64_t& best_set) {
        if (budget_hit) return;
        if (++nodes >= max_nodes) {
            budget_hit = true;
            return;
        }
        if (size > best) {
            best = size;
            best_set = chosen;
        }
        if (!cand) return;
        if (size + clique_cover_bound(cand) <= best) return;
        // branch on a maximum-degree candidate (smallest label on ties)
        int pick = -1, pick_deg = -1;
        std::uint64_t rest = cand;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            int deg = __builtin_popcountll(adj[static_cast<std::size_t>(v)] & cand);
            if (deg > pick_deg) {
                pick_deg = deg;
                pick = v;
            }
        }
        std::uint64_t bit = 1ULL << pick;
        dfs(cand & ~(adj[static_cast<std::size_t>(pick)] | bit), size + 1, chosen | bit, best, best_set);
        dfs(cand & ~bit, size, chosen, best, best_set);
    }

    int solve_size(std::uint64_t cand, std::uint64_t& set_out) {
        int best = -1;
        std::uint64_t best_set = 0;
        dfs(cand, 0, 0, best, best_set);
        set_out = best_set;
        return best;
    }
};

}  // namespace detail

// Exact maximum independent set by branch and bound. Ties are broken toward
// the lexicographically least optimum, so results never depend on search
// order. Budget exhaustion returns the incumbent flagged inexact.
inline MisResult max_independent_set(const Hypergraph& G, SearchBudget budget = {}) {
    if (G.uniformity() != 2) throw ConfigError("max_independent_set requires a graph (r = 2)");
    if (G.vertex_count() > 64) throw ConfigError("max_independent_set supports at most 64 vertices");
    detail::MisSolver solver(G, budget.max_nodes);
    const std::uint64_t all = G.vertex_count() == 64 ? ~0ULL : (1ULL << G.vertex_count()) - 1;
    std::uint64_t incumbent = 0;
    int alpha = solver.solve_size(all, incumbent);
    std::uint64_t chosen = incumbent;
    if (!solver.budget_hit) {
        // rebuild the lexicographically least optimum greedily
        chosen = 0;
        std::uint64_t cand = all;
        int need = alpha;
        for (int v = 0; v < G.vertex_count() && need > 0; ++v) {
            std::uint64_t bit = 1ULL << v;
            if (!(cand & bit)) continue;
            std::uint64_t ignore = 0;
            std::uint64_t without = cand & ~(solver.adj[static_cast<std::size_t>(v)] | bit);
            if (solver.budget_hit) break;
            if (1 + solver.solve_size(without, ignore) == need) {
                chosen |= bit;
                cand = without;
                --need;
            }
        }
        if (solver.budget_hit) chosen = incumbent;  // fall back to the incumbent
    }
    MisResult result;
    result.exact = !solver.budget_hit;
    result.nodes_expanded = solver.nodes;
    for (int v = 0; v < G.vertex_count(); ++v)
        if (chosen & (1ULL << v)) result.vertices.push_back(v + 1);
    return result;
}

// ---------------------------------------------------------------------------
// Star decomposition
// ---------------------------------------------------------------------------

// For each vertex outside the independent set I, in ascending order, emits
// the star on its not-yet-covered incident edges. Realizes the bound
// "blocks <= n - |I|".
inline Partition star_decomposition(const Hypergraph& G, const std::vector<Vertex>& independent) {
    if (G.uniformity() != 2) throw ConfigError("star_decomposition requires a graph (r = 2)");
    std::vector<char> in_set(static_cast<std::size_t>(G.vertex_count()) + 1, 0);
    for (Vertex v : independent) {
        if (v < 1 || v > G.vertex_count())
            throw OutOfRange("independent-set vertex " + std::to_string(v) + " out of range");
        in_set[static_cast<std::size_t>(v)] = 1;
    }
    for (const Edge& e : G.edges())
        if (in_set[static_cast<std::size_t>(e[0])] && in_set[static_cast<std::size_t>(e[1])])
            throw NotIndependent("set spans an edge", e);

    std::vector<std::vector<Vertex>> neighbors(static_cast<std::size_t>(G.vertex_count()) + 1);
    for (const Edge& e : G.edges()) {
        neighbors[static_cast<std::size_t>(e[0])].push_back(e[1]);
        neighbors[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }

    std::vector<char> is_earlier_center(static_cast<std::size_t>(G.vertex_count()) + 1, 0);
    std::vector<Block> blocks;
    for (Vertex v = 1; v <= G.vertex_count(); ++v) {
        if (in_set[static_cast<std::size_t>(v)]) continue;
        std::vector<Vertex> leaves;
        for (Vertex u : neighbors[static_cast<std::size_t>(v)])
            if (!is_earlier_center[static_cast<std::size_t>(u)]) leaves.push_back(u);
        is_earlier_center[static_cast<std::size_t>(v)] = 1;
        if (leaves.empty()) continue;
        std::sort(leaves.begin(), leaves.end());
        blocks.push_back(Block({{v}, leaves}));
    }

    Partition part(G.vertex_count(), 2, std::move(blocks), Source::star);
    VerificationReport report = verify_partition(G, part);
    if (!report.valid) throw Error("star decomposition produced an invalid partition");
    part.set_verified(true);
    return part;
}

}  // namespace partite
