// exact.hpp - exact minimization of the number of complete r-partite blocks
// partitioning an edge set, with an optional nontrivial-only mode.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "partite/blocks.hpp"
#include "partite/decompose.hpp"
#include "partite/hypergraph.hpp"

namespace partite {

enum class BlockMode { all_blocks, nontrivial_only };
enum class SolveStatus { optimal, upper_bound_only, infeasible };

struct SolveBudget {
    std::uint64_t max_nodes = 10'000'000;
    double max_seconds = 60.0;
};

struct ExactResult {
    SolveStatus status = SolveStatus::infeasible;
    std::int64_t value = -1;        // block count of the reported partition; -1 when none known
    std::int64_t lower_bound = 0;   // proven lower bound on the optimum
    Partition partition;
    std::uint64_t nodes_expanded = 0;
};

namespace detail {

struct BudgetHit {};

// Depth-first search over partial partitions. The uncovered edge set is a
// 64-bit mask; each step covers the lexicographically least uncovered edge
// with some block whose product set lies inside the uncovered edges.
// Candidate blocks are generated from the pivot edge by growing parts one
// vertex at a time in ascending order, which reaches every valid block
// exactly once. Iterative deepening over the allowed block count yields
// certified lower bounds; results for each uncovered mask are memoized.
class ExactSolver {
public:
    ExactSolver(const Hypergraph& H, BlockMode mode, const SolveBudget& budget)
        : H_(H), n_(H.vertex_count()), r_(H.uniformity()), mode_(mode),
          max_nodes_(budget.max_nodes),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget.max_seconds))) {
        edge_vertex_masks_.reserve(H.edge_count());
        for (std::size_t i = 0; i < H.edge_count(); ++i) {
            std::uint64_t m = 0;
            for (Vertex v : H.edges()[i]) m |= 1ULL << (v - 1);
            edge_vertex_masks_.push_back(m);
            edge_by_vertex_mask_.emplace(m, static_cast<int>(i));
        }
        full_mask_ = H.edge_count() == 64 ? ~0ULL : (1ULL << H.edge_count()) - 1;
        compute_root_block_size();
    }

    std::uint64_t full_mask() const { return full_mask_; }
    int max_block_size() const { return s_root_; }
    std::uint64_t nodes() const { return nodes_; }

    struct Res {
        enum Kind { Exact, MoreThan, Infeasible } kind;
        int value;  // meaningful for Exact
    };

    Res solve(std::uint64_t uncovered, int allowed) {
        if (uncovered == 0) return {Res::Exact, 0};
        MemoEntry* entry = memo_find(uncovered);
        if (entry) {
            if (entry->exact == kInfeasible) return {Res::Infeasible, 0};
            if (entry->exact != kUnknown)
                return entry->exact <= allowed ? Res{Res::Exact, entry->exact} : Res{Res::MoreThan, 0};
            if (entry->lb > allowed) return {Res::MoreThan, 0};
        }
        int pop = __builtin_popcountll(uncovered);
        int base_bound = (pop + s_root_ - 1) / s_root_;
        if (base_bound > allowed) {
            memo_update_lb(uncovered, base_bound);
            return {Res::MoreThan, 0};
        }

        bump_nodes();
        int pivot = __builtin_ctzll(uncovered);
        std::vector<std::uint64_t> cands = enumerate_candidates(pivot, uncovered);
        if (cands.empty()) {
            memo_set_exact(uncovered, kInfeasible);
            return {Res::Infeasible, 0};
        }
        int s_pivot = 0;
        for (std::uint64_t c : cands) s_pivot = std::max(s_pivot, __builtin_popcountll(c));
        int refined = 1 + (pop - s_pivot + s_root_ - 1) / s_root_;
        if (refined > allowed) {
            memo_update_lb(uncovered, refined);
            return {Res::MoreThan, 0};
        }
        int lower_floor = std::max(base_bound, refined);

        // larger blocks first; mask order breaks ties deterministically
        std::sort(cands.begin(), cands.end(), [](std::uint64_t a, std::uint64_t b) {
            int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
            if (pa != pb) return pa > pb;
            return a < b;
        });

        const int kInf = 1 << 20;
        int best = kInf;
        std::uint64_t best_mask = 0;
        bool saw_open = false;
        for (std::uint64_t mask : cands) {
            if (best <= lower_floor) break;
            int cap = std::min(allowed, best == kInf ? allowed : best - 1);
            Res sub = solve(uncovered & ~mask, cap - 1);
            if (sub.kind == Res::Exact) {
                if (1 + sub.value < best) {
                    best = 1 + sub.value;
                    best_mask = mask;
                }
            } else if (sub.kind == Res::MoreThan) {
                saw_open = true;
            }
        }
        if (best != kInf) {
            memo_set_exact(uncovered, static_cast<std::int16_t>(best));
            choice_[uncovered] = best_mask;
            return {Res::Exact, best};
        }
        if (saw_open) {
            memo_update_lb(uncovered, allowed + 1);
            return {Res::MoreThan, 0};
        }
        memo_set_exact(uncovered, kInfeasible);
        return {Res::Infeasible, 0};
    }

    // Rebuilds the chosen block sequence for an exactly solved mask.
    std::vector<Block> reconstruct(std::uint64_t uncovered) {
        std::vector<Block> blocks;
        while (uncovered) {
            auto it = choice_.find(uncovered);
            if (it == choice_.end()) throw Error("solver witness chain broken");
            blocks.push_back(materialize_block(__builtin_ctzll(uncovered), uncovered, it->second));
            uncovered &= ~it->second;
        }
        return blocks;
    }

    // Every admissible block whose product set contains edge `pivot` and lies
    // within `uncovered`, as explicit blocks (test support and witness
    // rebuilding; the search itself works on the product masks).
    std::vector<Block> candidate_blocks(int pivot, std::uint64_t uncovered) {
        std::vector<Block> out;
        for (std::uint64_t mask : enumerate_candidates(pivot, uncovered))
            out.push_back(materialize_block(pivot, uncovered, mask));
        return out;
    }

private:
    static constexpr std::int16_t kUnknown = -1;
    static constexpr std::int16_t kInfeasible = -2;

    struct MemoEntry {
        std::int16_t lb = 0;
        std::int16_t exact = kUnknown;
    };

    void bump_nodes() {
        if (++nodes_ >= max_nodes_) throw BudgetHit{};
        if ((nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() >= deadline_) throw BudgetHit{};
    }

    // --- candidate generation -------------------------------------------

    bool mode_admits(const std::vector<std::uint64_t>& parts) const {
        if (mode_ == BlockMode::all_blocks) return true;
        int big = 0;
        for (std::uint64_t p : parts)
            if (__builtin_popcountll(p) >= 2) ++big;
        return big >= 2;  // prefix product >= 2 under canonical size order
    }

    // All product members that put `w` into part `skip`, one vertex from
    // every other part. Returns false if any of them is unavailable.
    bool cross_products(const std::vector<std::uint64_t>& parts, std::size_t skip, Vertex w,
                        std::uint64_t uncovered, std::uint64_t& out_bits) const {
        return cross_rec(parts, skip, 0, 1ULL << (w - 1), uncovered, out_bits);
    }

    bool cross_rec(const std::vector<std::uint64_t>& parts, std::size_t skip, std::size_t j,
                   std::uint64_t acc, std::uint64_t uncovered, std::uint64_t& out_bits) const {
        if (j == parts.size()) {
            auto it = edge_by_vertex_mask_.find(acc);
            if (it == edge_by_vertex_mask_.end()) return false;
            std::uint64_t bit = 1ULL << it->second;
            if (!(uncovered & bit)) return false;
            out_bits |= bit;
            return true;
        }
        if (j == skip) return cross_rec(parts, skip, j + 1, acc, uncovered, out_bits);
        std::uint64_t rest = parts[j];
        while (rest) {
            Vertex v = __builtin_ctzll(rest) + 1;
            rest &= rest - 1;
            if (!cross_rec(parts, skip, j + 1, acc | (1ULL << (v - 1)), uncovered, out_bits))
                return false;
        }
        return true;
    }

    void grow(std::vector<std::uint64_t>& parts, std::uint64_t used, std::uint64_t prod,
              Vertex next_from, std::uint64_t uncovered, std::vector<std::uint64_t>& out) {
        bump_nodes();
        if (mode_admits(parts)) out.push_back(prod);
        for (Vertex w = next_from; w <= n_; ++w) {
            std::uint64_t wbit = 1ULL << (w - 1);
            if (used & wbit) continue;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                std::uint64_t extra = 0;
                if (!cross_products(parts, i, w, uncovered, extra)) continue;
                parts[i] |= wbit;
                grow(parts, used | wbit, prod | extra, w + 1, uncovered, out);
                parts[i] &= ~wbit;
            }
        }
    }

    std::vector<std::uint64_t> enumerate_candidates(int pivot, std::uint64_t uncovered) {
        std::vector<std::uint64_t> out;
        std::vector<std::uint64_t> parts;
        parts.reserve(static_cast<std::size_t>(r_));
        for (Vertex v : H_.edges()[static_cast<std::size_t>(pivot)]) parts.push_back(1ULL << (v - 1));
        grow(parts, edge_vertex_masks_[static_cast<std::size_t>(pivot)], 1ULL << pivot, 1, uncovered,
             out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Finds the part shape realizing `target` for the pivot edge; the growth
    // order makes the first match deterministic.
    Block materialize_block(int pivot, std::uint64_t uncovered, std::uint64_t target) {
        std::vector<std::uint64_t> parts;
        for (Vertex v : H_.edges()[static_cast<std::size_t>(pivot)]) parts.push_back(1ULL << (v - 1));
        std::vector<std::uint64_t> found;
        if (!materialize_rec(parts, edge_vertex_masks_[static_cast<std::size_t>(pivot)],
                             1ULL << pivot, 1, uncovered, target, found))
            throw Error("solver witness block not regenerable");
        std::vector<std::vector<Vertex>> vertex_parts;
        for (std::uint64_t pm : found) {
            std::vector<Vertex> part;
            std::uint64_t rest = pm;
            while (rest) {
                part.push_back(__builtin_ctzll(rest) + 1);
                rest &= rest - 1;
            }
            vertex_parts.push_back(std::move(part));
        }
        return Block(std::move(vertex_parts));
    }

    bool materialize_rec(std::vector<std::uint64_t>& parts, std::uint64_t used, std::uint64_t prod,
                         Vertex next_from, std::uint64_t uncovered, std::uint64_t target,
                         std::vector<std::uint64_t>& found) {
        if (prod == target && mode_admits(parts)) {
            found = parts;
            return true;
        }
        if ((prod & ~target) != 0) return false;
        for (Vertex w = next_from; w <= n_; ++w) {
            std::uint64_t wbit = 1ULL << (w - 1);
            if (used & wbit) continue;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                std::uint64_t extra = 0;
                if (!cross_products(parts, i, w, uncovered, extra)) continue;
                parts[i] |= wbit;
                if (materialize_rec(parts, used | wbit, prod | extra, w + 1, uncovered, target, found))
                    return true;
                parts[i] &= ~wbit;
            }
        }
        return false;
    }

    // Largest product size over mode-admissible blocks inside E(H); the
    // denominator of the admissible bound ceil(|uncovered| / s_root).
    void compute_root_block_size() {
        s_root_ = 0;
        for (std::size_t f = 0; f < H_.edge_count(); ++f) {
            std::vector<std::uint64_t> cands = enumerate_candidates(static_cast<int>(f), full_mask_);
            for (std::uint64_t c : cands) s_root_ = std::max(s_root_, __builtin_popcountll(c));
        }
    }

    // --- memo: open-addressing map from uncovered mask to bounds ---------

    MemoEntry* memo_find(std::uint64_t key) {
        if (memo_keys_.empty()) return nullptr;
        std::size_t mask = memo_keys_.size() - 1;
        std::size_t i = static_cast<std::size_t>(rng::mix(key)) & mask;
        while (memo_keys_[i] != 0) {
            if (memo_keys_[i] == key) return &memo_vals_[i];
            i = (i + 1) & mask;
        }
        return nullptr;
    }

    MemoEntry* memo_insert(std::uint64_t key) {
        if (memo_keys_.empty()) memo_grow(1 << 16);
        if (memo_used_ * 10 >= memo_keys_.size() * 7) {
            if (memo_keys_.size() < kMemoSlotCap) {
                memo_grow(memo_keys_.size() * 2);
            } else {
                return memo_find(key);  // table full: update existing keys only
            }
        }
        std::size_t mask = memo_keys_.size() - 1;
        std::size_t i = static_cast<std::size_t>(rng::mix(key)) & mask;
        while (memo_keys_[i] != 0) {
            if (memo_keys_[i] == key) return &memo_vals_[i];
            i = (i + 1) & mask;
        }
        memo_keys_[i] = key;
        memo_vals_[i] = MemoEntry{};
        ++memo_used_;
        return &memo_vals_[i];
    }

    void memo_grow(std::size_t new_size) {
        std::vector<std::uint64_t> old_keys = std::move(memo_keys_);
        std::vector<MemoEntry> old_vals = std::move(memo_vals_);
        memo_keys_.assign(new_size, 0);
        memo_vals_.assign(new_size, MemoEntry{});
        memo_used_ = 0;
        std::size_t mask = new_size - 1;
        for (std::size_t i = 0; i < old_keys.size(); ++i) {
            if (old_keys[i] == 0) continue;
            std::size_t j = static_cast<std::size_t>(rng::mix(old_keys[i])) & mask;
            while (memo_keys_[j] != 0) j = (j + 1) & mask;
            memo_keys_[j] = old_keys[i];
            memo_vals_[j] = old_vals[i];
            ++memo_used_;
        }
    }

    void memo_update_lb(std::uint64_t key, int lb) {
        MemoEntry* e = memo_insert(key);
        if (e && lb > e->lb) e->lb = static_cast<std::int16_t>(lb);
    }

    void memo_set_exact(std::uint64_t key, std::int16_t value) {
        MemoEntry* e = memo_insert(key);
        if (e) e->exact = value;
    }

    static constexpr std::size_t kMemoSlotCap = 1ULL << 23;

    const Hypergraph& H_;
    int n_, r_;
    BlockMode mode_;
    std::vector<std::uint64_t> edge_vertex_masks_;
    std::unordered_map<std::uint64_t, int> edge_by_vertex_mask_;
    std::uint64_t full_mask_ = 0;
    int s_root_ = 0;

    std::vector<std::uint64_t> memo_keys_;
    std::vector<MemoEntry> memo_vals_;
    std::size_t memo_used_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> choice_;

    std::uint64_t nodes_ = 0;
    std::uint64_t max_nodes_;
    std::chrono::steady_clock::time_point deadline_;
};

// Cheap verified starting partitions (all-blocks mode only).
inline std::vector<Partition> starting_partitions(const Hypergraph& H) {
    std::vector<Partition> out;
    {
        std::vector<Block> trivial;
        for (const Edge& e : H.edges()) {
            std::vector<std::vector<Vertex>> parts;
            for (Vertex v : e) parts.push_back({v});
            trivial.emplace_back(std::move(parts));
        }
        Partition p(H.vertex_count(), H.uniformity(), std::move(trivial), Source::exact);
        p.set_verified(true);
        out.push_back(std::move(p));
    }
    if (H.uniformity() == 2) {
        std::vector<char> chosen(static_cast<std::size_t>(H.vertex_count()) + 1, 0);
        std::vector<char> blocked(static_cast<std::size_t>(H.vertex_count()) + 1, 0);
        for (Vertex v = 1; v <= H.vertex_count(); ++v) {
            if (blocked[static_cast<std::size_t>(v)]) continue;
            chosen[static_cast<std::size_t>(v)] = 1;
            for (const Edge& e : H.edges()) {
                if (e[0] == v) blocked[static_cast<std::size_t>(e[1])] = 1;
                if (e[1] == v) blocked[static_cast<std::size_t>(e[0])] = 1;
            }
        }
        std::vector<Vertex> greedy_set;
        for (Vertex v = 1; v <= H.vertex_count(); ++v)
            if (chosen[static_cast<std::size_t>(v)]) greedy_set.push_back(v);
        out.push_back(star_decomposition(H, greedy_set));
    } else {
        std::vector<Edge> cover;
        for_each_subset(H.vertex_count(), H.uniformity() - 1,
                        [&](const Edge& e) { cover.push_back(e); });
        out.push_back(greedy_turan_decomposition(H, cover).partition);
    }
    return out;
}

}  // namespace detail

// Minimum number of complete r-partite blocks whose product sets exactly
// partition E(H). In nontrivial_only mode blocks must have prefix product at
// least 2; infeasibility is then a first-class outcome, not an error.
inline ExactResult exact_min_partition(const Hypergraph& H, BlockMode mode = BlockMode::all_blocks,
                                       SolveBudget budget = {}) {
    if (H.edge_count() > 64) throw ConfigError("exact solver supports at most 64 edges");
    if (H.vertex_count() > 64) throw ConfigError("exact solver supports at most 64 vertices");

    ExactResult result;
    if (H.edge_count() == 0) {
        result.status = SolveStatus::optimal;
        result.value = 0;
        result.lower_bound = 0;
        result.partition = Partition(H.vertex_count(), H.uniformity(), {}, Source::exact, true);
        return result;
    }

    const int edge_total = static_cast<int>(H.edge_count());

    std::int64_t upper = -1;
    Partition incumbent;
    if (mode == BlockMode::all_blocks) {
        for (Partition& p : detail::starting_partitions(H)) {
            auto count = static_cast<std::int64_t>(p.blocks().size());
            if (upper < 0 || count < upper) {
                upper = count;
                incumbent = std::move(p);
            }
        }
    }

    int k = 1;  // a nonempty edge set needs at least one block
    const int k_cap = mode == BlockMode::nontrivial_only ? (edge_total + 1) / 2 : edge_total;
    std::optional<detail::ExactSolver> solver;
    try {
        solver.emplace(H, mode, budget);  // the root block scan is budgeted too
        if (solver->max_block_size() == 0) {
            // no admissible block at all (possible only in nontrivial mode)
            result.status = SolveStatus::infeasible;
            result.nodes_expanded = solver->nodes();
            return result;
        }
        k = (edge_total + solver->max_block_size() - 1) / solver->max_block_size();
        while (true) {
            if (upper >= 0 && k >= upper) {
                // iterations below k are exhausted, so the incumbent is optimal
                std::vector<Block> blocks = incumbent.blocks();
                result.partition =
                    Partition(H.vertex_count(), H.uniformity(), std::move(blocks), Source::exact, true);
                result.status = SolveStatus::optimal;
                result.value = upper;
                result.lower_bound = upper;
                break;
            }
            if (k > k_cap) throw Error("solver failed to converge below the trivial cap");
            detail::ExactSolver::Res res = solver->solve(solver->full_mask(), k);
            if (res.kind == detail::ExactSolver::Res::Exact) {
                result.partition = Partition(H.vertex_count(), H.uniformity(),
                                             solver->reconstruct(solver->full_mask()), Source::exact);
                VerificationReport report = verify_partition(H, result.partition);
                if (!report.valid) throw Error("solver produced an invalid partition");
                result.partition.set_verified(true);
                result.status = SolveStatus::optimal;
                result.value = res.value;
                result.lower_bound = res.value;
                break;
            }
            if (res.kind == detail::ExactSolver::Res::Infeasible) {
                result.status = SolveStatus::infeasible;
                result.value = -1;
                result.lower_bound = 0;
                break;
            }
            ++k;  // min > k is now certified
        }
    } catch (const detail::BudgetHit&) {
        result.status = SolveStatus::upper_bound_only;
        result.lower_bound = k;  // every allowance below k was exhausted
        result.value = upper;
        if (upper >= 0) {
            std::vector<Block> blocks = incumbent.blocks();
            result.partition =
                Partition(H.vertex_count(), H.uniformity(), std::move(blocks), Source::exact, true);
        }
    }
    result.nodes_expanded = solver ? solver->nodes() : 0;
    return result;
}

}  // namespace partite
