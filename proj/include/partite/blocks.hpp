// blocks.hpp - complete r-partite blocks, prefixes, partitions and their checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "partite/hypergraph.hpp"

namespace partite {

namespace detail {

// Canonical part order: by size, then by elements. Disjoint parts of equal
// size always differ in their smallest element, so this is a total order.
inline bool part_less(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Sorts each part, validates nonemptiness/labels/pairwise disjointness, and
// puts the parts into canonical order.
inline std::vector<std::vector<Vertex>> canonicalize_parts(std::vector<std::vector<Vertex>> parts) {
    for (auto& part : parts) {
        if (part.empty()) throw MalformedBlock("empty part");
        std::sort(part.begin(), part.end());
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (part[i] < 1) throw OutOfRange("vertex label " + std::to_string(part[i]) + " below 1");
            if (i > 0 && part[i] == part[i - 1])
                throw MalformedBlock("repeated vertex " + std::to_string(part[i]) + " within a part");
        }
    }
    std::vector<Vertex> all;
    for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i] == all[i - 1])
            throw MalformedBlock("vertex " + std::to_string(all[i]) + " appears in two parts");
    std::sort(parts.begin(), parts.end(), part_less);
    return parts;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Prefix: the r-1 smallest parts of a block, size-sorted.
// ---------------------------------------------------------------------------

class Prefix {
public:
    explicit Prefix(std::vector<std::vector<Vertex>> parts)
        : parts_(detail::canonicalize_parts(std::move(parts))) {
        if (parts_.empty()) throw MalformedBlock("prefix needs at least one part");
    }

    const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
    std::size_t part_count() const { return parts_.size(); }

    bool contains_vertex(Vertex v) const {
        for (const auto& part : parts_)
            if (std::binary_search(part.begin(), part.end(), v)) return true;
        return false;
    }

    friend bool operator==(const Prefix& a, const Prefix& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Prefix& a, const Prefix& b) { return a.parts_ < b.parts_; }

private:
    std::vector<std::vector<Vertex>> parts_;
};

struct PrefixProduct {
    std::uint64_t product;
    bool trivial;  // product == 1, i.e. all prefix parts are singletons
};

inline PrefixProduct prefix_product(const Prefix& p) {
    std::uint64_t product = 1;
    for (const auto& part : p.parts()) product *= part.size();
    return {product, product == 1};
}

// ---------------------------------------------------------------------------
// Block: a prefix plus a last part; its product set is one complete
// r-partite edge family.
// ---------------------------------------------------------------------------

class Block {
public:
    // Canonicalizes the whole part list: the prefix becomes the r-1 smallest
    // parts, the last part the largest.
    explicit Block(std::vector<std::vector<Vertex>> parts)
        : parts_(detail::canonicalize_parts(std::move(parts))) {
        if (parts_.size() < 2) throw MalformedBlock("block needs at least two parts");
    }

    Block(const Prefix& prefix, std::vector<Vertex> last)
        : Block(assemble(prefix, std::move(last))) {}

    const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
    std::size_t part_count() const { return parts_.size(); }

    Prefix prefix() const {
        return Prefix(std::vector<std::vector<Vertex>>(parts_.begin(), parts_.end() - 1));
    }
    const std::vector<Vertex>& last_part() const { return parts_.back(); }

    std::uint64_t product_size() const {
        std::uint64_t size = 1;
        for (const auto& part : parts_) size *= part.size();
        return size;
    }

    bool is_trivial() const {
        // trivial: every part except the largest is a singleton
        for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
            if (parts_[i].size() > 1) return false;
        return true;
    }

    // Visits every member of the product set as a canonical edge.
    template <typename Fn>
    void for_each_product_edge(Fn&& fn) const {
        Edge scratch(parts_.size());
        visit_product(0, scratch, fn);
    }

    std::vector<Edge> product_edges() const {
        std::vector<Edge> out;
        out.reserve(product_size());
        for_each_product_edge([&](const Edge& e) { out.push_back(e); });
        return out;
    }

    friend bool operator==(const Block& a, const Block& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Block& a, const Block& b) { return a.parts_ < b.parts_; }

private:
    static std::vector<std::vector<Vertex>> assemble(const Prefix& prefix, std::vector<Vertex> last) {
        std::vector<std::vector<Vertex>> parts = prefix.parts();
        parts.push_back(std::move(last));
        return parts;
    }

    template <typename Fn>
    void visit_product(std::size_t depth, Edge& scratch, Fn&& fn) const {
        if (depth == parts_.size()) {
            Edge e = scratch;
            std::sort(e.begin(), e.end());
            fn(const_cast<const Edge&>(e));
            return;
        }
        for (Vertex v : parts_[depth]) {
            scratch[depth] = v;
            visit_product(depth + 1, scratch, fn);
        }
    }

    std::vector<std::vector<Vertex>> parts_;
};

// ---------------------------------------------------------------------------
// PrefixSet: list of prefixes; duplicates only when explicitly allowed.
// ---------------------------------------------------------------------------

class PrefixSet {
public:
    static PrefixSet of(std::vector<Prefix> members, bool allow_duplicates = false) {
        if (!allow_duplicates) {
            std::vector<Prefix> sorted = members;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 1; i < sorted.size(); ++i)
                if (sorted[i] == sorted[i - 1])
                    throw ConfigError("duplicate prefix in prefix set (pass allow_duplicates to permit)");
        }
        return PrefixSet(std::move(members), allow_duplicates);
    }

    const std::vector<Prefix>& members() const { return members_; }
    bool allows_duplicates() const { return allow_duplicates_; }

private:
    PrefixSet(std::vector<Prefix> members, bool allow_duplicates)
        : members_(std::move(members)), allow_duplicates_(allow_duplicates) {}

    std::vector<Prefix> members_;
    bool allow_duplicates_;
};

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

enum class Source { greedy, star, exact, external };

inline std::string to_string(Source s) {
    switch (s) {
        case Source::greedy: return "greedy";
        case Source::star: return "star";
        case Source::exact: return "exact";
        case Source::external: return "external";
    }
    return "external";
}

inline Source source_from_string(const std::string& s) {
    if (s == "greedy") return Source::greedy;
    if (s == "star") return Source::star;
    if (s == "exact") return Source::exact;
    if (s == "external") return Source::external;
    throw ConfigError("unknown partition source tag: " + s);
}

// An ordered list of blocks claimed to partition the edge set of an
// r-uniform hypergraph on n vertices. Validity is established by
// verify_partition, not assumed.
class Partition {
public:
    Partition() : n_(0), r_(2), source_(Source::external), verified_(false) {}

    Partition(int n, int r, std::vector<Block> blocks, Source source, bool verified = false)
        : n_(n), r_(r), blocks_(std::move(blocks)), source_(source), verified_(verified) {
        if (r < 2) throw ConfigError("uniformity must be at least 2");
        for (const auto& b : blocks_) {
            if (static_cast<int>(b.part_count()) != r)
                throw MalformedBlock("block has " + std::to_string(b.part_count()) +
                                     " parts, expected " + std::to_string(r));
            for (const auto& part : b.parts())
                for (Vertex v : part)
                    if (v > n) throw OutOfRange("vertex label " + std::to_string(v) + " above n");
        }
    }

    int n() const { return n_; }
    int r() const { return r_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    Source source() const { return source_; }
    bool verified() const { return verified_; }
    void set_verified(bool v) { verified_ = v; }

    struct Stats {
        std::size_t block_count;
        std::size_t trivial_count;
        std::size_t nontrivial_count;
    };

    Stats stats() const {
        Stats s{blocks_.size(), 0, 0};
        for (const auto& b : blocks_)
            (b.is_trivial() ? s.trivial_count : s.nontrivial_count)++;
        return s;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.r_ == b.r_ && a.blocks_ == b.blocks_ && a.source_ == b.source_ &&
               a.verified_ == b.verified_;
    }

private:
    int n_;
    int r_;
    std::vector<Block> blocks_;
    Source source_;
    bool verified_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

namespace detail {

// all product members of parts[depth..] are edges; aborts on first miss
inline bool products_are_edges(const Hypergraph& H, const std::vector<std::vector<Vertex>>& parts,
                               std::size_t depth, Edge& scratch) {
    if (depth == parts.size()) {
        Edge e = scratch;
        std::sort(e.begin(), e.end());
        return H.has_edge(e);
    }
    for (Vertex v : parts[depth]) {
        scratch[depth] = v;
        if (!products_are_edges(H, parts, depth + 1, scratch)) return false;
    }
    return true;
}

}  // namespace detail

// True iff every member of the block's product set is an edge of H.
inline bool is_complete_block(const Hypergraph& H, const Block& b) {
    if (static_cast<int>(b.part_count()) != H.uniformity())
        throw MalformedBlock("block uniformity does not match hypergraph");
    Edge scratch(b.part_count());
    return detail::products_are_edges(H, b.parts(), 0, scratch);
}

// V(H,P): vertices v outside P such that every product member of P x {v}
// is an edge. Any nonempty subset of the result is a valid last part.
inline std::vector<Vertex> extension_set(const Hypergraph& H, const Prefix& p) {
    if (static_cast<int>(p.part_count()) != H.uniformity() - 1)
        throw MalformedBlock("prefix has " + std::to_string(p.part_count()) + " parts, expected " +
                             std::to_string(H.uniformity() - 1));
    std::vector<Vertex> out;
    std::vector<std::vector<Vertex>> parts = p.parts();
    parts.push_back({0});
    Edge scratch(parts.size());
    for (Vertex v = 1; v <= H.vertex_count(); ++v) {
        if (p.contains_vertex(v)) continue;
        parts.back()[0] = v;
        if (detail::products_are_edges(H, parts, 0, scratch)) out.push_back(v);
    }
    return out;
}

struct CoverageCount {
    std::uint64_t exactly_once;
    std::uint64_t at_least_once;
    std::uint64_t upper_bound_sum;  // sum over prefixes of |V(H,P)| * prefix product
};

// Coverage multiplicities of H's edges by the prefix-generated block family
// P x V(H,P), P ranging over the set.
inline CoverageCount coverage_count(const Hypergraph& H, const PrefixSet& ps) {
    if (ps.members().empty()) throw ConfigError("coverage_count requires a nonempty prefix set");
    std::vector<std::uint32_t> multiplicity(H.edge_count(), 0);
    std::uint64_t upper = 0;
    for (const Prefix& p : ps.members()) {
        std::vector<Vertex> ext = extension_set(H, p);
        if (ext.empty()) continue;
        upper += static_cast<std::uint64_t>(ext.size()) * prefix_product(p).product;
        Block generated(p, ext);
        generated.for_each_product_edge([&](const Edge& e) {
            auto idx = H.edge_index(e);
            // all product members are edges by construction of the extension set
            if (idx) multiplicity[*idx]++;
        });
    }
    CoverageCount out{0, 0, upper};
    for (std::uint32_t m : multiplicity) {
        if (m >= 1) out.at_least_once++;
        if (m == 1) out.exactly_once++;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partition verification
// ---------------------------------------------------------------------------

struct Violation {
    enum class Kind { overlap, non_edge, uncovered, malformed_block };
    Kind kind;
    Edge edge;               // witness edge, when applicable
    std::size_t block_index; // offending block, or npos for uncovered edges

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

inline const char* to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::overlap: return "overlap";
        case Violation::Kind::non_edge: return "non-edge";
        case Violation::Kind::uncovered: return "uncovered";
        case Violation::Kind::malformed_block: return "malformed-block";
    }
    return "?";
}

struct VerificationReport {
    bool valid;
    std::vector<Violation> violations;
};

// Valid iff the block product sets are subsets of E(H), pairwise disjoint,
// and their union is exactly E(H). Failures are reported, never thrown.
inline VerificationReport verify_partition(const Hypergraph& H, const Partition& part) {
    VerificationReport report{true, {}};
    std::vector<std::uint32_t> multiplicity(H.edge_count(), 0);
    for (std::size_t bi = 0; bi < part.blocks().size(); ++bi) {
        const Block& b = part.blocks()[bi];
        bool shaped = static_cast<int>(b.part_count()) == H.uniformity();
        if (shaped) {
            for (const auto& p : b.parts())
                for (Vertex v : p)
                    if (v < 1 || v > H.vertex_count()) shaped = false;
        }
        if (!shaped) {
            report.violations.push_back({Violation::Kind::malformed_block, {}, bi});
            continue;
        }
        b.for_each_product_edge([&](const Edge& e) {
            auto idx = H.edge_index(e);
            if (!idx) {
                report.violations.push_back({Violation::Kind::non_edge, e, bi});
                return;
            }
            if (++multiplicity[*idx] == 2)
                report.violations.push_back({Violation::Kind::overlap, e, bi});
        });
    }
    for (std::size_t i = 0; i < multiplicity.size(); ++i)
        if (multiplicity[i] == 0)
            report.violations.push_back({Violation::Kind::uncovered, H.edges()[i], Violation::npos});
    report.valid = report.violations.empty();
    return report;
}

}  // namespace partite
