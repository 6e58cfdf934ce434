// hypergraph.hpp - r-uniform hypergraphs on vertex set {1..n}, canonical edges.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace partite {

using Vertex = int;
using Edge = std::vector<Vertex>;  // canonical: strictly ascending, length = uniformity

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedEdge : Error {
    using Error::Error;
};

struct MalformedBlock : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Raised by the greedy decomposition when an edge contains no cover member.
struct CoverGap : Error {
    Edge witness;
    CoverGap(const std::string& msg, Edge w) : Error(msg), witness(std::move(w)) {}
};

// Raised by the star decomposition when the given set spans an edge.
struct NotIndependent : Error {
    Edge witness;
    NotIndependent(const std::string& msg, Edge w) : Error(msg), witness(std::move(w)) {}
};

struct ParseError : Error {
    std::size_t line;
    ParseError(const std::string& msg, std::size_t line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// ---------------------------------------------------------------------------
// Small combinatorial helpers
// ---------------------------------------------------------------------------

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        unsigned __int128 t = static_cast<unsigned __int128>(result) * (n - k + i);
        t /= i;  // exact: C(n-k+i, i) = C(n-k+i-1, i-1) * (n-k+i) / i
        if (t > UINT64_MAX) throw OutOfRange("binomial overflow");
        result = static_cast<std::uint64_t>(t);
    }
    return result;
}

// Returns the vertices sorted ascending; rejects duplicates and bad labels.
inline Edge canonicalize_edge(Edge vertices, int r, std::optional<int> n = std::nullopt) {
    if (static_cast<int>(vertices.size()) != r)
        throw MalformedEdge("edge has " + std::to_string(vertices.size()) + " vertices, expected " +
                            std::to_string(r));
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 1) throw OutOfRange("vertex label " + std::to_string(vertices[i]) + " below 1");
        if (n && vertices[i] > *n)
            throw OutOfRange("vertex label " + std::to_string(vertices[i]) + " above n=" + std::to_string(*n));
        if (i > 0 && vertices[i] == vertices[i - 1])
            throw MalformedEdge("duplicate vertex " + std::to_string(vertices[i]) + " in edge");
    }
    return vertices;
}

// Visits all k-subsets of {1..n} as sorted vectors, in lexicographic order.
template <typename Fn>
inline void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    Edge cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        fn(const_cast<const Edge&>(cur));
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Position of a sorted k-subset within the lexicographic enumeration above.
inline std::uint64_t subset_lex_rank(const Edge& s, int n) {
    std::uint64_t rank = 0;
    int k = static_cast<int>(s.size());
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < s[static_cast<std::size_t>(i)]; ++v)
            rank += binomial(static_cast<std::uint64_t>(n - v), static_cast<std::uint64_t>(k - 1 - i));
        prev = s[static_cast<std::size_t>(i)];
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Hypergraph
// ---------------------------------------------------------------------------

// Immutable r-uniform hypergraph. Edges are kept deduplicated and in
// lexicographic order; membership queries are exact set lookups.
class Hypergraph {
public:
    Hypergraph() : n_(0), r_(2) {}

    Hypergraph(int n, int r, std::vector<Edge> edges = {}) : n_(n), r_(r) {
        if (r < 2) throw ConfigError("uniformity must be at least 2");
        if (n < 0) throw ConfigError("vertex count must be nonnegative");
        edges_.reserve(edges.size());
        for (auto& e : edges) edges_.push_back(canonicalize_edge(std::move(e), r, n));
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    int vertex_count() const { return n_; }
    int uniformity() const { return r_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    // `e` must be canonical (ascending).
    bool has_edge(const Edge& e) const {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    std::optional<std::size_t> edge_index(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.r_ == b.r_ && a.edges_ == b.edges_;
    }

private:
    int n_;
    int r_;
    std::vector<Edge> edges_;
};

}  // namespace partite
