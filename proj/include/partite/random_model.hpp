// random_model.hpp - seeded samplers for the binomial random hypergraph model.
#pragma once

#include <cstdint>
#include <string>

#include "partite/hypergraph.hpp"

namespace partite {

namespace rng {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based stream: the value for (seed, lane, counter) is a pure
// function of its key, so evaluation order and worker count never matter.
inline std::uint64_t keyed(std::uint64_t seed, std::uint64_t lane, std::uint64_t counter) {
    return mix(mix(mix(seed) ^ lane) ^ counter);
}

// Tiny sequential generator for places that want a stream (samplers, local
// search). Deterministic given the seed; never used for edge decisions.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // uniform in [0, bound); bound >= 1
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace rng

// ---------------------------------------------------------------------------
// Edge probability: exact decimal string or rational, compared against a
// 64-bit threshold fixed once per configuration. An r-set with stream value
// u becomes an edge iff u < floor(p * 2^64) (always, when p = 1). This makes
// cross-platform runs agree bit for bit.
// ---------------------------------------------------------------------------

class EdgeProbability {
public:
    EdgeProbability() : text_("0"), threshold_(0), always_(false) {}

    static EdgeProbability parse(const std::string& text) {
        std::size_t slash = text.find('/');
        if (slash != std::string::npos)
            return from_ratio(parse_u64(text.substr(0, slash), text),
                              parse_u64(text.substr(slash + 1), text), text);
        return from_decimal(text);
    }

    const std::string& text() const { return text_; }
    bool always() const { return always_; }
    std::uint64_t threshold() const { return threshold_; }

    bool decide(std::uint64_t u) const { return always_ || u < threshold_; }

    friend bool operator==(const EdgeProbability& a, const EdgeProbability& b) {
        return a.always_ == b.always_ && a.threshold_ == b.threshold_;
    }

private:
    EdgeProbability(std::string text, std::uint64_t threshold, bool always)
        : text_(std::move(text)), threshold_(threshold), always_(always) {}

    static std::uint64_t parse_u64(const std::string& s, const std::string& full) {
        if (s.empty() || s.size() > 18) throw ConfigError("bad probability: " + full);
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw ConfigError("bad probability: " + full);
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return v;
    }

    static EdgeProbability from_ratio(std::uint64_t num, std::uint64_t den, const std::string& text) {
        if (den == 0 || num > den) throw ConfigError("probability outside [0,1]: " + text);
        if (num == den) return EdgeProbability(text, 0, true);
        std::uint64_t thr =
            static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) << 64) / den);
        return EdgeProbability(text, thr, false);
    }

    static EdgeProbability from_decimal(const std::string& text) {
        std::size_t dot = text.find('.');
        std::string ip = dot == std::string::npos ? text : text.substr(0, dot);
        std::string fp = dot == std::string::npos ? "" : text.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw ConfigError("bad probability: " + text);
        std::uint64_t whole = ip.empty() ? 0 : parse_u64(ip, text);
        std::uint64_t frac = fp.empty() ? 0 : parse_u64(fp, text);
        if (whole > 1 || (whole == 1 && frac != 0)) throw ConfigError("probability outside [0,1]: " + text);
        if (whole == 1) return EdgeProbability(text, 0, true);
        if (frac == 0) return EdgeProbability(text, 0, false);
        std::uint64_t pow10 = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) pow10 *= 10;
        std::uint64_t thr =
            static_cast<std::uint64_t>((static_cast<unsigned __int128>(frac) << 64) / pow10);
        return EdgeProbability(text, thr, false);
    }

    std::string text_;
    std::uint64_t threshold_;
    bool always_;
};

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SampleConfig {
    int n = 0;
    int r = 2;
    EdgeProbability p;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
};

// Each of the C(n,r) canonical r-sets is an edge independently with
// probability p. The per-set decision is keyed by (seed, trial_index,
// lexicographic rank of the set).
inline Hypergraph sample_hypergraph(const SampleConfig& cfg) {
    if (cfg.r < 2) throw ConfigError("uniformity must be at least 2");
    if (cfg.n < 0) throw ConfigError("vertex count must be nonnegative");
    std::vector<Edge> edges;
    std::uint64_t counter = 0;
    for_each_subset(cfg.n, cfg.r, [&](const Edge& e) {
        if (cfg.p.decide(rng::keyed(cfg.seed, cfg.trial_index, counter))) edges.push_back(e);
        ++counter;
    });
    return Hypergraph(cfg.n, cfg.r, std::move(edges));
}

inline Hypergraph complete_hypergraph(int n, int r) {
    if (r < 2) throw ConfigError("uniformity must be at least 2");
    if (n < 0) throw ConfigError("vertex count must be nonnegative");
    std::vector<Edge> edges;
    for_each_subset(n, r, [&](const Edge& e) { edges.push_back(e); });
    return Hypergraph(n, r, std::move(edges));
}

}  // namespace partite
