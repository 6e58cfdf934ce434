// io.hpp - hypergraph text files and partition documents.
//
// Hypergraph format (UTF-8, LF): first line "n r"; each following nonempty
// line is one edge as r ascending 1-based labels separated by single spaces;
// lines starting with '#' are comments. Readers accept edges in any order
// but reject duplicates and non-ascending lines; writers emit canonical
// (lexicographic) order.
//
// Partition format: a JSON document {n, r, source, verified, blocks} where
// blocks is a list of blocks, each block a list of its vertex parts in
// canonical order. The writer's byte layout is fixed (golden-file tested).
#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "partite/blocks.hpp"
#include "partite/hypergraph.hpp"

namespace partite {

// ---------------------------------------------------------------------------
// Hypergraph text format
// ---------------------------------------------------------------------------

inline Hypergraph read_hypergraph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    int n = -1, r = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n >> r)) throw ParseError("malformed header, expected 'n r'", line_no);
            std::string rest;
            if (fields >> rest) throw ParseError("trailing data after header", line_no);
            if (n < 0 || r < 2) throw ParseError("header requires n >= 0 and r >= 2", line_no);
            continue;
        }
        Edge edge;
        int v;
        while (fields >> v) edge.push_back(v);
        if (!fields.eof()) throw ParseError("non-integer vertex label", line_no);
        if (static_cast<int>(edge.size()) != r)
            throw ParseError("edge has " + std::to_string(edge.size()) + " vertices, expected " +
                                 std::to_string(r),
                             line_no);
        for (std::size_t i = 0; i < edge.size(); ++i) {
            if (edge[i] < 1 || edge[i] > n)
                throw ParseError("vertex label " + std::to_string(edge[i]) + " outside 1.." +
                                     std::to_string(n),
                                 line_no);
            if (i > 0 && edge[i] <= edge[i - 1])
                throw ParseError("vertices must be strictly ascending", line_no);
        }
        for (const Edge& seen : edges)
            if (seen == edge) throw ParseError("duplicate edge", line_no);
        edges.push_back(std::move(edge));
    }
    if (n < 0) throw ParseError("missing header", line_no);
    return Hypergraph(n, r, std::move(edges));
}

inline void write_hypergraph(const Hypergraph& H, std::ostream& out) {
    out << H.vertex_count() << ' ' << H.uniformity() << '\n';
    for (const Edge& e : H.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
}

inline std::string hypergraph_to_string(const Hypergraph& H) {
    std::ostringstream out;
    write_hypergraph(H, out);
    return out.str();
}

inline Hypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return read_hypergraph(in);
}

inline void write_hypergraph_file(const Hypergraph& H, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    write_hypergraph(H, out);
}

// ---------------------------------------------------------------------------
// Partition documents
// ---------------------------------------------------------------------------

// Hand-rolled serializer: the byte layout is part of the format.
inline void write_partition(const Partition& part, std::ostream& out) {
    out << "{\n";
    out << "  \"n\": " << part.n() << ",\n";
    out << "  \"r\": " << part.r() << ",\n";
    out << "  \"source\": \"" << to_string(part.source()) << "\",\n";
    out << "  \"verified\": " << (part.verified() ? "true" : "false") << ",\n";
    if (part.blocks().empty()) {
        out << "  \"blocks\": []\n";
    } else {
        out << "  \"blocks\": [\n";
        for (std::size_t bi = 0; bi < part.blocks().size(); ++bi) {
            out << "    [";
            const Block& b = part.blocks()[bi];
            for (std::size_t pi = 0; pi < b.parts().size(); ++pi) {
                if (pi) out << ", ";
                out << '[';
                const auto& p = b.parts()[pi];
                for (std::size_t vi = 0; vi < p.size(); ++vi) {
                    if (vi) out << ", ";
                    out << p[vi];
                }
                out << ']';
            }
            out << (bi + 1 < part.blocks().size() ? "],\n" : "]\n");
        }
        out << "  ]\n";
    }
    out << "}\n";
}

inline std::string partition_to_string(const Partition& part) {
    std::ostringstream out;
    write_partition(part, out);
    return out.str();
}

inline Partition read_partition(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    try {
        if (!doc.is_object()) throw ParseError("top-level value must be an object", 0);
        for (const char* key : {"n", "r", "source", "blocks"})
            if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
        int n = doc.at("n").get<int>();
        int r = doc.at("r").get<int>();
        Source source = source_from_string(doc.at("source").get<std::string>());
        bool verified = doc.value("verified", false);
        std::vector<Block> blocks;
        for (const auto& jblock : doc.at("blocks")) {
            std::vector<std::vector<Vertex>> parts;
            for (const auto& jpart : jblock) parts.push_back(jpart.get<std::vector<Vertex>>());
            blocks.emplace_back(std::move(parts));
        }
        return Partition(n, r, std::move(blocks), source, verified);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), 0);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad partition document: ") + e.what(), 0);
    }
}

inline Partition read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return read_partition(in);
}

inline void write_partition_file(const Partition& part, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    write_partition(part, out);
}

}  // namespace partite
