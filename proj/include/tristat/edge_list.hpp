#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tristat/graph.hpp"

namespace tristat {

namespace detail {

inline std::optional<std::uint64_t> parse_u64(std::string_view tok) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

inline bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_ws(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_ws(line[j])) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace detail

/// Read a SNAP-style edge list: '#'-prefixed comment lines are ignored, data
/// lines carry two whitespace-separated non-negative integer node ids
/// (trailing integer columns, e.g. CAIDA relationship tags, are ignored).
/// Input arcs are symmetrized, self-loops and parallel edges removed, and
/// ids compacted order-preservingly to 0..N-1 with the original ids kept.
///
/// One extension to the plain format: a comment "# Nodes: <n> Edges: <e>"
/// written by write_edge_list declares the node universe. When every data id
/// is < n the ids are taken as already dense, so isolated nodes survive a
/// write/load round trip. Files with sparse ids fall back to compaction.
inline Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_arcs;
    std::optional<std::uint64_t> declared_nodes;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t max_id = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
        std::size_t first = 0;
        while (first < sv.size() && detail::is_ws(sv[first])) ++first;
        if (first == sv.size()) continue;  // blank
        if (sv[first] == '#') {
            auto toks = detail::split_ws(sv.substr(first + 1));
            if (!declared_nodes && toks.size() >= 4 && toks[0] == "Nodes:" && toks[2] == "Edges:")
                declared_nodes = detail::parse_u64(toks[1]);
            continue;
        }
        auto toks = detail::split_ws(sv);
        if (toks.size() < 2) throw ParseError(line_no, "expected two node ids");
        auto u = detail::parse_u64(toks[0]);
        auto v = detail::parse_u64(toks[1]);
        if (!u || !v) throw ParseError(line_no, "non-integer token");
        for (std::size_t k = 2; k < toks.size(); ++k) {
            std::string_view extra = toks[k];
            if (!extra.empty() && extra.front() == '-') extra.remove_prefix(1);  // CAIDA tags
            if (!detail::parse_u64(extra)) throw ParseError(line_no, "non-integer token");
        }
        raw_arcs.emplace_back(*u, *v);
        max_id = std::max({max_id, *u, *v});
    }
    if (raw_arcs.empty() && !declared_nodes) return Graph(0, {});  // edgeless input

    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(raw_arcs.size());

    if (declared_nodes && max_id < *declared_nodes && *declared_nodes <= 0xffffffffULL) {
        // Dense universe declared by the header: identity mapping.
        for (const auto& [u, v] : raw_arcs)
            arcs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        return Graph(static_cast<NodeId>(*declared_nodes), std::move(arcs));
    }

    std::vector<std::uint64_t> ids;
    ids.reserve(raw_arcs.size() * 2);
    for (const auto& [u, v] : raw_arcs) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > 0xffffffffULL) throw InputError("more than 2^32 distinct node ids");

    auto rank = [&ids](std::uint64_t id) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& [u, v] : raw_arcs) arcs.emplace_back(rank(u), rank(v));
    return Graph(static_cast<NodeId>(ids.size()), std::move(arcs), std::move(ids));
}

inline Graph load_edge_list_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return load_edge_list(in);
}

/// Emit "# Nodes: N Edges: E" then one "u v" line per undirected edge, u < v,
/// in ascending order, using dense ids. Byte-deterministic.
inline void write_edge_list(const Graph& g, std::ostream& out) {
    out << "# Nodes: " << g.node_count() << " Edges: " << g.edge_count() << '\n';
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
}

}  // namespace tristat
