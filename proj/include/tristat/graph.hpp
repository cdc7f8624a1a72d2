#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tristat/errors.hpp"

namespace tristat {

using NodeId = std::uint32_t;

/// Immutable simple undirected graph in sorted-adjacency (CSR) form.
///
/// Construction symmetrizes the given arcs, removes self-loops and parallel
/// edges, and stores each neighbor list strictly increasing. Node ids are
/// dense 0..N-1; when the graph was loaded from a file with sparse ids, the
/// original ids are kept in an id map (see original_ids()). After
/// construction the graph never changes and is safe to share across threads.
class Graph {
public:
    Graph() = default;

    /// Build from a list of arcs over the node universe 0..n-1. Every arc
    /// (u,v) becomes the undirected edge {u,v}; loops and duplicates vanish.
    Graph(NodeId n, std::vector<std::pair<NodeId, NodeId>> arcs,
          std::vector<std::uint64_t> original_ids = {})
        : node_count_(n), original_ids_(std::move(original_ids)) {
        const std::size_t in = arcs.size();
        arcs.reserve(in * 2);
        for (std::size_t i = 0; i < in; ++i) {
            auto [u, v] = arcs[i];
            if (u >= n || v >= n) throw InternalError("arc endpoint out of range");
            arcs.emplace_back(v, u);
        }
        std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

        offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        neighbors_.resize(arcs.size());
        for (const auto& [u, v] : arcs) ++offsets_[u + 1];
        for (NodeId u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];
        for (std::size_t i = 0; i < arcs.size(); ++i) neighbors_[i] = arcs[i].second;
        edge_count_ = arcs.size() / 2;
    }

    NodeId node_count() const { return node_count_; }
    std::uint64_t edge_count() const { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
    }

    NodeId degree(NodeId u) const { return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]); }

    NodeId max_degree() const {
        NodeId m = 0;
        for (NodeId u = 0; u < node_count_; ++u) m = std::max(m, degree(u));
        return m;
    }

    bool has_edge(NodeId u, NodeId v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// Dense id -> id in the source file. Empty means identity.
    const std::vector<std::uint64_t>& original_ids() const { return original_ids_; }

    std::uint64_t original_id(NodeId u) const {
        return original_ids_.empty() ? u : original_ids_[u];
    }

    /// Structural equality; the original-id map is reporting metadata and
    /// does not participate.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.node_count_ == b.node_count_ && a.offsets_ == b.offsets_ &&
               a.neighbors_ == b.neighbors_;
    }

private:
    NodeId node_count_ = 0;
    std::uint64_t edge_count_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<NodeId> neighbors_;
    std::vector<std::uint64_t> original_ids_;
};

struct DegreeHistogram {
    // (degree, node count), ascending by degree, covering every occurring degree.
    std::vector<std::pair<NodeId, std::uint64_t>> bins;
};

inline DegreeHistogram degree_histogram(const Graph& g) {
    std::vector<std::pair<NodeId, std::uint64_t>> bins;
    std::vector<NodeId> degs(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) degs[u] = g.degree(u);
    std::sort(degs.begin(), degs.end());
    for (std::size_t i = 0; i < degs.size();) {
        std::size_t j = i;
        while (j < degs.size() && degs[j] == degs[i]) ++j;
        bins.emplace_back(degs[i], j - i);
        i = j;
    }
    return {std::move(bins)};
}

inline double density(const Graph& g) {
    if (g.node_count() == 0) throw InputError("density undefined for an empty graph");
    return static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

/// Check every Graph invariant; throws InternalError naming the violation.
inline void validate_graph(const Graph& g) {
    std::uint64_t degree_sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto nb = g.neighbors(u);
        degree_sum += nb.size();
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] == u) throw InternalError("self-loop at node " + std::to_string(u));
            if (nb[i] >= g.node_count()) throw InternalError("neighbor id out of range");
            if (i > 0 && nb[i] <= nb[i - 1])
                throw InternalError("adjacency of node " + std::to_string(u) +
                                    " not strictly increasing");
            if (!g.has_edge(nb[i], u))
                throw InternalError("asymmetric edge " + std::to_string(u) + "-" +
                                    std::to_string(nb[i]));
        }
    }
    if (degree_sum != 2 * g.edge_count()) throw InternalError("degree sum != 2E");
}

}  // namespace tristat
