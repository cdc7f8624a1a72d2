#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "tristat/errors.hpp"
#include "tristat/graph.hpp"

namespace tristat {

/// Sorted vertex-degree triple of one triangle.
struct DegreeTriple {
    NodeId d_min, d_mid, d_max;

    friend auto operator<=>(const DegreeTriple&, const DegreeTriple&) = default;
};

inline DegreeTriple make_degree_triple(NodeId a, NodeId b, NodeId c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return {a, b, c};
}

inline std::uint64_t wedges_at(NodeId degree) {
    return static_cast<std::uint64_t>(degree) * (degree - 1) / 2;
}

/// Total wedge count, sum over nodes of (d choose 2).
inline std::uint64_t count_wedges(const Graph& g) {
    std::uint64_t w = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) w += wedges_at(g.degree(u));
    return w;
}

namespace detail {

// Degree-ordered orientation: every edge points from lower (degree, id) to
// higher, so each triangle has a unique source vertex and a merge over two
// out-lists finds it exactly once. Out-lists live in rank space and are
// sorted, which keeps the intersection a linear two-pointer walk.
struct OrientedAdjacency {
    std::vector<NodeId> node_of_rank;
    std::vector<NodeId> degree_of_node;
    std::vector<std::uint64_t> offsets;
    std::vector<NodeId> targets;  // rank ids, ascending per source

    explicit OrientedAdjacency(const Graph& g) {
        const NodeId n = g.node_count();
        node_of_rank.resize(n);
        degree_of_node.resize(n);
        for (NodeId u = 0; u < n; ++u) {
            node_of_rank[u] = u;
            degree_of_node[u] = g.degree(u);
        }
        std::sort(node_of_rank.begin(), node_of_rank.end(), [&](NodeId a, NodeId b) {
            return std::pair(degree_of_node[a], a) < std::pair(degree_of_node[b], b);
        });
        std::vector<NodeId> rank_of_node(n);
        for (NodeId r = 0; r < n; ++r) rank_of_node[node_of_rank[r]] = r;

        offsets.assign(static_cast<std::size_t>(n) + 1, 0);
        for (NodeId r = 0; r < n; ++r) {
            for (NodeId v : g.neighbors(node_of_rank[r]))
                if (rank_of_node[v] > r) ++offsets[r + 1];
        }
        for (NodeId r = 0; r < n; ++r) offsets[r + 1] += offsets[r];
        targets.resize(offsets[n]);
        std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
        for (NodeId r = 0; r < n; ++r) {
            for (NodeId v : g.neighbors(node_of_rank[r])) {
                NodeId rv = rank_of_node[v];
                if (rv > r) targets[fill[r]++] = rv;
            }
        }
        for (NodeId r = 0; r < n; ++r)
            std::sort(targets.begin() + offsets[r], targets.begin() + offsets[r + 1]);
    }

    std::span<const NodeId> out(NodeId rank) const {
        return {targets.data() + offsets[rank], targets.data() + offsets[rank + 1]};
    }

    // Emit every triangle whose lowest-ranked vertex is `ru`.
    template <typename Emit>
    void triangles_from(NodeId ru, Emit&& emit) const {
        auto a = out(ru);
        for (NodeId rv : a) {
            auto b = out(rv);
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) {
                    ++i;
                } else if (b[j] < a[i]) {
                    ++j;
                } else {
                    emit(node_of_rank[ru], node_of_rank[rv], node_of_rank[a[i]]);
                    ++i;
                    ++j;
                }
            }
        }
    }
};

}  // namespace detail

/// Stream every triangle exactly once to sink(u, v, w, degree_triple).
/// Single-threaded; emission order is deterministic but unspecified.
template <typename Sink>
void for_each_triangle(const Graph& g, Sink&& sink) {
    detail::OrientedAdjacency oa(g);
    for (NodeId r = 0; r < g.node_count(); ++r) {
        oa.triangles_from(r, [&](NodeId u, NodeId v, NodeId w) {
            sink(u, v, w,
                 make_degree_triple(oa.degree_of_node[u], oa.degree_of_node[v],
                                    oa.degree_of_node[w]));
        });
    }
}

template <typename Tally>
struct CensusResult {
    std::uint64_t total = 0;           // T
    std::vector<std::uint64_t> per_node;  // t_j, sums to 3T
    Tally tally;
};

/// Enumerate all triangles, accumulating the total count, per-node counts and
/// a degree-triple tally. Work is partitioned across `workers` threads with
/// per-worker aggregates merged afterward; every merge is an exact integer
/// operation, so the result is identical for any worker count. A `cap` aborts
/// enumeration with TriangleLimitExceeded once the running total passes it.
///
/// Tally requirements: default-constructible, add(DegreeTriple),
/// merge(Tally&&).
template <typename Tally>
CensusResult<Tally> triangle_census(const Graph& g, unsigned workers = 1,
                                    std::optional<std::uint64_t> cap = std::nullopt) {
    if (workers == 0) workers = 1;
    detail::OrientedAdjacency oa(g);
    const NodeId n = g.node_count();

    struct Partial {
        std::uint64_t count = 0;
        std::vector<std::uint64_t> per_node;
        Tally tally;
    };
    std::vector<Partial> parts(workers);
    std::atomic<NodeId> next_chunk{0};
    std::atomic<std::uint64_t> global_count{0};
    std::atomic<bool> stop{false};
    const NodeId chunk = std::max<NodeId>(64, n / (workers * 64 + 1));

    auto run = [&](unsigned wi) {
        Partial& p = parts[wi];
        p.per_node.assign(n, 0);
        for (;;) {
            NodeId begin = next_chunk.fetch_add(chunk);
            if (begin >= n || stop.load(std::memory_order_relaxed)) break;
            NodeId end = std::min<std::uint64_t>(n, std::uint64_t(begin) + chunk);
            std::uint64_t found = 0;
            for (NodeId r = begin; r < end; ++r) {
                oa.triangles_from(r, [&](NodeId u, NodeId v, NodeId w) {
                    ++p.count;
                    ++found;
                    ++p.per_node[u];
                    ++p.per_node[v];
                    ++p.per_node[w];
                    p.tally.add(make_degree_triple(oa.degree_of_node[u], oa.degree_of_node[v],
                                                   oa.degree_of_node[w]));
                });
            }
            if (cap && global_count.fetch_add(found) + found > *cap) {
                stop.store(true, std::memory_order_relaxed);
                break;
            }
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned wi = 0; wi < workers; ++wi)
            pool.emplace_back([&, wi] {
                try {
                    run(wi);
                } catch (...) {
                    errors[wi] = std::current_exception();
                    stop.store(true);
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    if (stop.load() && cap) throw TriangleLimitExceeded(*cap);

    CensusResult<Tally> result;
    result.per_node.assign(n, 0);
    for (auto& p : parts) {
        result.total += p.count;
        for (NodeId u = 0; u < n; ++u) result.per_node[u] += p.per_node[u];
        result.tally.merge(std::move(p.tally));
    }
    return result;
}

}  // namespace tristat
