#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tristat/errors.hpp"
#include "tristat/graph.hpp"
#include "tristat/triangles.hpp"

namespace tristat {

/// Local clustering coefficient of one node given its triangle count:
/// t / C(d, 2), defined as 0 for d < 2.
inline double local_cc(NodeId degree, std::uint64_t triangles) {
    if (degree < 2) return 0.0;
    return static_cast<double>(triangles) / static_cast<double>(wedges_at(degree));
}

/// Global clustering coefficient 3T / #wedges (transitivity).
inline double global_cc(const Graph& g, std::uint64_t total_triangles) {
    const std::uint64_t wedges = count_wedges(g);
    if (wedges == 0) return 0.0;
    return 3.0 * static_cast<double>(total_triangles) / static_cast<double>(wedges);
}

/// Mean local clustering coefficient over all nodes (degree-0/1 nodes count
/// as 0).
inline double avg_local_cc(const Graph& g, const std::vector<std::uint64_t>& per_node) {
    if (g.node_count() == 0) throw InputError("clustering needs a non-empty graph");
    double sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) sum += local_cc(g.degree(u), per_node[u]);
    return sum / static_cast<double>(g.node_count());
}

/// Mean local clustering coefficient per degree class, for degrees >= 2 that
/// occur in the graph. Drives the clustering profile a BTER fit consumes.
struct ClusteringProfile {
    std::vector<NodeId> degree;
    std::vector<double> mean_cc;
    std::vector<std::uint64_t> count;  // nodes of that degree

    double at(NodeId d) const {
        auto it = std::lower_bound(degree.begin(), degree.end(), d);
        if (it == degree.end() || *it != d) return 0.0;
        return mean_cc[static_cast<std::size_t>(it - degree.begin())];
    }
};

inline ClusteringProfile cc_by_degree(const Graph& g, const std::vector<std::uint64_t>& per_node) {
    const NodeId dmax = g.max_degree();
    std::vector<double> sum(static_cast<std::size_t>(dmax) + 1, 0.0);
    std::vector<std::uint64_t> cnt(static_cast<std::size_t>(dmax) + 1, 0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const NodeId d = g.degree(u);
        if (d < 2) continue;
        sum[d] += local_cc(d, per_node[u]);
        ++cnt[d];
    }
    ClusteringProfile profile;
    for (NodeId d = 2; d <= dmax; ++d) {
        if (cnt[d] == 0) continue;
        profile.degree.push_back(d);
        profile.mean_cc.push_back(sum[d] / static_cast<double>(cnt[d]));
        profile.count.push_back(cnt[d]);
    }
    return profile;
}

struct Assortativity {
    double r = 0;
    bool degenerate = false;  // zero degree variance across edge endpoints
};

/// Pearson correlation of degrees across edge endpoints (both orientations).
/// Accumulated in 128-bit integers, so the result is exact up to the final
/// floating-point division and identical regardless of edge order.
inline Assortativity degree_assortativity(const Graph& g) {
    if (g.edge_count() == 0) return {0.0, true};
    unsigned __int128 sx = 0, sxx = 0, sxy = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::uint64_t du = g.degree(u);
        sx += static_cast<unsigned __int128>(du) * du;          // du copies of du
        sxx += static_cast<unsigned __int128>(du) * du * du;    // du copies of du^2
        unsigned __int128 row = 0;
        for (NodeId v : g.neighbors(u)) row += g.degree(v);
        sxy += static_cast<unsigned __int128>(du) * row;
    }
    const double m2 = 2.0 * static_cast<double>(g.edge_count());  // #ordered endpoints
    const double mean = static_cast<double>(sx) / m2;
    const double var = static_cast<double>(sxx) / m2 - mean * mean;
    const double cov = static_cast<double>(sxy) / m2 - mean * mean;
    if (var <= 0.0) return {0.0, true};
    return {cov / var, false};
}

/// Nearest-rank percentile (rank = ceil(q/100 * n)) of the degree list of
/// vertices that participate in at least one triangle, each vertex counted
/// once. kappa99 of a graph is triangle_degree_percentile(..., 99).
inline NodeId triangle_degree_percentile(const Graph& g,
                                         const std::vector<std::uint64_t>& per_node, double q) {
    if (q <= 0.0 || q > 100.0) throw InputError("percentile must be in (0, 100]");
    std::vector<NodeId> degrees;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (per_node[u] > 0) degrees.push_back(g.degree(u));
    if (degrees.empty()) throw InputError("percentile needs at least one triangle");
    std::sort(degrees.begin(), degrees.end());
    auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(degrees.size())));
    if (rank == 0) rank = 1;
    return degrees[rank - 1];
}

}  // namespace tristat
