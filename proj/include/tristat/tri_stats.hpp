#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tristat/errors.hpp"
#include "tristat/triangles.hpp"

namespace tristat {

/// Exact, order-independent aggregate of a degree-triple stream: a counting
/// map over distinct (d_min, d_mid, d_max) triples. Memory is O(#distinct
/// triples) rather than O(T), and every downstream statistic is computed from
/// the map in sorted key order, so results cannot depend on enumeration order
/// or worker count.
class TriangleTally {
public:
    void add(const DegreeTriple& t, std::uint64_t count = 1) {
        counts_[t] += count;
        total_ += count;
    }

    void merge(TriangleTally&& other) {
        if (counts_.empty()) {
            counts_ = std::move(other.counts_);
            total_ = other.total_;
            return;
        }
        for (const auto& [k, c] : other.counts_) counts_[k] += c;
        total_ += other.total_;
    }

    std::uint64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    /// (triple, count) pairs ascending by triple.
    std::vector<std::pair<DegreeTriple, std::uint64_t>> sorted() const {
        std::vector<std::pair<DegreeTriple, std::uint64_t>> v(counts_.begin(), counts_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

private:
    struct TripleHash {
        std::size_t operator()(const DegreeTriple& t) const {
            std::uint64_t z = (std::uint64_t(t.d_min) << 42) ^ (std::uint64_t(t.d_mid) << 21) ^
                              t.d_max;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return static_cast<std::size_t>(z ^ (z >> 31));
        }
    };
    std::unordered_map<DegreeTriple, std::uint64_t, TripleHash> counts_;
    std::uint64_t total_ = 0;
};

/// One bucket B_i: the triangles whose minimum degree equals i, with the
/// medians D1/D2/D3 of their min/mid/max degrees.
struct BucketStats {
    NodeId min_degree = 0;  // i; equals d1 by construction
    std::uint64_t size = 0;
    NodeId d1 = 0, d2 = 0, d3 = 0;
};

namespace detail {

// Lower median: the element at rank ceil(k/2) of the sorted multiset given as
// (value, count) pairs sorted by value.
inline NodeId counted_median(const std::vector<std::pair<NodeId, std::uint64_t>>& dist,
                             std::uint64_t k) {
    const std::uint64_t target = (k + 1) / 2;
    std::uint64_t seen = 0;
    for (const auto& [value, count] : dist) {
        seen += count;
        if (seen >= target) return value;
    }
    throw InternalError("median rank beyond distribution");
}

}  // namespace detail

/// Group a tally by minimum degree and compute the bucket medians.
inline std::vector<BucketStats> bucket_stats(const TriangleTally& tally) {
    std::vector<BucketStats> out;
    auto entries = tally.sorted();
    std::size_t i = 0;
    while (i < entries.size()) {
        const NodeId dmin = entries[i].first.d_min;
        std::size_t j = i;
        std::uint64_t size = 0;
        std::vector<std::pair<NodeId, std::uint64_t>> mid_dist, max_dist;
        while (j < entries.size() && entries[j].first.d_min == dmin) {
            const auto& [triple, count] = entries[j];
            size += count;
            // entries are sorted by (d_min, d_mid, d_max): d_mid arrives ascending
            if (!mid_dist.empty() && mid_dist.back().first == triple.d_mid)
                mid_dist.back().second += count;
            else
                mid_dist.emplace_back(triple.d_mid, count);
            max_dist.emplace_back(triple.d_max, count);
            ++j;
        }
        std::sort(max_dist.begin(), max_dist.end());
        BucketStats b;
        b.min_degree = dmin;
        b.size = size;
        b.d1 = dmin;
        b.d2 = detail::counted_median(mid_dist, size);
        b.d3 = detail::counted_median(max_dist, size);
        out.push_back(b);
        i = j;
    }
    return out;
}

/// Means of the per-triangle degree ratios r21 = d_mid/d_min,
/// r31 = d_max/d_min, r32 = d_max/d_mid.
struct RatioAverages {
    double r21 = 0, r31 = 0, r32 = 0;
};

inline RatioAverages ratio_averages(const TriangleTally& tally) {
    if (tally.empty()) throw InputError("ratio averages need at least one triangle");
    double s21 = 0, s31 = 0, s32 = 0;
    for (const auto& [t, c] : tally.sorted()) {
        const double n = static_cast<double>(c);
        s21 += n * (static_cast<double>(t.d_mid) / t.d_min);
        s31 += n * (static_cast<double>(t.d_max) / t.d_min);
        s32 += n * (static_cast<double>(t.d_max) / t.d_mid);
    }
    const double total = static_cast<double>(tally.total());
    return {s21 / total, s31 / total, s32 / total};
}

/// Fraction of triangles with d_max/d_min <= threshold.
inline double homogeneous_fraction(const TriangleTally& tally, double threshold = 10.0) {
    if (tally.empty()) throw InputError("homogeneous fraction needs at least one triangle");
    std::uint64_t homogeneous = 0;
    for (const auto& [t, c] : tally.sorted())
        if (static_cast<double>(t.d_max) <= threshold * static_cast<double>(t.d_min))
            homogeneous += c;
    return static_cast<double>(homogeneous) / static_cast<double>(tally.total());
}

/// Fraction of triangles containing a high-degree vertex, i.e. d_max > kappa.
inline double high_degree_participation(const TriangleTally& tally, NodeId kappa) {
    if (tally.empty()) throw InputError("participation needs at least one triangle");
    std::uint64_t high = 0;
    for (const auto& [t, c] : tally.sorted())
        if (t.d_max > kappa) high += c;
    return static_cast<double>(high) / static_cast<double>(tally.total());
}

/// Running triangle total by ascending minimum degree; ends at T.
inline std::vector<std::pair<NodeId, std::uint64_t>> cumulative_by_min_degree(
    const std::vector<BucketStats>& buckets) {
    std::vector<std::pair<NodeId, std::uint64_t>> series;
    std::uint64_t running = 0;
    for (const auto& b : buckets) {
        running += b.size;
        series.emplace_back(b.min_degree, running);
    }
    return series;
}

struct WeightedPoint {
    NodeId x = 0;  // integer key >= 1
    double y = 0;
    double weight = 1;
};

struct BinnedPoint {
    double x = 0;  // geometric mean of the bin edges
    double y = 0;  // weighted mean over points in the bin
};

/// Exponential binning: aggregate integer-keyed points into bins
/// [base^k, base^(k+1)), the standard de-noising step for log-scale plots.
inline std::vector<BinnedPoint> exp_bin(const std::vector<WeightedPoint>& points,
                                        double base = 2.0) {
    if (base <= 1.0) throw InputError("bin base must exceed 1");
    std::unordered_map<int, std::pair<double, double>> acc;  // k -> (sum wy, sum w)
    for (const auto& p : points) {
        if (p.x < 1) throw InputError("exp_bin keys must be >= 1");
        int k = 0;
        double hi = base;
        while (hi <= static_cast<double>(p.x)) {
            ++k;
            hi *= base;
        }
        auto& [wy, w] = acc[k];
        wy += p.weight * p.y;
        w += p.weight;
    }
    std::vector<int> ks;
    ks.reserve(acc.size());
    for (const auto& [k, _] : acc) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    std::vector<BinnedPoint> out;
    out.reserve(ks.size());
    for (int k : ks) {
        const auto& [wy, w] = acc.at(k);
        const double lo = std::pow(base, k);
        out.push_back({lo * std::sqrt(base), wy / w});
    }
    return out;
}

}  // namespace tristat
