#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tristat/errors.hpp"
#include "tristat/graph.hpp"
#include "tristat/metrics.hpp"
#include "tristat/powerlaw.hpp"
#include "tristat/tri_stats.hpp"
#include "tristat/triangles.hpp"

namespace tristat {

/// One summary-table row for a graph.
struct GraphSummary {
    std::string name;
    std::uint64_t n = 0;                // N
    std::uint64_t e = 0;                // E
    double rho = 0;                     // E/N
    double c = 0;                       // global clustering
    double cbar = 0;                    // mean local clustering
    std::uint64_t t = 0;                // triangles
    std::optional<double> alpha;        // power-law exponent; absent if unfittable
    NodeId kappa90 = 0, kappa99 = 0;    // 0 when the graph has no triangles
    NodeId dmax = 0;
    double r = 0;                       // assortativity; 0 when degenerate
    bool r_degenerate = false;
    std::optional<PowerLawFit> alpha_fit;  // full fit, for logs
};

/// Degree-labeled triangle statistics of one graph.
struct TriangleReport {
    std::vector<BucketStats> buckets;
    std::optional<RatioAverages> ratios;          // absent when T = 0
    double homog_threshold = 10.0;
    std::optional<double> homogeneous_fraction;   // absent when T = 0
    std::optional<double> top1_participation;     // fraction with d_max > kappa99
    std::vector<std::pair<NodeId, std::uint64_t>> cumulative;
    double bin_base = 2.0;
    std::vector<BinnedPoint> d1_binned, d2_binned, d3_binned;  // medians vs. bucket degree
};

struct AnalysisOptions {
    unsigned threads = 1;
    double homog_threshold = 10.0;
    double bin_base = 2.0;
    std::optional<std::uint64_t> max_triangles;
};

struct Analysis {
    GraphSummary summary;
    TriangleReport report;
    ClusteringProfile profile;
    std::vector<std::uint64_t> per_node;  // triangle count per node
};

/// Full single-graph pipeline: one triangle enumeration feeding every
/// downstream statistic.
inline Analysis analyze_graph(const Graph& g, std::string name, const AnalysisOptions& opt = {}) {
    Analysis a;
    auto census = triangle_census<TriangleTally>(g, opt.threads, opt.max_triangles);
    a.per_node = std::move(census.per_node);

    GraphSummary& s = a.summary;
    s.name = std::move(name);
    s.n = g.node_count();
    s.e = g.edge_count();
    s.rho = s.n > 0 ? density(g) : 0.0;
    s.t = census.total;
    s.c = global_cc(g, s.t);
    s.cbar = s.n > 0 ? avg_local_cc(g, a.per_node) : 0.0;
    s.dmax = g.max_degree();
    try {
        const PowerLawFit fit = fit_power_law(degree_histogram(g));
        s.alpha = fit.alpha;
        s.alpha_fit = fit;
    } catch (const InputError&) {
        // fewer than two distinct degrees: exponent undefined
    }
    if (s.t > 0) {
        s.kappa90 = triangle_degree_percentile(g, a.per_node, 90.0);
        s.kappa99 = triangle_degree_percentile(g, a.per_node, 99.0);
    }
    const Assortativity as = degree_assortativity(g);
    s.r = as.r;
    s.r_degenerate = as.degenerate;

    TriangleReport& r = a.report;
    r.homog_threshold = opt.homog_threshold;
    r.bin_base = opt.bin_base;
    r.buckets = bucket_stats(census.tally);
    r.cumulative = cumulative_by_min_degree(r.buckets);
    if (s.t > 0) {
        r.ratios = ratio_averages(census.tally);
        r.homogeneous_fraction = homogeneous_fraction(census.tally, opt.homog_threshold);
        r.top1_participation = high_degree_participation(census.tally, s.kappa99);
        std::vector<WeightedPoint> p1, p2, p3;
        for (const auto& b : r.buckets) {
            const double w = static_cast<double>(b.size);
            p1.push_back({b.min_degree, static_cast<double>(b.d1), w});
            p2.push_back({b.min_degree, static_cast<double>(b.d2), w});
            p3.push_back({b.min_degree, static_cast<double>(b.d3), w});
        }
        r.d1_binned = exp_bin(p1, opt.bin_base);
        r.d2_binned = exp_bin(p2, opt.bin_base);
        r.d3_binned = exp_bin(p3, opt.bin_base);
    }

    a.profile = cc_by_degree(g, a.per_node);
    return a;
}

namespace detail {

inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw InternalError("number formatting failed");
    return std::string(buf, end);
}

/// Write-then-rename so readers never observe a half-written file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw InputError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline nlohmann::json summary_to_json(const GraphSummary& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["N"] = s.n;
    j["E"] = s.e;
    j["rho"] = s.rho;
    j["C"] = s.c;
    j["Cbar"] = s.cbar;
    j["T"] = s.t;
    if (s.alpha)
        j["alpha"] = *s.alpha;
    else
        j["alpha"] = nullptr;
    j["kappa90"] = s.kappa90;
    j["kappa99"] = s.kappa99;
    j["dmax"] = s.dmax;
    j["r"] = s.r;
    return j;
}

inline std::string summary_csv_header() {
    return "name,N,E,rho,C,Cbar,T,alpha,kappa90,kappa99,dmax,r";
}

inline std::string summary_csv_row(const GraphSummary& s) {
    using detail::fmt_double;
    std::string row = s.name;
    row += ',' + std::to_string(s.n);
    row += ',' + std::to_string(s.e);
    row += ',' + fmt_double(s.rho);
    row += ',' + fmt_double(s.c);
    row += ',' + fmt_double(s.cbar);
    row += ',' + std::to_string(s.t);
    row += ',';
    if (s.alpha) row += fmt_double(*s.alpha);
    row += ',' + std::to_string(s.kappa90);
    row += ',' + std::to_string(s.kappa99);
    row += ',' + std::to_string(s.dmax);
    row += ',' + fmt_double(s.r);
    return row;
}

/// Write the per-graph output bundle into `dir`: summary.json, buckets.csv,
/// buckets_binned.csv, ratios.csv (when T > 0), cumulative.csv,
/// cc_by_degree.csv. Returns a log note when something was omitted.
inline std::optional<std::string> write_analysis_files(const Analysis& a,
                                                       const std::filesystem::path& dir) {
    using detail::fmt_double;
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    detail::write_text_atomic(dir / "summary.json", summary_to_json(a.summary).dump(2) + "\n");

    std::string buckets = "i,size,D1,D2,D3\n";
    for (const auto& b : a.report.buckets)
        buckets += std::to_string(b.min_degree) + ',' + std::to_string(b.size) + ',' +
                   std::to_string(b.d1) + ',' + std::to_string(b.d2) + ',' + std::to_string(b.d3) +
                   '\n';
    detail::write_text_atomic(dir / "buckets.csv", buckets);

    std::string binned = "x,D1,D2,D3\n";
    for (std::size_t i = 0; i < a.report.d1_binned.size(); ++i)
        binned += fmt_double(a.report.d1_binned[i].x) + ',' + fmt_double(a.report.d1_binned[i].y) +
                  ',' + fmt_double(a.report.d2_binned[i].y) + ',' +
                  fmt_double(a.report.d3_binned[i].y) + '\n';
    detail::write_text_atomic(dir / "buckets_binned.csv", binned);

    std::string cumulative = "min_degree,cumulative_triangles\n";
    for (const auto& [d, c] : a.report.cumulative)
        cumulative += std::to_string(d) + ',' + std::to_string(c) + '\n';
    detail::write_text_atomic(dir / "cumulative.csv", cumulative);

    std::string ccd = "degree,mean_cc,count\n";
    for (std::size_t i = 0; i < a.profile.degree.size(); ++i)
        ccd += std::to_string(a.profile.degree[i]) + ',' + fmt_double(a.profile.mean_cc[i]) + ',' +
               std::to_string(a.profile.count[i]) + '\n';
    detail::write_text_atomic(dir / "cc_by_degree.csv", ccd);

    if (a.report.ratios) {
        std::string ratios =
            "r21,r31,r32,homogeneous_fraction,homog_threshold,top1_participation,kappa99\n";
        ratios += fmt_double(a.report.ratios->r21) + ',' + fmt_double(a.report.ratios->r31) + ',' +
                  fmt_double(a.report.ratios->r32) + ',' +
                  fmt_double(*a.report.homogeneous_fraction) + ',' +
                  fmt_double(a.report.homog_threshold) + ',' +
                  fmt_double(*a.report.top1_participation) + ',' +
                  std::to_string(a.summary.kappa99) + '\n';
        detail::write_text_atomic(dir / "ratios.csv", ratios);
        return std::nullopt;
    }
    return "no triangles: ratios.csv omitted";
}

/// Side-by-side files for an original graph and generated models; the
/// original is row zero of every series.
inline void write_comparison_files(const std::vector<Analysis>& entries,
                                   const std::filesystem::path& dir) {
    using detail::fmt_double;
    if (entries.empty()) throw InputError("comparison needs at least one analysis");
    std::filesystem::create_directories(dir);

    std::string counts = "model,T\n";
    std::string summaries = summary_csv_header() + "\n";
    std::string d12 = "model,d1,d2\n";
    std::string d13 = "model,d1,d3\n";
    std::string cumulative = "model,min_degree,cumulative_triangles\n";
    std::string ccd = "model,degree,mean_cc\n";
    for (const auto& a : entries) {
        const std::string& m = a.summary.name;
        counts += m + ',' + std::to_string(a.summary.t) + '\n';
        summaries += summary_csv_row(a.summary) + '\n';
        for (const auto& b : a.report.buckets) {
            d12 += m + ',' + std::to_string(b.d1) + ',' + std::to_string(b.d2) + '\n';
            d13 += m + ',' + std::to_string(b.d1) + ',' + std::to_string(b.d3) + '\n';
        }
        for (const auto& [d, c] : a.report.cumulative)
            cumulative += m + ',' + std::to_string(d) + ',' + std::to_string(c) + '\n';
        for (std::size_t i = 0; i < a.profile.degree.size(); ++i)
            ccd += m + ',' + std::to_string(a.profile.degree[i]) + ',' +
                   fmt_double(a.profile.mean_cc[i]) + '\n';
    }
    detail::write_text_atomic(dir / "triangle_counts.csv", counts);
    detail::write_text_atomic(dir / "summaries.csv", summaries);
    detail::write_text_atomic(dir / "d1_vs_d2.csv", d12);
    detail::write_text_atomic(dir / "d1_vs_d3.csv", d13);
    detail::write_text_atomic(dir / "cumulative_compare.csv", cumulative);
    detail::write_text_atomic(dir / "ccd_compare.csv", ccd);
}

}  // namespace tristat
