#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "tristat/errors.hpp"
#include "tristat/generators.hpp"
#include "tristat/graph.hpp"
#include "tristat/metrics.hpp"
#include "tristat/model_spec.hpp"

namespace tristat {

struct FitConfig {
    double ff_p_step = 0.001;      // probe grid resolution for the FF search
    std::uint32_t seeds_per_probe = 1;
    double edge_tolerance = 0.05;  // acceptable relative |E_gen - E| after the FF fit

    void validate() const {
        if (!(ff_p_step > 0.0 && ff_p_step < 1.0)) throw InputError("ff step must be in (0,1)");
        if (seeds_per_probe < 1) throw InputError("seeds per probe must be >= 1");
        if (edge_tolerance <= 0.0) throw InputError("edge tolerance must be positive");
    }
};

inline std::vector<NodeId> degree_sequence(const Graph& g) {
    std::vector<NodeId> d(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) d[u] = g.degree(u);
    return d;
}

/// k = round(density), floored at 1 and kept below N so the spec is valid.
inline PaSpec fit_pa(const Graph& g) {
    if (g.node_count() < 2) throw InputError("pa fit needs at least two nodes");
    const double rho = density(g);
    auto k = static_cast<std::uint32_t>(std::llround(rho));
    k = std::max<std::uint32_t>(k, 1);
    k = std::min<std::uint32_t>(k, g.node_count() - 1);
    return PaSpec{g.node_count(), k};
}

inline ClSpec fit_cl(const Graph& g) { return ClSpec{degree_sequence(g)}; }

inline BterSpec fit_bter(const Graph& g, const std::vector<std::uint64_t>& per_node_triangles) {
    return BterSpec{degree_sequence(g), cc_by_degree(g, per_node_triangles)};
}

/// p from the degree-distribution slope: alpha = 1/(1-p), so p = 1 - 1/alpha.
inline EcSpec fit_ec(const Graph& g, double alpha) {
    if (alpha <= 1.0) throw InputError("ec fit needs alpha > 1");
    if (g.node_count() < 2) throw InputError("ec fit needs at least two nodes");
    auto k = static_cast<std::uint32_t>(std::ceil(density(g)));
    k = std::max<std::uint32_t>(k, 1);
    k = std::min<std::uint32_t>(k, g.node_count() - 1);
    const double p = std::max(0.0, 1.0 - 1.0 / alpha);
    return EcSpec{g.node_count(), k, p};
}

/// Density-matched fallback initiator [[a,b],[b,c]] with a/c = skew (default
/// 9) and b the geometric mean, normalized so (sum theta)^scale = 2E; the
/// skew is reduced when the top entry would exceed 1. A user-supplied
/// initiator passes through untouched.
inline SkgSpec fit_skg(const Graph& g,
                       std::optional<std::array<std::array<double, 2>, 2>> initiator = std::nullopt,
                       double skew = 9.0) {
    SkgSpec s;
    const double n = std::max<double>(g.node_count(), 2);
    s.scale = static_cast<std::uint32_t>(std::ceil(std::log2(n)));
    s.scale = std::max<std::uint32_t>(s.scale, 1);
    s.edges = std::max<std::uint64_t>(2 * g.edge_count(), 1);
    if (initiator) {
        s.initiator = *initiator;
        return s;
    }
    const double sum = std::pow(static_cast<double>(s.edges), 1.0 / s.scale);
    double sk = std::max(1.0, skew);
    if (sum > 1.0) {
        // a = sum / (1 + 1/sqrt(skew))^2 must stay <= 1
        const double cap = 1.0 / ((std::sqrt(sum) - 1.0) * (std::sqrt(sum) - 1.0));
        sk = std::min(sk, std::max(1.0, cap));
    }
    const double root = 1.0 + 1.0 / std::sqrt(sk);
    const double a = sum / (root * root);
    const double b = a / std::sqrt(sk);
    const double c = a / sk;
    s.initiator = {{{a, b}, {b, c}}};
    return s;
}

struct FfProbe {
    double p = 0;
    double mean_edges = 0;
};

struct FfFitResult {
    FfSpec spec;
    double target_edges = 0;
    double achieved_edges = 0;       // mean E at the chosen p
    double achieved_edge_error = 0;  // |achieved - target| / target
    bool at_upper_boundary = false;  // even p=1 fell short of the target
    std::vector<FfProbe> probes;     // every evaluated grid point, in probe order
};

namespace detail {

// Mean edge count over `reps` forest-fire runs at grid point `idx`. Probe
// seeds depend only on (seed, idx, rep), so replaying a probe reproduces it.
inline double ff_probe_edges(NodeId n, double p, std::uint64_t idx, const FitConfig& cfg,
                             std::uint64_t seed, std::uint64_t arc_cap) {
    double total = 0;
    for (std::uint32_t rep = 0; rep < cfg.seeds_per_probe; ++rep) {
        const std::uint64_t probe_seed = mix_seed(mix_seed(seed, idx), 0x1000 + rep);
        const auto arcs = ff_arcs(FfSpec{n, p}, probe_seed, arc_cap, nullptr);
        total += static_cast<double>(arcs.size());  // FF links are distinct by construction
    }
    return total / cfg.seeds_per_probe;
}

}  // namespace detail

/// Find p so the generated edge count lands nearest the target's E. Expected
/// E(p) is monotone increasing, so a geometric bracket expansion plus integer
/// bisection reaches the step-size resolution in ~log2(1/step) probes instead
/// of sweeping the whole grid. Ties break toward smaller p.
inline FfFitResult fit_ff(const Graph& g, const FitConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const NodeId n = g.node_count();
    if (n < 1) throw InputError("ff fit needs a nonempty graph");
    const double target = static_cast<double>(g.edge_count());
    // probes that overshoot this hard can never win the argmin; stop them early
    const auto arc_cap = static_cast<std::uint64_t>(2.0 * target) + n + 64;

    const auto i_max = static_cast<std::uint64_t>(std::llround(1.0 / cfg.ff_p_step));
    auto p_at = [&](std::uint64_t i) { return std::min(1.0, static_cast<double>(i) * cfg.ff_p_step); };

    FfFitResult res;
    res.target_edges = target;
    auto eval = [&](std::uint64_t i) {
        const double e = detail::ff_probe_edges(n, p_at(i), i, cfg, seed, arc_cap);
        res.probes.push_back({p_at(i), e});
        return e;
    };

    std::uint64_t lo = 0, hi = i_max;
    double e_lo = eval(0);
    if (e_lo < target) {
        // expand: probe i_max/16, /8, /4, /2, then the boundary itself
        bool bracketed = false;
        for (int shift = 4; shift >= 0; --shift) {
            const std::uint64_t i = std::max<std::uint64_t>(i_max >> shift, lo + 1);
            if (i >= i_max) break;
            const double e = eval(i);
            if (e >= target) {
                hi = i;
                bracketed = true;
                break;
            }
            lo = i;
            e_lo = e;
        }
        if (!bracketed) {
            const double e_hi = eval(hi);  // hi == i_max here
            res.at_upper_boundary = e_hi < target;
        }
        if (!res.at_upper_boundary) {
            // integer bisection down to one grid step
            while (hi - lo > 1) {
                const std::uint64_t mid = lo + (hi - lo) / 2;
                const double e = eval(mid);
                if (e < target)
                    lo = mid;
                else
                    hi = mid;
            }
        }
    }

    const FfProbe* best = nullptr;
    for (const auto& pr : res.probes) {
        const bool wins = !best || std::abs(pr.mean_edges - target) < std::abs(best->mean_edges - target) ||
                          (std::abs(pr.mean_edges - target) == std::abs(best->mean_edges - target) &&
                           pr.p < best->p);
        if (wins) best = &pr;
    }
    res.spec = FfSpec{n, best->p};
    res.achieved_edges = best->mean_edges;
    res.achieved_edge_error = target > 0 ? std::abs(best->mean_edges - target) / target : 0.0;
    return res;
}

}  // namespace tristat
