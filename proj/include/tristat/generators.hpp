#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <variant>
#include <vector>

#include "tristat/errors.hpp"
#include "tristat/graph.hpp"
#include "tristat/model_spec.hpp"
#include "tristat/rng.hpp"

namespace tristat {

namespace detail {

/// Vose alias table: O(1) draws from a fixed discrete distribution.
/// Construction is deterministic for a given weight vector.
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& weights) : prob_(weights.size()), alias_(weights.size()) {
        const std::size_t n = weights.size();
        if (n == 0) throw InternalError("alias table over empty support");
        double total = 0;
        for (double w : weights) {
            if (w < 0) throw InternalError("negative sampling weight");
            total += w;
        }
        if (total <= 0) throw InternalError("alias table needs positive total weight");
        std::vector<double> scaled(n);
        for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;
        std::vector<std::size_t> small, large;
        for (std::size_t i = n; i-- > 0;) (scaled[i] < 1.0 ? small : large).push_back(i);
        while (!small.empty() && !large.empty()) {
            const std::size_t s = small.back(), l = large.back();
            small.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = static_cast<std::uint32_t>(l);
            scaled[l] -= 1.0 - scaled[s];
            if (scaled[l] < 1.0) {
                large.pop_back();
                small.push_back(l);
            }
        }
        for (std::size_t l : large) prob_[l] = 1.0;
        for (std::size_t s : small) prob_[s] = 1.0;  // numerical leftovers
    }

    std::size_t sample(Rng& rng) const {
        const std::size_t i = static_cast<std::size_t>(rng.uniform(prob_.size()));
        return rng.uniform01() < prob_[i] ? i : alias_[i];
    }

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

/// Chung-Lu core: draw `m` candidate arcs with both endpoints sampled
/// proportionally to `weights`; self-loops are dropped here, duplicates later
/// by Graph construction. Shared by the CL model and the BTER residual phase.
inline std::vector<std::pair<NodeId, NodeId>> cl_arcs(const std::vector<double>& weights,
                                                      std::uint64_t m, Rng& rng) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    if (m == 0) return arcs;
    const AliasTable table(weights);
    arcs.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const auto u = static_cast<NodeId>(table.sample(rng));
        const auto v = static_cast<NodeId>(table.sample(rng));
        if (u != v) arcs.emplace_back(u, v);
    }
    return arcs;
}

// Expected-degree weights with the standard Chung-Lu validity clamp at
// sqrt(sum of weights), keeping implied edge probabilities <= 1.
inline std::vector<double> cl_weights(const std::vector<double>& raw) {
    double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (total <= 0) return raw;
    const double cap = std::sqrt(total);
    std::vector<double> w(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) w[i] = std::min(raw[i], cap);
    return w;
}

inline std::vector<std::pair<NodeId, NodeId>> clique_arcs(NodeId size) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId i = 0; i < size; ++i)
        for (NodeId j = i + 1; j < size; ++j) arcs.emplace_back(i, j);
    return arcs;
}

}  // namespace detail

/// Preferential attachment: seed with a (k+1)-clique, then every arriving
/// node attaches to k distinct existing nodes, each chosen with probability
/// proportional to its current degree (uniform pick from the edge-stub list).
inline Graph gen_pa(const PaSpec& spec, std::uint64_t seed) {
    validate_spec(ModelSpec(spec));
    const auto n = static_cast<NodeId>(spec.n);
    const NodeId k = spec.k;
    Rng rng(mix_seed(seed, 0x9a));
    auto arcs = detail::clique_arcs(k + 1);
    std::vector<NodeId> stubs;
    stubs.reserve(2 * (static_cast<std::size_t>(k) * n));
    for (const auto& [u, v] : arcs) {
        stubs.push_back(u);
        stubs.push_back(v);
    }
    std::vector<NodeId> chosen;
    for (NodeId u = k + 1; u < n; ++u) {
        chosen.clear();
        while (chosen.size() < k) {
            const NodeId t = stubs[rng.uniform(stubs.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            arcs.emplace_back(u, t);
            stubs.push_back(u);
            stubs.push_back(t);
        }
    }
    return Graph(n, std::move(arcs));
}

/// Chung-Lu: m = (sum of degrees)/2 candidate edges, endpoints sampled
/// proportionally to the (clamped) target degrees.
inline Graph gen_cl(const ClSpec& spec, std::uint64_t seed) {
    validate_spec(ModelSpec(spec));
    const auto n = static_cast<NodeId>(spec.target_degrees.size());
    std::vector<double> raw(spec.target_degrees.begin(), spec.target_degrees.end());
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    const auto m = static_cast<std::uint64_t>(total / 2.0);
    Rng rng(mix_seed(seed, 0xc1));
    auto arcs = detail::cl_arcs(detail::cl_weights(raw), m, rng);
    return Graph(n, std::move(arcs));
}

/// Raw SKG arc sampler: descend the 2x2 initiator `scale` times per arc,
/// picking a quadrant proportionally to the entries. Exposed separately so
/// the arc distribution itself is testable.
inline std::vector<std::pair<NodeId, NodeId>> sample_skg_arcs(const SkgSpec& spec,
                                                              std::uint64_t count, Rng& rng) {
    const double t00 = spec.initiator[0][0], t01 = spec.initiator[0][1];
    const double t10 = spec.initiator[1][0], t11 = spec.initiator[1][1];
    const double total = t00 + t01 + t10 + t11;
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        NodeId r = 0, c = 0;
        for (std::uint32_t level = 0; level < spec.scale; ++level) {
            const double x = rng.uniform01() * total;
            NodeId qr, qc;
            if (x < t00) {
                qr = 0, qc = 0;
            } else if (x < t00 + t01) {
                qr = 0, qc = 1;
            } else if (x < t00 + t01 + t10) {
                qr = 1, qc = 0;
            } else {
                qr = 1, qc = 1;
            }
            r = (r << 1) | qr;
            c = (c << 1) | qc;
        }
        arcs.emplace_back(r, c);
    }
    return arcs;
}

/// Stochastic Kronecker graph over the node universe 2^scale.
inline Graph gen_skg(const SkgSpec& spec, std::uint64_t seed) {
    validate_spec(ModelSpec(spec));
    if (spec.scale > 31) throw InputError("skg: scale too large for 32-bit node ids");
    Rng rng(mix_seed(seed, 0x56));
    auto arcs = sample_skg_arcs(spec, spec.edges, rng);
    return Graph(NodeId(1) << spec.scale, std::move(arcs));
}

/// BTER. Phase 1 packs nodes of near-equal degree (ascending, degree >= 2)
/// into blocks of d_block+1 nodes wired as ER(p) with p = C_{d_block}^(1/3),
/// so expected within-block clustering tracks the target profile. Phase 2
/// hands the residual degrees to the Chung-Lu core.
inline Graph gen_bter(const BterSpec& spec, std::uint64_t seed) {
    validate_spec(ModelSpec(spec));
    const auto n = static_cast<NodeId>(spec.target_degrees.size());
    Rng rng(mix_seed(seed, 0xb7));

    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return std::pair(spec.target_degrees[a], a) < std::pair(spec.target_degrees[b], b);
    });

    // nearest-degree lookup into the clustering profile
    const auto& prof = spec.cc_profile;
    auto profile_cc = [&](NodeId d) -> double {
        if (prof.degree.empty()) return 0.0;
        auto it = std::lower_bound(prof.degree.begin(), prof.degree.end(), d);
        if (it == prof.degree.end()) return prof.mean_cc.back();
        if (it == prof.degree.begin()) return prof.mean_cc.front();
        const auto hi = static_cast<std::size_t>(it - prof.degree.begin());
        const auto lo = hi - 1;
        // ties toward the smaller degree
        return (d - prof.degree[lo] <= prof.degree[hi] - d) ? prof.mean_cc[lo] : prof.mean_cc[hi];
    };

    std::vector<std::pair<NodeId, NodeId>> arcs;
    std::vector<std::uint64_t> realized(n, 0);
    std::size_t at = 0;
    while (at < order.size() && spec.target_degrees[order[at]] < 2) ++at;  // degree <2: CL only
    while (at < order.size()) {
        const NodeId d_block = spec.target_degrees[order[at]];
        const std::size_t take = std::min<std::size_t>(d_block + 1, order.size() - at);
        const double p = std::clamp(std::cbrt(profile_cc(d_block)), 0.0, 1.0);
        for (std::size_t i = 0; i < take; ++i)
            for (std::size_t j = i + 1; j < take; ++j)
                if (rng.bernoulli(p)) {
                    const NodeId u = order[at + i], v = order[at + j];
                    arcs.emplace_back(u, v);
                    ++realized[u];
                    ++realized[v];
                }
        at += take;
    }

    std::vector<double> residual(n, 0.0);
    double resid_total = 0;
    for (NodeId u = 0; u < n; ++u) {
        const double r = static_cast<double>(spec.target_degrees[u]) - static_cast<double>(realized[u]);
        residual[u] = std::max(0.0, r);
        resid_total += residual[u];
    }
    const auto m2 = static_cast<std::uint64_t>(resid_total / 2.0);
    if (m2 > 0 && resid_total > 0) {
        auto phase2 = detail::cl_arcs(detail::cl_weights(residual), m2, rng);
        arcs.insert(arcs.end(), phase2.begin(), phase2.end());
    }
    return Graph(n, std::move(arcs));
}

/// Edge copying: each arriving node picks a uniform prototype and makes k
/// distinct links — copying a uniform out-neighbor of the prototype with
/// probability p_copy, otherwise linking a uniform existing node.
inline Graph gen_ec(const EcSpec& spec, std::uint64_t seed) {
    validate_spec(ModelSpec(spec));
    const auto n = static_cast<NodeId>(spec.n);
    const NodeId k = spec.k;
    Rng rng(mix_seed(seed, 0xec));
    auto arcs = detail::clique_arcs(k + 1);
    std::vector<std::vector<NodeId>> out(n);
    for (NodeId i = 0; i <= k; ++i)
        for (NodeId j = 0; j <= k; ++j)
            if (i != j) out[i].push_back(j);
    std::vector<NodeId> chosen;
    for (NodeId u = k + 1; u < n; ++u) {
        const NodeId proto = static_cast<NodeId>(rng.uniform(u));
        chosen.clear();
        while (chosen.size() < k) {
            NodeId t;
            if (rng.bernoulli(spec.p_copy)) {
                const auto& src = out[proto];
                t = src[rng.uniform(src.size())];
            } else {
                t = static_cast<NodeId>(rng.uniform(u));
            }
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            arcs.emplace_back(u, t);
            out[u].push_back(t);
        }
    }
    return Graph(n, std::move(arcs));
}

namespace detail {

/// Forest-fire arc process. Stops early once `arc_cap` links exist (used by
/// edge-count probing during fits, where a dense overshoot would otherwise
/// materialize a near-complete graph); the cap does not perturb the stream
/// of random decisions taken before it triggers.
inline std::vector<std::pair<NodeId, NodeId>> ff_arcs(const FfSpec& spec, std::uint64_t seed,
                                                      std::uint64_t arc_cap, bool* truncated) {
    const auto n = static_cast<NodeId>(spec.n);
    Rng rng(mix_seed(seed, 0xff));
    std::vector<std::pair<NodeId, NodeId>> arcs;
    std::vector<std::vector<NodeId>> adj(n);
    std::vector<NodeId> stamp(n, 0);  // visited marker per arriving node
    std::vector<NodeId> queue;
    if (truncated) *truncated = false;
    for (NodeId v = 1; v < n; ++v) {
        if (arcs.size() >= arc_cap) {
            if (truncated) *truncated = true;
            break;
        }
        const NodeId w = static_cast<NodeId>(rng.uniform(v));
        queue.clear();
        stamp[w] = v;
        stamp[v] = v;
        auto link = [&](NodeId t) {
            arcs.emplace_back(v, t);
            adj[v].push_back(t);
            adj[t].push_back(v);
        };
        link(w);
        queue.push_back(w);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId x = queue[head];
            for (NodeId y : adj[x]) {
                if (stamp[y] == v) continue;
                stamp[y] = v;
                if (rng.bernoulli(spec.p_forward)) {
                    link(y);
                    queue.push_back(y);
                }
            }
        }
    }
    return arcs;
}

}  // namespace detail

/// Forest fire: new node v picks a uniform ambassador w, links it, then
/// burns outward — every not-yet-seen neighbor of a burned node is linked
/// with probability p_forward and, if linked, burned in turn. Nodes are
/// marked seen when first examined, so each is offered at most one coin.
inline Graph gen_ff(const FfSpec& spec, std::uint64_t seed) {
    validate_spec(ModelSpec(spec));
    const auto n = static_cast<NodeId>(spec.n);
    auto arcs = detail::ff_arcs(spec, seed, std::numeric_limits<std::uint64_t>::max(), nullptr);
    return Graph(n, std::move(arcs));
}

/// Dispatch on the spec's alternative; same seed + same spec => same graph.
inline Graph generate(const ModelSpec& spec, std::uint64_t seed) {
    struct Gen {
        std::uint64_t seed;
        Graph operator()(const PaSpec& s) const { return gen_pa(s, seed); }
        Graph operator()(const ClSpec& s) const { return gen_cl(s, seed); }
        Graph operator()(const SkgSpec& s) const { return gen_skg(s, seed); }
        Graph operator()(const BterSpec& s) const { return gen_bter(s, seed); }
        Graph operator()(const EcSpec& s) const { return gen_ec(s, seed); }
        Graph operator()(const FfSpec& s) const { return gen_ff(s, seed); }
    };
    return std::visit(Gen{seed}, spec);
}

}  // namespace tristat
