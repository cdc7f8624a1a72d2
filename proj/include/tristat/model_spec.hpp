#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tristat/errors.hpp"
#include "tristat/graph.hpp"
#include "tristat/metrics.hpp"

namespace tristat {

struct PaSpec {
    std::uint64_t n = 0;
    std::uint32_t k = 1;  // edges per arriving node
};

struct ClSpec {
    std::vector<NodeId> target_degrees;
};

struct SkgSpec {
    std::array<std::array<double, 2>, 2> initiator{};  // theta
    std::uint32_t scale = 1;                            // node universe 2^scale
    std::uint64_t edges = 0;                            // arcs to sample
};

struct BterSpec {
    std::vector<NodeId> target_degrees;
    ClusteringProfile cc_profile;
};

struct EcSpec {
    std::uint64_t n = 0;
    std::uint32_t k = 1;
    double p_copy = 0;
};

struct FfSpec {
    std::uint64_t n = 0;
    double p_forward = 0;
};

using ModelSpec = std::variant<PaSpec, ClSpec, SkgSpec, BterSpec, EcSpec, FfSpec>;

inline const char* model_name(const ModelSpec& spec) {
    struct Namer {
        const char* operator()(const PaSpec&) const { return "pa"; }
        const char* operator()(const ClSpec&) const { return "cl"; }
        const char* operator()(const SkgSpec&) const { return "skg"; }
        const char* operator()(const BterSpec&) const { return "bter"; }
        const char* operator()(const EcSpec&) const { return "ec"; }
        const char* operator()(const FfSpec&) const { return "ff"; }
    };
    return std::visit(Namer{}, spec);
}

inline void validate_spec(const ModelSpec& spec) {
    struct Checker {
        void operator()(const PaSpec& s) const {
            if (s.k < 1) throw InputError("pa: k must be >= 1");
            if (s.n <= s.k) throw InputError("pa: n must exceed k");
        }
        void operator()(const ClSpec& s) const {
            if (s.target_degrees.empty()) throw InputError("cl: empty degree list");
        }
        void operator()(const SkgSpec& s) const {
            if (s.scale < 1) throw InputError("skg: scale must be >= 1");
            if (s.edges < 1) throw InputError("skg: edges must be >= 1");
            double total = 0;
            for (const auto& row : s.initiator)
                for (double v : row) {
                    if (v < 0.0 || v > 1.0) throw InputError("skg: initiator entries must be in [0,1]");
                    total += v;
                }
            if (total <= 0.0) throw InputError("skg: initiator must have a positive entry");
        }
        void operator()(const BterSpec& s) const {
            if (s.target_degrees.empty()) throw InputError("bter: empty degree list");
            for (double c : s.cc_profile.mean_cc)
                if (c < 0.0 || c > 1.0) throw InputError("bter: clustering values must be in [0,1]");
        }
        void operator()(const EcSpec& s) const {
            if (s.k < 1) throw InputError("ec: k must be >= 1");
            if (s.n <= s.k) throw InputError("ec: n must exceed k");
            if (s.p_copy < 0.0 || s.p_copy > 1.0) throw InputError("ec: p_copy must be in [0,1]");
        }
        void operator()(const FfSpec& s) const {
            if (s.n < 1) throw InputError("ff: n must be >= 1");
            if (s.p_forward < 0.0 || s.p_forward > 1.0)
                throw InputError("ff: p_forward must be in [0,1]");
        }
    };
    std::visit(Checker{}, spec);
}

inline nlohmann::json spec_to_json(const ModelSpec& spec) {
    nlohmann::json j;
    j["model"] = model_name(spec);
    struct Writer {
        nlohmann::json& j;
        void operator()(const PaSpec& s) const {
            j["n"] = s.n;
            j["k"] = s.k;
        }
        void operator()(const ClSpec& s) const { j["target_degrees"] = s.target_degrees; }
        void operator()(const SkgSpec& s) const {
            j["initiator"] = {{s.initiator[0][0], s.initiator[0][1]},
                              {s.initiator[1][0], s.initiator[1][1]}};
            j["scale"] = s.scale;
            j["edges"] = s.edges;
        }
        void operator()(const BterSpec& s) const {
            j["target_degrees"] = s.target_degrees;
            j["cc_profile"] = {{"degree", s.cc_profile.degree},
                               {"mean_cc", s.cc_profile.mean_cc},
                               {"count", s.cc_profile.count}};
        }
        void operator()(const EcSpec& s) const {
            j["n"] = s.n;
            j["k"] = s.k;
            j["p_copy"] = s.p_copy;
        }
        void operator()(const FfSpec& s) const {
            j["n"] = s.n;
            j["p_forward"] = s.p_forward;
        }
    };
    std::visit(Writer{j}, spec);
    return j;
}

inline ModelSpec spec_from_json(const nlohmann::json& j) {
    ModelSpec spec;
    try {
        const std::string model = j.at("model").get<std::string>();
        if (model == "pa") {
            PaSpec s;
            s.n = j.at("n").get<std::uint64_t>();
            s.k = j.at("k").get<std::uint32_t>();
            spec = s;
        } else if (model == "cl") {
            ClSpec s;
            s.target_degrees = j.at("target_degrees").get<std::vector<NodeId>>();
            spec = s;
        } else if (model == "skg") {
            SkgSpec s;
            const auto& m = j.at("initiator");
            if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
                !m[1].is_array() || m[1].size() != 2)
                throw InputError("skg: initiator must be a 2x2 matrix");
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) s.initiator[r][c] = m[r][c].get<double>();
            s.scale = j.at("scale").get<std::uint32_t>();
            s.edges = j.at("edges").get<std::uint64_t>();
            spec = s;
        } else if (model == "bter") {
            BterSpec s;
            s.target_degrees = j.at("target_degrees").get<std::vector<NodeId>>();
            const auto& p = j.at("cc_profile");
            s.cc_profile.degree = p.at("degree").get<std::vector<NodeId>>();
            s.cc_profile.mean_cc = p.at("mean_cc").get<std::vector<double>>();
            s.cc_profile.count = p.at("count").get<std::vector<std::uint64_t>>();
            if (s.cc_profile.degree.size() != s.cc_profile.mean_cc.size() ||
                s.cc_profile.degree.size() != s.cc_profile.count.size())
                throw InputError("bter: cc_profile arrays must have equal length");
            spec = s;
        } else if (model == "ec") {
            EcSpec s;
            s.n = j.at("n").get<std::uint64_t>();
            s.k = j.at("k").get<std::uint32_t>();
            s.p_copy = j.at("p_copy").get<double>();
            spec = s;
        } else if (model == "ff") {
            FfSpec s;
            s.n = j.at("n").get<std::uint64_t>();
            s.p_forward = j.at("p_forward").get<double>();
            spec = s;
        } else {
            throw InputError("unknown model tag: " + model);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model spec: ") + e.what());
    }
    validate_spec(spec);
    return spec;
}

}  // namespace tristat
