// tristat: degree-labeled triangle statistics, graph summaries, and
// model-fitted synthetic graphs, from SNAP-style edge lists.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tristat/tristat.hpp"

namespace fs = std::filesystem;
using namespace tristat;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
    unsigned threads = 1;
    double homog_threshold = 10.0;
    double bin_base = 2.0;
    std::uint64_t max_triangles = 0;  // 0: unlimited
};

void add_analysis_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--threads", o.threads, "worker threads for triangle enumeration")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--homog-threshold", o.homog_threshold,
                    "max d_max/d_min ratio for a triangle to count as homogeneous")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--bin-base", o.bin_base, "base of the exponential bins for plot data")
        ->check(CLI::Range(1.0001, 1e6));
    cmd->add_option("--max-triangles", o.max_triangles,
                    "abort enumeration beyond this many triangles (0 = unlimited)");
}

AnalysisOptions to_options(const CommonOpts& o) {
    AnalysisOptions opt;
    opt.threads = o.threads;
    opt.homog_threshold = o.homog_threshold;
    opt.bin_base = o.bin_base;
    if (o.max_triangles > 0) opt.max_triangles = o.max_triangles;
    return opt;
}

std::string name_from_path(const fs::path& p) {
    std::string stem = p.stem().string();
    return stem.empty() ? p.string() : stem;
}

nlohmann::json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

std::array<std::array<double, 2>, 2> load_initiator_file(const fs::path& path) {
    const auto j = load_json_file(path);
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw InputError("initiator file must hold a JSON 2x2 matrix");
    std::array<std::array<double, 2>, 2> m{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m[r][c] = j[r][c].get<double>();
    return m;
}

int cmd_analyze(const fs::path& input, const fs::path& out_dir, const std::string& name_override,
                const CommonOpts& common) {
    const Graph g = load_edge_list_file(input);
    const std::string name = name_override.empty() ? name_from_path(input) : name_override;
    const Analysis a = analyze_graph(g, name, to_options(common));
    const auto note = write_analysis_files(a, out_dir);
    if (note) std::cerr << "note: " << *note << "\n";
    if (a.summary.alpha_fit)
        std::cerr << "alpha fit: alpha=" << a.summary.alpha_fit->alpha
                  << " xmin=" << a.summary.alpha_fit->xmin << " ks=" << a.summary.alpha_fit->ks
                  << " tail_n=" << a.summary.alpha_fit->tail_n << "\n";
    std::cout << summary_to_json(a.summary).dump() << "\n";
    return 0;
}

int cmd_fit(const fs::path& input, const std::string& model, fs::path out_file,
            const FitConfig& cfg, const std::string& initiator_file, double skg_skew,
            std::optional<std::uint64_t> seed, const CommonOpts& common) {
    const Graph g = load_edge_list_file(input);
    if (out_file.empty()) out_file = model + "_spec.json";

    ModelSpec spec;
    if (model == "pa") {
        spec = fit_pa(g);
    } else if (model == "cl") {
        spec = fit_cl(g);
    } else if (model == "bter") {
        auto census = triangle_census<TriangleTally>(g, common.threads);
        spec = fit_bter(g, census.per_node);
    } else if (model == "ec") {
        const PowerLawFit fit = fit_power_law(degree_histogram(g));
        spec = fit_ec(g, fit.alpha);
    } else if (model == "skg") {
        if (!initiator_file.empty())
            spec = fit_skg(g, load_initiator_file(initiator_file), skg_skew);
        else
            spec = fit_skg(g, std::nullopt, skg_skew);
    } else if (model == "ff") {
        if (!seed) throw CLI::ValidationError("--seed", "ff fitting is randomized; --seed required");
        const FfFitResult res = fit_ff(g, cfg, *seed);
        std::cerr << "ff fit: p=" << res.spec.p_forward << " target_E=" << res.target_edges
                  << " achieved_E=" << res.achieved_edges
                  << " rel_error=" << res.achieved_edge_error << " probes=" << res.probes.size()
                  << "\n";
        if (res.at_upper_boundary)
            std::cerr << "warning: even p=1 generates fewer edges than the target; using p=1\n";
        else if (res.achieved_edge_error > cfg.edge_tolerance)
            std::cerr << "warning: achieved edge error exceeds tolerance "
                      << cfg.edge_tolerance << "\n";
        spec = res.spec;
    } else {
        throw CLI::ValidationError("--model", "unknown model: " + model);
    }

    std::ostringstream body;
    body << spec_to_json(spec).dump(2) << "\n";
    if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
    std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + out_file.string());
    out << body.str();
    std::cout << out_file.string() << "\n";
    return 0;
}

int cmd_generate(const fs::path& spec_file, std::uint64_t seed, const fs::path& out_file) {
    const ModelSpec spec = spec_from_json(load_json_file(spec_file));
    const Graph g = generate(spec, seed);
    if (out_file.empty()) {
        write_edge_list(g, std::cout);
    } else {
        if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
        std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + out_file.string());
        write_edge_list(g, out);
        std::cout << out_file.string() << "\n";
    }
    return 0;
}

int cmd_compare(const fs::path& original, const std::vector<std::string>& spec_files,
                std::uint64_t seed, const fs::path& out_dir, const CommonOpts& common) {
    const Graph g = load_edge_list_file(original);
    const auto opt = to_options(common);
    std::vector<Analysis> entries;
    entries.push_back(analyze_graph(g, name_from_path(original), opt));

    bool any_failed = false;
    for (std::size_t i = 0; i < spec_files.size(); ++i) {
        const fs::path sf = spec_files[i];
        try {
            const ModelSpec spec = spec_from_json(load_json_file(sf));
            const Graph gen = generate(spec, mix_seed(seed, i));
            entries.push_back(analyze_graph(gen, name_from_path(sf), opt));
        } catch (const std::exception& e) {
            any_failed = true;
            std::cerr << "model " << sf.string() << " failed: " << e.what() << "\n";
        }
    }
    write_comparison_files(entries, out_dir);
    for (const auto& a : entries)
        std::cout << a.summary.name << " T=" << a.summary.t << "\n";
    return any_failed ? kExitInput : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-labeled triangle statistics and graph-model comparison"};
    app.require_subcommand(1);

    CommonOpts common;
    std::optional<std::uint64_t> seed;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "summarize a graph and its triangle buckets");
    fs::path an_input, an_out = "analysis";
    std::string an_name;
    analyze->add_option("graph", an_input, "edge-list file")->required();
    analyze->add_option("--out", an_out, "output directory");
    analyze->add_option("--name", an_name, "row name (default: file stem)");
    add_analysis_flags(analyze, common);

    // fit
    auto* fit = app.add_subcommand("fit", "derive model parameters from a graph");
    fs::path fit_input, fit_out;
    std::string fit_model, initiator_file;
    double skg_skew = 9.0;
    FitConfig fit_cfg;
    fit->add_option("graph", fit_input, "edge-list file")->required();
    fit->add_option("--model", fit_model, "one of pa, cl, skg, bter, ec, ff")->required();
    fit->add_option("--out", fit_out, "spec file to write (default <model>_spec.json)");
    fit->add_option("--ff-step", fit_cfg.ff_p_step, "probe grid resolution for ff");
    fit->add_option("--seeds-per-probe", fit_cfg.seeds_per_probe, "runs averaged per ff probe");
    fit->add_option("--edge-tolerance", fit_cfg.edge_tolerance, "warn above this relative error");
    fit->add_option("--initiator", initiator_file, "2x2 JSON matrix file for skg");
    fit->add_option("--skew", skg_skew, "a/c ratio of the fallback skg initiator");
    fit->add_option("--seed", seed, "random seed (required for ff)");
    fit->add_option("--threads", common.threads, "worker threads for triangle enumeration")
        ->check(CLI::Range(1u, 256u));

    // generate
    auto* gen = app.add_subcommand("generate", "produce a graph from a model spec");
    fs::path gen_spec, gen_out;
    gen->add_option("spec", gen_spec, "model spec JSON file")->required();
    gen->add_option("--seed", seed, "random seed")->required();
    gen->add_option("--out", gen_out, "output edge-list file (default: stdout)");

    // compare
    auto* cmp = app.add_subcommand("compare", "analyze a graph next to generated models");
    fs::path cmp_input, cmp_out = "comparison";
    std::vector<std::string> cmp_specs;
    cmp->add_option("graph", cmp_input, "original edge-list file")->required();
    cmp->add_option("--spec", cmp_specs, "model spec JSON files")->required()->expected(-1);
    cmp->add_option("--seed", seed, "base random seed")->required();
    cmp->add_option("--out", cmp_out, "output directory");
    add_analysis_flags(cmp, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(an_input, an_out, an_name, common);
        if (*fit)
            return cmd_fit(fit_input, fit_model, fit_out, fit_cfg, initiator_file, skg_skew, seed,
                           common);
        if (*gen) return cmd_generate(gen_spec, *seed, gen_out);
        if (*cmp) return cmd_compare(cmp_input, cmp_specs, *seed, cmp_out, common);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TriangleLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
