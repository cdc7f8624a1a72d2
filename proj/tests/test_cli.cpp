// End-to-end tests driving the installed binary (path injected via
// TRISTAT_BIN at compile time).

#include <gtest/gtest.h>

#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tristat/edge_list.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(TRISTAT_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    EXPECT_TRUE(in.good()) << p;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TmpDir {
    fs::path path;
    TmpDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("tristat_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TmpDir() { fs::remove_all(path); }
};

void write_k4(const fs::path& p) {
    std::ofstream out(p);
    out << "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
}

}  // namespace

TEST(Cli, AnalyzeK4) {
    TmpDir tmp;
    write_k4(tmp.path / "k4.txt");
    auto res = run("analyze " + (tmp.path / "k4.txt").string() + " --out " +
                   (tmp.path / "out").string());
    EXPECT_EQ(res.exit_code, 0);
    auto j = nlohmann::json::parse(slurp(tmp.path / "out" / "summary.json"));
    EXPECT_EQ(j.at("T").get<std::uint64_t>(), 4u);
    EXPECT_DOUBLE_EQ(j.at("C").get<double>(), 1.0);
    EXPECT_EQ(j.at("name").get<std::string>(), "k4");
    // stdout carries the same summary
    auto stdout_json = nlohmann::json::parse(res.output);
    EXPECT_EQ(stdout_json.at("T").get<std::uint64_t>(), 4u);
}

TEST(Cli, ExitCodes) {
    TmpDir tmp;
    EXPECT_EQ(run("").exit_code, 1);                                   // usage
    EXPECT_EQ(run("analyze " + (tmp.path / "nope.txt").string()).exit_code, 2);
    std::ofstream(tmp.path / "bad.txt") << "1 x\n";
    EXPECT_EQ(run("analyze " + (tmp.path / "bad.txt").string() + " --out " +
                  (tmp.path / "o").string())
                  .exit_code,
              2);
    write_k4(tmp.path / "k4.txt");
    EXPECT_EQ(run("fit " + (tmp.path / "k4.txt").string() + " --model zzz").exit_code, 1);
    // triangle guardrail
    EXPECT_EQ(run("analyze " + (tmp.path / "k4.txt").string() + " --out " +
                  (tmp.path / "o2").string() + " --max-triangles 2")
                  .exit_code,
              2);
}

TEST(Cli, FitThenGenerate) {
    TmpDir tmp;
    write_k4(tmp.path / "k4.txt");
    const fs::path spec = tmp.path / "pa.json";
    auto fit = run("fit " + (tmp.path / "k4.txt").string() + " --model pa --out " + spec.string());
    EXPECT_EQ(fit.exit_code, 0);
    auto j = nlohmann::json::parse(slurp(spec));
    EXPECT_EQ(j.at("model").get<std::string>(), "pa");
    EXPECT_EQ(j.at("k").get<int>(), 2);  // rho = 1.5 rounds to 2

    const fs::path out = tmp.path / "gen.txt";
    auto gen = run("generate " + spec.string() + " --seed 5 --out " + out.string());
    EXPECT_EQ(gen.exit_code, 0);
    tristat::Graph g = tristat::load_edge_list_file(out);
    EXPECT_EQ(g.node_count(), 4u);
}

TEST(Cli, GenerateIsDeterministicPerSeed) {
    TmpDir tmp;
    std::ofstream(tmp.path / "ff.json") << R"({"model":"ff","n":200,"p_forward":0.5})";
    const std::string base = "generate " + (tmp.path / "ff.json").string();
    run(base + " --seed 9 --out " + (tmp.path / "a.txt").string());
    run(base + " --seed 9 --out " + (tmp.path / "b.txt").string());
    run(base + " --seed 10 --out " + (tmp.path / "c.txt").string());
    EXPECT_EQ(slurp(tmp.path / "a.txt"), slurp(tmp.path / "b.txt"));
    EXPECT_NE(slurp(tmp.path / "a.txt"), slurp(tmp.path / "c.txt"));
}

TEST(Cli, GenerateRequiresSeed) {
    TmpDir tmp;
    std::ofstream(tmp.path / "ff.json") << R"({"model":"ff","n":50,"p_forward":0})";
    EXPECT_EQ(run("generate " + (tmp.path / "ff.json").string()).exit_code, 1);
}

TEST(Cli, FfTreeProperty) {
    TmpDir tmp;
    std::ofstream(tmp.path / "ff.json") << R"({"model":"ff","n":1000,"p_forward":0})";
    const fs::path out = tmp.path / "tree.txt";
    auto res = run("generate " + (tmp.path / "ff.json").string() + " --seed 3 --out " +
                   out.string());
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_EQ(tristat::load_edge_list_file(out).edge_count(), 999u);
}

TEST(Cli, BadSpecIsInputError) {
    TmpDir tmp;
    std::ofstream(tmp.path / "bad.json") << R"({"model":"pa","n":3})";
    EXPECT_EQ(run("generate " + (tmp.path / "bad.json").string() + " --seed 1").exit_code, 2);
    std::ofstream(tmp.path / "worse.json") << "not json";
    EXPECT_EQ(run("generate " + (tmp.path / "worse.json").string() + " --seed 1").exit_code, 2);
}

TEST(Cli, CompareK4AgainstPa) {
    TmpDir tmp;
    write_k4(tmp.path / "k4.txt");
    std::ofstream(tmp.path / "pa.json") << R"({"model":"pa","n":4,"k":3})";
    auto res = run("compare " + (tmp.path / "k4.txt").string() + " --spec " +
                   (tmp.path / "pa.json").string() + " --seed 1 --out " +
                   (tmp.path / "cmp").string());
    EXPECT_EQ(res.exit_code, 0);
    // PA(4,3) is K4: both rows report T=4
    EXPECT_EQ(slurp(tmp.path / "cmp" / "triangle_counts.csv"), "model,T\nk4,4\npa,4\n");
    for (const char* f :
         {"summaries.csv", "d1_vs_d2.csv", "d1_vs_d3.csv", "cumulative_compare.csv",
          "ccd_compare.csv"})
        EXPECT_TRUE(fs::exists(tmp.path / "cmp" / f)) << f;
}

TEST(Cli, CompareSurvivesBrokenModel) {
    TmpDir tmp;
    write_k4(tmp.path / "k4.txt");
    std::ofstream(tmp.path / "bad.json") << R"({"model":"pa","n":2,"k":5})";
    std::ofstream(tmp.path / "ok.json") << R"({"model":"pa","n":4,"k":3})";
    auto res = run("compare " + (tmp.path / "k4.txt").string() + " --spec " +
                   (tmp.path / "bad.json").string() + " " + (tmp.path / "ok.json").string() +
                   " --seed 1 --out " + (tmp.path / "cmp").string());
    EXPECT_EQ(res.exit_code, 2);  // failure reported...
    const std::string counts = slurp(tmp.path / "cmp" / "triangle_counts.csv");
    EXPECT_NE(counts.find("ok,4"), std::string::npos);  // ...but the rest completed
}

TEST(Cli, AnalyzeIsByteIdenticalAcrossRuns) {
    TmpDir tmp;
    std::ofstream(tmp.path / "ff.json") << R"({"model":"ff","n":400,"p_forward":0.4})";
    run("generate " + (tmp.path / "ff.json").string() + " --seed 2 --out " +
        (tmp.path / "g.txt").string());
    run("analyze " + (tmp.path / "g.txt").string() + " --out " + (tmp.path / "o1").string());
    run("analyze " + (tmp.path / "g.txt").string() + " --out " + (tmp.path / "o2").string());
    for (const char* f : {"summary.json", "buckets.csv", "buckets_binned.csv", "ratios.csv",
                          "cumulative.csv", "cc_by_degree.csv"})
        EXPECT_EQ(slurp(tmp.path / "o1" / f), slurp(tmp.path / "o2" / f)) << f;
}
