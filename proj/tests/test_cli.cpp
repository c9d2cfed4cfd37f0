#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "treelap/cli.hpp"
#include "treelap/io.hpp"

using namespace treelap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() / ("treelap_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify: tree passes, triangle fails, garbage is a parse error") {
    TempDir dir;
    std::string tree = dir.file("tree.json", R"({"n": 3, "edges": [[1, 2], [2, 3]]})");
    CliResult ok = run({"verify", tree});
    CHECK(ok.code == 0);
    auto report = nlohmann::json::parse(ok.out);
    CHECK(report["is_tree"] == true);
    CHECK(report["all_hold"] == true);
    CHECK(report["identity"]["residual_full"].get<double>() <= 1e-12);
    CHECK(report["spherical_edm"]["value"].get<double>() == doctest::Approx(1.0));

    std::string triangle = dir.file("triangle.json", R"({"n": 3, "edges": [[1,2],[1,3],[2,3]]})");
    CliResult bad = run({"verify", triangle});
    CHECK(bad.code == 1);
    auto bad_report = nlohmann::json::parse(bad.out);
    CHECK(bad_report["is_tree"] == false);
    CHECK(bad_report["distance_recovery"]["solvable"] == false);

    std::string garbage = dir.file("garbage.json", "{not json");
    CHECK(run({"verify", garbage}).code == 2);
    CHECK(run({"verify", dir.file("missing.json")}).code == 2);

    // single vertex: constructors accept it, the identity checks reject it
    std::string lone = dir.file("lone.json", R"({"n": 1, "edges": []})");
    CHECK(run({"verify", lone}).code == 1);

    std::string split = dir.file("split.json", R"({"n": 4, "edges": [[1,2],[3,4]]})");
    CliResult disconnected = run({"verify", split});
    CHECK(disconnected.code == 1);
    CHECK(nlohmann::json::parse(disconnected.out)["distance_recovery"]["solvable"] == false);
}

TEST_CASE("verify with an explicit distance file") {
    TempDir dir;
    std::string tree = dir.file("tree.json", R"({"n": 2, "edges": [[1, 2]]})");
    std::string good = dir.file("d.csv", "0,1\n1,0\n");
    CHECK(run({"verify", tree, "--distance", good}).code == 0);

    std::string wrong = dir.file("wrong.csv", "0,2\n2,0\n");
    CHECK(run({"verify", tree, "--distance", wrong}).code == 1);

    std::string ragged = dir.file("ragged.csv", "0,1\n1\n");
    CHECK(run({"verify", tree, "--distance", ragged}).code == 2);
}

TEST_CASE("emit writes models and reports counts") {
    TempDir dir;
    std::string out = dir.file("model.lp");
    CliResult r = run({"emit", "--n", "4", "--objective", "wiener", "--out", out});
    CHECK(r.code == 0);
    CHECK(r.err.find("binaries=6") != std::string::npos);
    std::string lp = read_file(out);
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("x_1_2") != std::string::npos);

    // full formulation has n^2 equalities, reduced n(n-1)/2
    CliResult full = run({"emit", "--n", "6", "--formulation", "full", "--format", "json"});
    auto fj = nlohmann::json::parse(full.out);
    long long full_eq = 0, reduced_eq = 0;
    for (const auto& c : fj["constraints"])
        full_eq += c["name"].get<std::string>().rfind("char_", 0) == 0;
    CHECK(full_eq == 36);
    CliResult reduced = run({"emit", "--n", "6", "--formulation", "reduced", "--format", "json"});
    auto rj = nlohmann::json::parse(reduced.out);
    for (const auto& c : rj["constraints"])
        reduced_eq += c["name"].get<std::string>().rfind("char_", 0) == 0;
    CHECK(reduced_eq == 15);

    CHECK(run({"emit", "--n", "4", "--force-edge", "1,2", "--ban-edge", "1,2"}).code == 1);
    CHECK(run({"emit", "--n", "4", "--objective", "weighted"}).code == 1);  // demand missing
    CHECK(run({"emit", "--n", "1"}).code == 1);
}

TEST_CASE("check judges solutions and exit codes") {
    TempDir dir;
    std::string model_path = dir.file("model.json");
    CHECK(run({"emit", "--n", "4", "--format", "json", "--out", model_path}).code == 0);

    // an assignment induced by the star tree, written as name/value lines
    CliResult emit_json = run({"emit", "--n", "4", "--format", "json"});
    auto model = nlohmann::json::parse(emit_json.out);
    std::ostringstream sol;
    for (const auto& v : model["variables"]) {
        std::string name = v["name"];
        double value = 0.0;
        auto is = [&](const char* s) { return name == s; };
        if (is("x_1_2") || is("x_1_3") || is("x_1_4")) value = 1.0;
        if (is("d_1_2") || is("d_1_3") || is("d_1_4")) value = 1.0;
        if (is("d_2_3") || is("d_2_4") || is("d_3_4")) value = 2.0;
        if (name[0] == 'y') {
            // y_u_s_w = x_us * d_sw for the star rooted at 1
            int u = name[2] - '0', s = name[4] - '0', w = name[6] - '0';
            bool edge = (u == 1 || s == 1);
            double dist = (s == 1 || w == 1) ? 1.0 : 2.0;
            value = edge ? dist : 0.0;
        }
        sol << name << " " << value << "\n";
    }
    std::string good = dir.file("good.sol", sol.str());
    CliResult ok = run({"check", model_path, good});
    CHECK(ok.code == 0);
    auto ok_report = nlohmann::json::parse(ok.out);
    CHECK(ok_report["feasible"] == true);
    CHECK(ok_report["tree_ok"] == true);
    CHECK(ok_report["distances_match"] == true);

    // break an equality: claim a cycle
    std::string cyclic_text = sol.str();
    cyclic_text.replace(cyclic_text.find("x_2_3 0"), 7, "x_2_3 1");
    std::string cyclic = dir.file("cyclic.sol", cyclic_text);
    CliResult bad = run({"check", model_path, cyclic});
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.out)["feasible"] == false);

    std::string truncated = dir.file("truncated.sol", "x_1_2 1\n");
    CHECK(run({"check", model_path, truncated}).code == 2);
}

TEST_CASE("oracle subcommand") {
    CliResult lo = run({"oracle", "--n", "5", "--sense", "min"});
    CHECK(lo.code == 0);
    auto report = nlohmann::json::parse(lo.out);
    CHECK(report["best_value"] == 16.0);
    CHECK(report["evaluated"] == 125);

    CliResult hi = run({"oracle", "--n", "7", "--sense", "max"});
    CHECK(nlohmann::json::parse(hi.out)["best_value"] == 56.0);

    // determinism across worker counts
    CliResult w1 = run({"oracle", "--n", "6", "--sense", "max", "--workers", "1"});
    CliResult w8 = run({"oracle", "--n", "6", "--sense", "max", "--workers", "8"});
    CHECK(w1.out == w8.out);

    CHECK(run({"oracle", "--n", "12"}).code == 1);  // beyond the ceiling
    CHECK(run({"oracle", "--n", "4", "--ban-edge", "1,2", "--ban-edge", "1,3", "--ban-edge", "1,4",
               "--ban-edge", "2,3", "--ban-edge", "2,4", "--ban-edge", "3,4"})
              .code == 1);
}

TEST_CASE("converse-check subcommand") {
    CliResult r = run({"converse-check", "--n", "4"});
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(r.out);
    CHECK(report["graphs"] == 64);
    CHECK(report["solvable"] == 16);
    CHECK(report["ok"] == true);

    CHECK(run({"converse-check", "--n", "7"}).code == 1);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
