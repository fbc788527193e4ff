#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "jeq/partition_io.hpp"

namespace {

struct Result {
    int code = 0;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Result r;
    r.code = jeq::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / ("jeq_cli_" + std::to_string(counter_++))) {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("construct then verify") {
    TempDir dir;
    const auto p = dir.file("p.txt");
    auto r = run({"construct", "--family", "pi2", "--pairs", "1:5,2:6,3:7,4:8", "--out", p});
    REQUIRE(r.code == 0);
    CHECK(r.json()["schema"] == 1);
    CHECK(r.json()["quotient"] == nlohmann::json::parse("[[9,6],[8,7]]"));
    r = run({"verify", p});
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["equitable"] == true);
    CHECK(j["quotient"] == nlohmann::json::parse("[[9,6],[8,7]]"));
    CHECK(j["theta"] == 1);
}

TEST_CASE("construct to stdout in both formats") {
    auto r = run({"construct", "--family", "pi1", "--m", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n=6 w=3\n", 0) == 0);
    r = run({"construct", "--family", "pi3", "--m", "4", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.json()["n"] == 8);
    r = run({"construct", "--family", "three", "--m", "5"});
    CHECK(r.code == 0);
    CHECK(r.json()["equitable"] == true);
    CHECK(r.json()["quotient"] == nlohmann::json::parse("[[6,6,9],[3,9,9],[3,6,12]]"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"construct", "--family", "pi9", "--m", "4"}).code == 2);
    CHECK(run({"construct", "--family", "pi1"}).code == 2);
    CHECK(run({"construct", "--family", "pi1", "--m", "4", "--pairs", "1:5,2:6,3:7,4:8"}).code == 2);
    CHECK(run({"construct", "--family", "pi1", "--pairs", "1:2,3:4"}).code == 2);
    CHECK(run({"construct", "--family", "pi1", "--m", "11"}).code == 2);
    CHECK(run({"verify", "/nonexistent/file.txt"}).code == 2);
    CHECK(run({"search", "--n", "15"}).code == 2);
    CHECK(run({"search", "--n", "8", "--matrix", "9,6;8"}).code == 2);
    CHECK(run({"search", "--n", "8", "--matrix", "9,6;8,8"}).code == 2);
    CHECK(run({"search", "--n", "8", "--theta", "2"}).code == 2);
    CHECK(run({"search", "--n", "8", "--symmetry", "sideways"}).code == 2);
    CHECK(run({"report", "--n", "9"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify reports a witness on a non-equitable file") {
    TempDir dir;
    const auto p = dir.file("bad.txt");
    std::string labels(56, '2');
    labels[0] = '1';
    labels[5] = '1';
    jeq::write_file(p, "n=8 w=3\n" + labels + "\n");
    const auto r = run({"verify", p});
    CHECK(r.code == 1);
    CHECK(r.json()["equitable"] == false);
    CHECK(r.json()["witness"]["vertex"].is_string());
}

TEST_CASE("empty cell and malformed files are input errors") {
    TempDir dir;
    const auto p = dir.file("all2.txt");
    jeq::write_file(p, "n=6 w=3\n" + std::string(20, '2') + "\n");
    CHECK(run({"verify", p}).code == 2);
    jeq::write_file(p, "n=6 w=3\n1212x\n");
    const auto r = run({"verify", p});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2, column 5") != std::string::npos);
}

TEST_CASE("analyze reports") {
    TempDir dir;
    const auto p = dir.file("p.txt");
    REQUIRE(run({"construct", "--family", "pi2", "--m", "4", "--out", p}).code == 0);
    auto r = run({"analyze", "--report", "supports", p});
    CHECK(r.code == 0);
    CHECK(r.json()["holds"] == true);
    CHECK(r.json()["lhs"] == 2304);
    r = run({"analyze", "--partition", p, "--report", "identities"});
    CHECK(r.code == 0);
    CHECK(r.json()["five_term"]["failed"] == 0);
    CHECK(r.json()["five_term"]["checked"] == 8 * 7 * 6 * 5 * 4);
    r = run({"analyze", "--partition", p, "--report", "differences"});
    CHECK(r.code == 0);
    CHECK(r.json()["differences"].size() == 28);
    CHECK(run({"analyze", "--partition", p, "--report", "nonsense"}).code == 2);
}

TEST_CASE("nbarray and classify") {
    TempDir dir;
    const auto p = dir.file("p.txt");
    REQUIRE(run({"construct", "--family", "pi1", "--m", "6", "--out", p}).code == 0);
    auto r = run({"nbarray", "--partition", p, "--vertex", "1,2,7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("case: V.i") != std::string::npos);
    r = run({"nbarray", "--partition", p, "--all", "--summary"});
    CHECK(r.code == 0);
    CHECK(r.json()["cases"]["V.i"] == r.json()["cell1_vertices"]);
    CHECK(run({"nbarray", "--partition", p}).code == 2);
    CHECK(run({"nbarray", "--partition", p, "--vertex", "1,2,13"}).code == 2);
    r = run({"classify", "--partition", p});
    CHECK(r.code == 0);
    CHECK(r.json()["family"] == "Pi1");
    CHECK(r.json()["certified"] == true);
    CHECK(r.json()["structure"]["bipartition"] == nlohmann::json::parse("[[1,2,3,4,5,6],[7,8,9,10,11,12]]"));
}

TEST_CASE("search writes solutions in partition format") {
    TempDir dir;
    const auto out = dir.file("sol.txt");
    auto r = run({"search", "--n", "8", "--theta", "auto", "--matrix", "13,2;12,3", "--symmetry", "dedup", "--budget-nodes", "1e9", "--out", out});
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["complete"] == true);
    CHECK(j["reports"][0]["solutions"] == 1);
    CHECK(j["reports"][0]["raw_solutions"] == 35);
    CHECK(j["reports"][0]["families"]["Pi1"] == 1);
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(jeq::parse_partitions(buf.str()).size() == 1);
}

TEST_CASE("search budget exhaustion exits 1 with a partial report") {
    const auto r = run({"search", "--n", "8", "--matrix", "9,6;8,7", "--budget-nodes", "20", "--no-spectral"});
    CHECK(r.code == 1);
    CHECK(r.json()["complete"] == false);
    CHECK(r.json()["reports"][0]["frontier"].get<int>() > 0);
}

TEST_CASE("report at n=10") {
    const auto r = run({"report", "--n", "10"});
    CHECK(r.code == 0);
    const auto j = r.json();
    CHECK(j["symmetry"] == "canonical");
    CHECK(j["complete"] == true);
    CHECK(j["uncertified"] == 0);
}

}
