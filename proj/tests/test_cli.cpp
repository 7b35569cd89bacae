#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghx/cli.hpp"
#include "ghx/matrix_io.hpp"
#include "ghx/metric_space.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Scratch directory for matrix files fed to the command line layer.
fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ghx_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << content;
    out.close();
    return p.string();
}

std::string space_file(const std::string& name, const ghx::FiniteMetricSpace& x) {
    return write_file(name, ghx::write_distance_matrix(x));
}

struct RunResult {
    int code = 0;
    std::string text;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out;
    int code = ghx::cli::run(args, out);
    return RunResult{code, out.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    auto res = run(std::move(args));
    REQUIRE(res.code == 0);
    return json::parse(res.text);
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Timing is the one legitimately unstable line of a report.
std::string strip_wall_ms(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("wall_ms:", 0) != 0) out << line << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("validate: accepts good files and reports exact values") {
    auto p1 = write_file("one.txt", "1\n0\n");
    auto res = run({"validate", p1});
    CHECK(res.code == 0);
    CHECK(contains(res.text, "status: ok"));
    CHECK(contains(res.text, "n: 1"));

    auto p3 = write_file("thirds.txt",
                         "3\n0 1/3 2/3\n1/3 0 1/3\n2/3 1/3 0\n");
    res = run({"validate", p3});
    CHECK(res.code == 0);
    CHECK(contains(res.text, "diam: 2/3"));
    CHECK(contains(res.text, "min_positive_distance: 1/3"));
    CHECK(contains(res.text, "0 1/3 2/3"));  // canonical matrix echo

    auto j = run_json({"validate", p3});
    CHECK(j["result"]["status"] == "ok");
    CHECK(j["result"]["diam"] == "2/3");
    CHECK(j["result"]["one_distance_space"] == false);
    CHECK(j["input"]["n"] == 3);
    CHECK(j["input"]["digest"].get<std::string>().size() == 16);
}

TEST_CASE("validate: rejects bad files with category and exit code 2") {
    auto bad = write_file("asym.txt", "2\n0 1\n2 0\n");
    auto res = run({"validate", bad});
    CHECK(res.code == 2);
    CHECK(contains(res.text, "error_kind: not_symmetric"));
    CHECK(contains(res.text, "(1,0)"));

    auto garbled = write_file("garbled.txt", "2\n0 1\n1 zero\n");
    res = run({"validate", garbled});
    CHECK(res.code == 2);
    CHECK(contains(res.text, "error_kind: parse_error"));
    CHECK(contains(res.text, "line 3"));

    res = run({"validate", (scratch_dir() / "missing.txt").string()});
    CHECK(res.code == 2);
    CHECK(contains(res.text, "error_kind: io_error"));
}

TEST_CASE("dist: certificates for tiny canonical pairs") {
    auto d1 = space_file("d1.txt", ghx::simplex(1, 1));
    auto d2 = space_file("d2.txt", ghx::simplex(2, 1));
    auto d3 = space_file("d3.txt", ghx::simplex(3, 1));

    auto j = run_json({"dist", d1, d2});
    CHECK(j["result"]["d_gh"] == "1/2");
    CHECK(j["result"]["min_distortion"] == "1");

    j = run_json({"dist", d2, d2});
    CHECK(j["result"]["d_gh"] == "0");
    CHECK(j["result"]["witness"]["x0"] == json::array({0}));
    CHECK(j["result"]["witness"]["x1"] == json::array({1}));

    j = run_json({"dist", d2, d3});
    CHECK(j["result"]["d_gh"] == "1/2");
    CHECK(j["result"]["nodes"].get<std::uint64_t>() >= 1);

    auto res = run({"dist", d2, d3});
    CHECK(res.code == 0);
    CHECK(contains(res.text, "d_gh: 1/2"));
    CHECK(contains(res.text, "optimality:"));
}

TEST_CASE("dist: reports are deterministic apart from timing") {
    auto a = space_file("deta.txt", oracle::line_space({"0", "1/2", "1", "3"}));
    auto b = space_file("detb.txt", ghx::simplex(3, 2));
    auto r1 = run({"dist", a, b});
    auto r2 = run({"dist", a, b});
    CHECK(r1.code == 0);
    CHECK(strip_wall_ms(r1.text) == strip_wall_ms(r2.text));

    auto j1 = run_json({"dist", a, b});
    auto j2 = run_json({"dist", a, b});
    j1.erase("wall_ms");
    j2.erase("wall_ms");
    CHECK(j1 == j2);
}

TEST_CASE("simplex-dist: formula result with search cross-check") {
    auto line = space_file("line012.txt", oracle::line_space({"0", "1", "2"}));
    auto j = run_json({"simplex-dist", line, "-m", "2", "--lambda", "3"});
    CHECK(j["result"]["d_gh"] == "1");
    CHECK(j["result"]["routing"] == "large_lambda");
    CHECK(j["result"]["large_lambda_value"] == "1");
    CHECK(j["result"]["cross_check"]["match"] == true);
    CHECK(j["result"]["d_m"] == "1");
    CHECK(j["result"]["alpha_m"] == "1");

    auto d3 = space_file("d3b.txt", ghx::simplex(3, 1));
    j = run_json({"simplex-dist", d3, "-m", "2", "--lambda", "1"});
    CHECK(j["result"]["d_gh"] == "1/2");
    CHECK(j["result"]["routing"] == "general");
    CHECK(j["result"]["cross_check"]["match"] == true);

    auto res = run({"simplex-dist", line, "-m", "1", "--lambda", "1"});
    CHECK(res.code == 4);
    CHECK(contains(res.text, "error_kind: bad_cardinal"));
}

TEST_CASE("invariants: partition quantities and the cover number") {
    auto d4 = space_file("d4.txt", ghx::simplex(4, 1));
    auto j = run_json({"invariants", d4, "-m", "2"});
    CHECK(j["result"]["diam"] == "1");
    CHECK(j["result"]["d_m"] == "1");
    CHECK(j["result"]["alpha_m"] == "1");
    CHECK(j["result"]["cover_number_below_diam"] == 4);
    CHECK(j["result"]["partitions_enumerated"] == 7);  // S(4,2)

    auto line = space_file("half.txt", oracle::line_space({"0", "1/2", "1"}));
    j = run_json({"invariants", line, "-m", "2"});
    CHECK(j["result"]["diam"] == "1");
    CHECK(j["result"]["d_m"] == "1/2");
    CHECK(j["result"]["alpha_m"] == "1/2");
    CHECK(j["result"]["cover_number_below_diam"] == 2);

    auto d1 = space_file("d1b.txt", ghx::simplex(1, 1));
    auto res = run({"invariants", d1, "-m", "1"});
    CHECK(res.code == 4);
    CHECK(contains(res.text, "error_kind: single_point"));
}

TEST_CASE("between: exact additivity verdicts") {
    auto d1 = space_file("bd1.txt", ghx::simplex(1, 1));
    auto mid = space_file("bmid.txt", ghx::simplex(3, ghx::Rational(1, 2)));
    auto d3 = space_file("bd3.txt", ghx::simplex(3, 1));

    auto j = run_json({"between", d1, mid, d3});
    CHECK(j["result"]["between"] == true);
    CHECK(j["result"]["d_xy"] == "1/4");
    CHECK(j["result"]["d_yz"] == "1/4");
    CHECK(j["result"]["d_xz"] == "1/2");

    auto d2 = space_file("bd2.txt", ghx::simplex(2, 1));
    auto big = space_file("bbig.txt", ghx::simplex(2, 2));
    j = run_json({"between", d3, d2, big});
    CHECK(j["result"]["between"] == false);
}

TEST_CASE("extend-check: certificate and witness reporting") {
    auto d3 = space_file("ed3.txt", ghx::simplex(3, 1));
    auto d2 = space_file("ed2.txt", ghx::simplex(2, 1));

    auto j = run_json({"extend-check", d3, d2});
    CHECK(j["result"]["classification"] == "mutually_hyperextreme");
    REQUIRE(!j["result"]["nonextendable_beyond_y"].is_null());
    CHECK(j["result"]["nonextendable_beyond_y"]["m"] == 2);
    CHECK(j["result"]["nonextendable_beyond_y"]["n"] == 3);
    CHECK(j["result"]["extension_beyond_y"].is_null());

    auto far = space_file("efar.txt", ghx::simplex(2, 3));
    j = run_json({"extend-check", d2, far});
    CHECK(j["result"]["classification"] == "subextreme");
    CHECK(j["result"]["nonextendable_beyond_y"].is_null());
    REQUIRE(!j["result"]["extension_beyond_y"].is_null());
    CHECK(j["result"]["extension_beyond_y"]["kind"] == "two_point_extension");
    CHECK(j["result"]["extension_beyond_y"]["certificate"]["between"] == true);

    j = run_json({"extend-check", d2, d3});
    CHECK(j["result"]["nonextendable_beyond_y"].is_null());
    CHECK(j["result"]["extension_beyond_y"]["kind"] == "larger_simplex");
}

TEST_CASE("geodesic: sampled straight-line interpolation") {
    auto d1 = space_file("gd1.txt", ghx::simplex(1, 1));
    auto d2 = space_file("gd2.txt", ghx::simplex(2, 1));

    auto j = run_json({"geodesic", d1, d2, "--t", "0,1/2,1"});
    CHECK(j["result"]["d_gh"] == "1/2");
    CHECK(j["result"]["epsilon"] == "0");
    CHECK(j["result"]["dis_r"] == "1");
    auto& half = j["result"]["samples"]["t=1/2"];
    CHECK(half["n"] == 2);
    CHECK(half["merged"] == false);
    CHECK(half["diam"] == "1/2");
    CHECK(half["matrix"]["row0"] == "0 1/2");

    // Endpoint samples collapse back to the inputs.
    CHECK(j["result"]["samples"]["t=0"]["n"] == 1);
    CHECK(j["result"]["samples"]["t=1"]["diam"] == "1");

    auto res = run({"geodesic", d1, d2, "--t", "2"});
    CHECK(res.code == 4);
    CHECK(contains(res.text, "error_kind: parameter_out_of_range"));
}

TEST_CASE("budget exhaustion exits 3 with proven bounds") {
    std::mt19937 rng(1u);
    auto x = space_file("bx.txt", oracle::random_space(rng, 6));
    auto y = space_file("by.txt", oracle::random_space(rng, 6));
    auto res = run({"dist", x, y, "--budget", "10"});
    CHECK(res.code == 3);
    CHECK(contains(res.text, "error_kind: budget_exceeded"));
    CHECK(contains(res.text, "proven_lower_bound:"));
    CHECK(contains(res.text, "proven_upper_bound:"));
}

TEST_CASE("usage problems exit 2, help exits 0") {
    auto res = run({});
    CHECK(res.code == 0);  // plain help

    res = run({"--help"});
    CHECK(res.code == 0);
    CHECK(contains(res.text, "validate"));

    res = run({"no-such-command"});
    CHECK(res.code == 2);
    CHECK(contains(res.text, "error_kind: usage"));

    res = run({"dist", "only-one-path"});
    CHECK(res.code == 2);
    CHECK(contains(res.text, "error_kind: usage"));
}

TEST_CASE("json and text reports carry the same result fields") {
    auto d2 = space_file("pair2.txt", ghx::simplex(2, 1));
    auto d3 = space_file("pair3.txt", ghx::simplex(3, 1));
    auto j = run_json({"dist", d2, d3});
    auto text = run({"dist", d2, d3}).text;
    // Every scalar leaf of the JSON result appears in the text render.
    for (auto& [key, value] : j["result"].items()) {
        if (value.is_string())
            CHECK(contains(text, key + ": " + value.get<std::string>()));
        else if (value.is_number_unsigned() && key != "nodes")
            CHECK(contains(
                text, key + ": " + std::to_string(value.get<std::uint64_t>())));
    }
    CHECK(contains(text, "command: dist"));
}
