#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tg/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "transgress");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = tg::run((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "tg_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("info") {
    auto r = run({"info", "--group", "cyclic:4:mod2"});
    REQUIRE(r.code == tg::EXIT_OK);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["order"] == 4);
    CHECK(j["kernel_order"] == 2);
    CHECK(j["unoriented_quotient_loop"]["components"] == 2);
    auto inl = run({"info", "--group", R"({"family":"dihedral","n":3})"});
    REQUIRE(inl.code == 0);
    CHECK(nlohmann::json::parse(inl.out)["order"] == 6);
}

TEST_CASE("counts from the command line") {
    auto r = run({"count", "--group", "product_Z2:Z3", "--cocycle", "trivial", "--degree", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j[0]["value_formula"] == "2");
    CHECK(j[0]["agree"] == true);
    CHECK(j[1]["value_formula"] == "3");

    auto q = run({"count", "--group", "cyclic:4:mod2", "--cocycle", "quaternionic", "--degree", "2", "--format", "text"});
    REQUIRE(q.code == 0);
    CHECK(q.out.find("agree      yes") != std::string::npos);

    auto f = run({"count", "--group", "cyclic:4:mod2", "--cocycle", "trivial", "--degree", "1"});
    REQUIRE(f.code == 0);
    CHECK(nlohmann::json::parse(f.out)[0]["value_formula"] == "1/2");
}

TEST_CASE("solver output feeds back in as a cocycle file") {
    auto c = run({"cocycles", "--group", "cyclic:4:mod2", "--degree", "2", "--order", "4"});
    REQUIRE(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    REQUIRE_FALSE(j["cocycles"].empty());
    auto path = scratch("theta.json");
    std::ofstream(path) << j["cocycles"][0].dump();
    auto r = run({"count", "--group", "cyclic:4:mod2", "--cocycle", path.string(), "--degree", "2"});
    CHECK(r.code == 0);
    auto s = run({"count", "--group", "cyclic:4:mod2", "--cocycle", "solver:0", "--degree", "2", "--order", "4"});
    CHECK(s.code == 0);
    CHECK(s.out == r.out);
}

TEST_CASE("outputs are deterministic") {
    std::vector<std::vector<std::string>> cmds{
        {"torsion", "--group", "dihedral:4", "--cocycle", "random", "--degree", "3", "--order", "4", "--seed", "3",
         "--threads", "4"},
        {"transgress", "--group", "dihedral:3", "--cocycle", "random", "--degree", "2", "--map", "tau_ref", "--seed", "5"},
        {"double", "--group", "cyclic:4:mod2", "--cocycle", "trivial", "--degree", "3"},
    };
    for (auto& c : cmds) {
        auto a = run(c), b = run(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
    auto t1 = run({"torsion", "--group", "dihedral:4", "--cocycle", "random", "--degree", "3", "--seed", "3",
                   "--threads", "1"});
    auto t4 = run({"torsion", "--group", "dihedral:4", "--cocycle", "random", "--degree", "3", "--seed", "3",
                   "--threads", "4"});
    CHECK(t1.out == t4.out);
}

TEST_CASE("out file") {
    auto path = scratch("info.json");
    fs::remove(path);
    auto r = run({"info", "--group", "cyclic:2:mod2", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(nlohmann::json::parse(in)["order"] == 2);
}

TEST_CASE("exit codes") {
    CHECK(run({"info", "--group", "cyclic:3:mod2"}).code == tg::EXIT_INPUT);
    CHECK(run({"info", "--group", "frob:3"}).code == tg::EXIT_INPUT);
    CHECK(run({"count", "--group", "cyclic:4:mod2", "--cocycle", "nonesuch", "--degree", "2"}).code == tg::EXIT_INPUT);
    CHECK(run({"count", "--group", "cyclic:4:mod2", "--cocycle", "/no/such/file.json", "--degree", "2"}).code ==
          tg::EXIT_INPUT);
    CHECK(run({"bogus"}).code == tg::EXIT_INPUT);
    auto b = run({"double", "--group", "cyclic:4:mod2", "--cocycle", "trivial", "--degree", "3", "--budget", "5"});
    CHECK(b.code == tg::EXIT_BUDGET);
    CHECK(b.err.find("budget") != std::string::npos);

    // a cochain that is not closed
    nlohmann::json bad = {{"degree", 2},
                          {"twist", "pi"},
                          {"values", {{{"tuple", {"1", "1"}}, {"phase", "1/3"}}}}};
    auto path = scratch("bad.json");
    std::ofstream(path) << bad.dump();
    auto r = run({"count", "--group", "cyclic:4:mod2", "--cocycle", path.string(), "--degree", "2"});
    CHECK(r.code == tg::EXIT_INPUT);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("verify with a small manifest") {
    nlohmann::json m = {{"suite", {"cyclic:4:mod2"}},
                        {"solver_order", 2},
                        {"lift_families", nlohmann::json::array({nlohmann::json::array({"cyclic:4:mod2", "product_Z2:Z2"})})},
                        {"quasi_bialgebra_groups", {"cyclic:4:mod2"}},
                        {"small_groups", {"product_Z2:Z1", "cyclic:4:mod2"}}};
    auto path = scratch("manifest.json");
    std::ofstream(path) << m.dump();
    auto r = run({"verify", "--manifest", path.string(), "--seed", "1"});
    CHECK(r.code == tg::EXIT_OK);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["properties"].size() == 12);
    CHECK(r.err.find("PASS") != std::string::npos);
    CHECK(run({"verify", "--manifest", path.string(), "--seed", "1"}).out == r.out);
}
