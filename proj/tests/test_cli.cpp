#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scs/cli.hpp"

using namespace scs::cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct EnvVar {
    std::string name;
    EnvVar(std::string n, const std::string& v) : name(std::move(n)) { ::setenv(name.c_str(), v.c_str(), 1); }
    ~EnvVar() { ::unsetenv(name.c_str()); }
};

std::string meta_value(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line, prefix = "# " + key + ": ";
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    return {};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("scs_test_cli_" + name);
}

}  // namespace

TEST_CASE("parse_range and parse_point") {
    CHECK(parse_range("0..3") == std::pair{0, 3});
    CHECK(parse_range("5") == std::pair{5, 5});
    CHECK_THROWS_AS(parse_range("3..x"), UsageError);
    CHECK_THROWS_AS(parse_range("4..2"), UsageError);
    CHECK_THROWS_AS(parse_range("0..13"), UsageError);
    CHECK_THROWS_AS(parse_range(""), UsageError);
    scs::PhasePoint p = parse_point("1,0.5,0,0.1");
    CHECK(p.theta == 1.0);
    CHECK(p.l == 0.1);
    CHECK_THROWS_AS(parse_point("1,0.5,0"), UsageError);
    CHECK_THROWS_AS(parse_point("1,0.5,0,-1"), UsageError);
}

TEST_CASE("moments: CSV layout and exit 0") {
    Run r = run({"moments", "0..2"});
    REQUIRE(r.code == 0);
    CHECK(meta_value(r.out, "command") == "moments");
    CHECK(meta_value(r.out, "seed") == "1");
    CHECK(meta_value(r.out, "pass") == "true");
    CHECK(r.out.find("j,moment,target,rel_error,tolerance,pass\n0,") != std::string::npos);
    Report rep = cmd_moments({0, 0}, RunConfig{});
    REQUIRE(rep.rows.size() == 1);
    CHECK(std::abs(std::get<double>(rep.rows[0][1]) - 1.0) < 1e-10);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"moments"}).code == 2);
    CHECK(run({"moments", "3..x"}).code == 2);
    CHECK(run({"moments", "0..20"}).code == 2);
    CHECK(run({"gram", "--tol", "2"}).code == 2);
    CHECK(run({"gram", "--format", "xml"}).code == 2);
    CHECK(run({"gram", "--j-max", "-3"}).code == 2);
    CHECK(run({"husimi", "--point", "1,2"}).code == 2);
    CHECK(run({"overlap", "--pair", "1,0,0,0"}).code == 2);
    Run h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("moments") != std::string::npos);
}

TEST_CASE("numeric failure exits 1 and reports on stderr") {
    Run r = run({"moments", "0..1", "--tol", "1e-20"});
    CHECK(r.code == 1);
    CHECK(meta_value(r.out, "pass") == "false");
    CHECK(r.err.find("scs moments:") != std::string::npos);
}

TEST_CASE("io failures exit 3") {
    CHECK(run({"moments", "0", "--out", "/nonexistent-dir/x.csv"}).code == 3);
    CHECK(run({"moments", "0", "--config", "/nonexistent-dir/cfg.toml"}).code == 3);
}

TEST_CASE("--out writes the report to a file") {
    auto path = temp_file("out.csv");
    Run r = run({"moments", "0..1", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    CHECK(meta_value(s.str(), "command") == "moments");
    std::filesystem::remove(path);
}

TEST_CASE("gram passes at the default j_max and emits JSON") {
    Run r = run({"gram", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "gram");
    CHECK(j["pass"] == true);
    CHECK(j["meta"]["j_max"] == 2);
    CHECK(j["meta"]["max_deviation"].get<double>() <= 1e-6);
    CHECK(j["failures"].empty());
    CHECK(j["rows"].size() == 81);
    CHECK(j["rows"][0].contains(j["columns"][0].get<std::string>()));
}

TEST_CASE("operators passes at the defaults") {
    Run r = run({"operators"});
    CHECK(r.code == 0);
    CHECK(meta_value(r.out, "pass") == "true");
}

TEST_CASE("same seed gives identical bytes, a different seed does not") {
    std::vector<std::string> a{"overlap", "--points", "5", "--seed", "7"};
    Run x = run(a), y = run(a);
    REQUIRE(x.code == 0);
    CHECK(x.out == y.out);
    CHECK(meta_value(x.out, "seed") == "7");
    Run z = run({"overlap", "--points", "5", "--seed", "8"});
    CHECK(z.out != x.out);
    Run r1 = run({"reproduce", "--j-max", "1", "--points", "3", "--seed", "4"});
    Run r2 = run({"reproduce", "--j-max", "1", "--points", "3", "--seed", "4"});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
}

TEST_CASE("overlap with explicit pairs") {
    Run r = run({"overlap", "--pair", "1,2,0.5,0.3;0.4,5,1,0.2", "--pair", "0,0,0,0;0,0,0,0", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["meta"]["pairs"] == 2);
    CHECK(j["meta"]["source"] == "explicit");
    CHECK(std::abs(j["meta"]["n3_overlap"].get<double>() - 1.41844264) < 1e-7);
}

TEST_CASE("husimi field output") {
    Run r = run({"husimi", "--n-theta", "40", "--n-phi", "80"});
    REQUIRE(r.code == 0);
    CHECK(meta_value(r.out, "command") == "husimi");
    CHECK(std::abs(std::stod(meta_value(r.out, "normalization")) - 1.0) < 1e-8);
    CHECK(r.out.find("theta,phi,value\n") != std::string::npos);

    Run j = run({"husimi", "--n-theta", "20", "--n-phi", "40", "--format", "json", "--point", "0.5,1,0,0"});
    REQUIRE(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["field"]["values"].size() == 800);
    CHECK(doc["nearest"].contains("theta_index"));
}

TEST_CASE("precedence: flag over environment over config file") {
    auto cfg = temp_file("cfg.toml");
    {
        std::ofstream f(cfg);
        f << "seed = 11\nj-max = 11\n";
    }
    Run c = run({"overlap", "--points", "2", "--config", cfg.string()});
    REQUIRE(c.code == 0);
    CHECK(meta_value(c.out, "seed") == "11");
    CHECK(meta_value(c.out, "j_max") == "11");
    {
        EnvVar e("SCS_SEED", "22");
        Run r = run({"overlap", "--points", "2", "--config", cfg.string()});
        CHECK(meta_value(r.out, "seed") == "22");
        CHECK(meta_value(r.out, "j_max") == "11");
        Run f = run({"overlap", "--points", "2", "--config", cfg.string(), "--seed", "33"});
        CHECK(meta_value(f.out, "seed") == "33");
    }
    {
        EnvVar e("SCS_CONFIG", cfg.string());
        CHECK(meta_value(run({"overlap", "--points", "2"}).out, "seed") == "11");
    }
    {
        EnvVar e("SCS_FORMAT", "json");
        CHECK(nlohmann::json::parse(run({"moments", "0"}).out)["command"] == "moments");
    }
    std::filesystem::remove(cfg);
}
