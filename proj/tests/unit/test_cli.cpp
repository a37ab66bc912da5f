#include "commands.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mollify");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = mollify::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempConfig {
public:
    explicit TempConfig(const std::string& text) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("mollify_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
        std::ofstream(path_) << text;
    }
    ~TempConfig() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

nlohmann::json results(const Outcome& o) { return nlohmann::json::parse(o.out).at("results"); }

const char* kEval = R"({"k": 0, "mollifier": {"P": ["1"]}})";

}  // namespace

TEST_CASE("eval reports exact values") {
    TempConfig cfg(kEval);
    const auto o = invoke({"--config", cfg.path(), "eval"});
    REQUIRE(o.code == 0);
    const auto r = results(o);
    CHECK(r.at("proportion") == "1/3");
    CHECK(r.at("proportion_decimal") == "0.333333");
    CHECK(r.at("c2") == "3");
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc.at("metadata").at("main_terms_only") == true);
    CHECK(doc.at("command") == "eval");
}

TEST_CASE("output is deterministic") {
    TempConfig cfg(R"({"k": 1, "mollifier": {"P": ["0.87", 0, "0.13"], "Q": ["0.15", "-0.11"]}})");
    const auto a = invoke({"--config", cfg.path(), "eval"});
    const auto b = invoke({"--config", cfg.path(), "eval"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = invoke({"--config", cfg.path(), "--csv", "eval"});
    const auto d = invoke({"--config", cfg.path(), "--csv", "eval"});
    CHECK(c.out == d.out);
    CHECK(c.out.find("proportion_decimal,0.755") != std::string::npos);
}

TEST_CASE("format and precision from the config, overridden by flags") {
    TempConfig cfg(R"({"k": 0, "mollifier": {"P": ["1"]}, "precision": 3, "format": "csv"})");
    const auto o = invoke({"--config", cfg.path(), "eval"});
    CHECK(o.code == 0);
    CHECK(o.out.find("proportion_decimal,0.333\n") != std::string::npos);
    const auto p = invoke({"--config", cfg.path(), "--precision", "10", "eval"});
    CHECK(p.out.find("proportion_decimal,0.3333333333\n") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"eval"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"--precision", "99", "table1"}).code == 2);

    TempConfig unknown(R"({"k": 0, "mollifier": {"P": ["1"]}, "colour": 1})");
    const auto u = invoke({"--config", unknown.path(), "eval"});
    CHECK(u.code == 2);
    CHECK(u.err.find("colour") != std::string::npos);

    TempConfig zero(R"({"k": 0, "mollifier": {"P": ["0"]}})");
    CHECK(invoke({"--config", zero.path(), "eval"}).code == 1);

    TempConfig bad_json("{not json");
    CHECK(invoke({"--config", bad_json.path(), "eval"}).code == 2);
    CHECK(invoke({"--config", "/nonexistent/mollify.json", "eval"}).code == 2);

    TempConfig bad_delta(R"({"k": 0, "mollifier": {"delta1": "1/2", "delta2": "1", "P": ["1"], "Q": ["1"]}})");
    CHECK(invoke({"--config", bad_delta.path(), "eval"}).code == 2);
}

TEST_CASE("optimize") {
    TempConfig cfg(R"({"dP": 2, "dQ": 2, "k": 0})");
    const auto o = invoke({"--config", cfg.path(), "optimize"});
    REQUIRE(o.code == 0);
    CHECK(results(o).at("optimum_decimal") == "0.341120");
    CHECK(results(o).at("normalized") == true);
}

TEST_CASE("table1 runs without a config") {
    const auto o = invoke({"table1"});
    REQUIRE(o.code == 0);
    const auto r = results(o);
    CHECK(r.at("rows").size() == 4);
    CHECK(r.at("all_within_tolerance") == false);
    CHECK(r.at("rows").at(1).at("within_tolerance") == true);
}

TEST_CASE("rank-bound presets") {
    TempConfig two(R"({"p_small": "two-piece"})");
    const auto o = invoke({"--config", two.path(), "rank-bound"});
    REQUIRE(o.code == 0);
    CHECK(results(o).at("total") == "1.065622");

    TempConfig unit(R"({"p_small": ["1", "1"], "large_k": "unity"})");
    const auto z = invoke({"--config", unit.path(), "rank-bound"});
    REQUIRE(z.code == 0);
    CHECK(results(z).at("total") == "0.000000");

    TempConfig bad(R"({"p_small": "three-piece"})");
    CHECK(invoke({"--config", bad.path(), "rank-bound"}).code == 2);
}

TEST_CASE("verify passes and catches an injected fault") {
    TempConfig ok(R"({"specs": 2, "ks": [0, 1]})");
    const auto o = invoke({"--config", ok.path(), "verify"});
    CHECK(o.code == 0);
    CHECK(results(o).at("passed") == true);

    TempConfig fault(R"({"specs": 2, "ks": [0], "inject_fault": true})");
    const auto f = invoke({"--config", fault.path(), "verify"});
    CHECK(f.code == 1);
    CHECK(f.err.find("oracle k=0 spec=0") != std::string::npos);
}
