#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_corpus.hpp"
#include "relhorn/json_io.hpp"
#include "support.hpp"

using namespace relhorn;
using namespace testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("relhorn-test-" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("corpus commands: exit codes, parseable and deterministic output") {
    for (const auto& c : corpus_commands()) {
        auto args = expand(c, RELHORN_DATA_DIR);
        CAPTURE(args[1]);
        CAPTURE(args.back());
        auto a = run(args);
        CHECK(a.code == c.exit_code);
        CHECK(a.err.empty());
        auto j = json::parse_text(a.out);
        CHECK(j.at("format") == 1);
        CHECK(j.at("command") == c.args[0]);
        auto b = run(args);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("reports carry the expected verdicts") {
    auto exp = json::parse_text(run(expand({{"exponential", "--theory", "@preord.theory.json", "--base",
                                             "@chain2.structure.json", "--target", "@chain2.structure.json",
                                             "--verify"},
                                            0},
                                           RELHORN_DATA_DIR))
                                    .out);
    CHECK(exp.at("object").at("carrier").size() == 3);
    CHECK(exp.at("verification").at("passed") == true);

    auto cls = json::parse_text(
        run(expand({{"classify", "--theory", "@preord.theory.json"}, 0}, RELHORN_DATA_DIR)).out);
    CHECK(cls.at("cartesian_closed") == true);
    CHECK(cls.at("locally_cartesian_closed") == false);

    auto ss = json::parse_text(
        run(expand({{"schema-safety", "--theory", "@chain3-lukasiewicz-pmet.theory.json"}, 0}, RELHORN_DATA_DIR)).out);
    bool counterexample = false;
    for (const auto& s : ss.at("schemas")) {
        counterexample = counterexample || !s.at("meet_counterexample").is_null();
    }
    CHECK(counterexample);
}

TEST_CASE("input errors exit 2 with a location") {
    auto bad = temp_file("bad.json", "{\n  \"carrier\": [\"a\",\n}");
    auto r = run({"relhorn", "check-model", "--theory", data("preord.theory.json"), "--structure", bad});
    CHECK(r.code == cli::kInputError);
    CHECK(r.out.empty());
    CHECK(r.err.find(bad + ":3:") != std::string::npos);

    auto mismatch = run({"relhorn", "check-model", "--theory", data("preord.theory.json"), "--structure",
                         data("path2.structure.json")});
    CHECK(mismatch.code == cli::kInputError);
    CHECK_FALSE(mismatch.err.empty());

    CHECK(run({"relhorn"}).code == cli::kInputError);
    CHECK(run({"relhorn", "nonsense"}).code == cli::kInputError);
    CHECK(run({"relhorn", "check-model", "--theory", "/nonexistent.json", "--structure", bad}).code ==
          cli::kInputError);
    CHECK(run({"relhorn", "limit", "product", "--theory", data("preord.theory.json")}).code == cli::kInputError);
    CHECK(run({"relhorn", "entails", "--theory", data("preord.theory.json"), "--formula", "lt x y => le x y"})
              .code == cli::kInputError);
    CHECK(run({"relhorn", "exponential", "--theory", data("preord.theory.json"), "--base",
               data("chain2.structure.json"), "--target", data("chain2.structure.json"), "--max-q", "9"})
              .code == cli::kInputError);
    auto nonmorphism = run({"relhorn", "convexity", "--theory", data("preord.theory.json"), "--morphism",
                            temp_file("nm.json", R"({"source":{"carrier":["a","b"],"edges":[["le","a","b"]]},
"target":{"carrier":["a","b"],"edges":[["le","b","a"]]},"map":{"a":"a","b":"b"}})")});
    CHECK(nonmorphism.code == cli::kInputError);
}

TEST_CASE("seed and cap change only the sampled family") {
    auto args = expand({{"partial-product", "--theory", "@preord.theory.json", "--morphism",
                         "@chain3-onto-chain2.morphism.json", "--target", "@chain2.structure.json", "--verify",
                         "--max-q", "3"},
                        0},
                       RELHORN_DATA_DIR);
    auto capped = args;
    capped.insert(capped.begin() + 1, {"--cap", "4", "--seed", "9"});
    auto a = run(capped);
    auto b = run(capped);
    CHECK(a.code == cli::kAffirmative);
    CHECK(a.out == b.out);
    auto j = json::parse_text(a.out);
    CHECK(j.at("verification").at("test_objects") == 4);
    CHECK(json::parse_text(run(args).out).at("verification").at("test_objects") == 14);
}

} // TEST_SUITE
