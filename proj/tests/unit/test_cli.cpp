#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "support/fixtures.hpp"

using namespace latent;
using namespace latent::cli;
using fixtures::I;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(LATENT_PROGRAMS_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunReport run_file(const std::string& name, const std::string& pipe, lang::Strategy s = lang::Strategy::CBV) {
    return run_program(*parse_program(slurp(name)), parse_pipeline(pipe), s);
}

}  // namespace

TEST_CASE("parsing") {
    CHECK(*parse_program("(+ (num 1) (num 2))") == *lang::add(lang::num(1), lang::num(2)));
    CHECK(*parse_program("; note\n(print \"a\\nb\")") == *lang::print("a\nb"));
    CHECK(*parse_program("(seq (get))") == *lang::seq({lang::get()}));
}

TEST_CASE("the shipped two-puts program parses to the expected tree") {
    using namespace lang;
    auto expected =
        seq({put(num(1)), let(seq({put(num(2)), app(letvar(0), num(3))}), lam(add(var(0), get())))});
    CHECK(*parse_program(slurp("prog.sexp")) == *expected);
    CHECK(*parse_program(slurp("stage1.sexp")) == *fixtures::staging_example());
    CHECK(*parse_program(slurp("puzzle.sexp")) == *fixtures::puzzle());
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_program("(+ (num 1)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("unexpected end of input") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("(num 1) (num 2)"), ParseError);
    CHECK_THROWS_AS(parse_program("(frobnicate)"), ParseError);
    CHECK_THROWS_AS(parse_program("(print \"open"), ParseError);
    CHECK_THROWS_AS(parse_program("(num x)"), ParseError);
    try {
        parse_program("\n\n  (num 1 2)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("printing then parsing gives the same program") {
    std::mt19937 rng(4);
    for (int i = 0; i < 50; ++i) {
        auto prog = fixtures::random_program(rng, 5);
        CHECK(*parse_program(lang::to_sexp(*prog)) == *prog);
    }
    auto staged = fixtures::run_puzzle_on(1, 2);
    CHECK(*parse_program(lang::to_sexp(*staged)) == *staged);
}

TEST_CASE("pipeline specs") {
    auto p = parse_pipeline("mut=-3, abs-cs ,end");
    REQUIRE(p.handlers.size() == 3);
    CHECK(p.handlers[0].init == -3);
    CHECK(p.has("abs-cs"));
    CHECK_FALSE(p.has("read"));
    for (const char* bad : {"", "mut,end", "mut=x,end", "read", "end,read,end", "end,plus", "bogus,end",
                            "plus=1,end", "plus,,end"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_pipeline(bad), lang::ConfigError);
    }
}

TEST_CASE("shipped programs") {
    auto prog = run_file("prog.sexp", "mut=0,abs-cs,plus,end");
    CHECK(*prog.value == I(5));
    CHECK(*run_file("lazy.sexp", "mut=0,read,suspend,thunk,end", lang::Strategy::Need).value == I(0));
    CHECK(*run_file("lazy.sexp", "mut=0,read,suspend,eager,plus,end", lang::Strategy::Need).value == I(42));
    CHECK(*run_file("puzzle_run.sexp", "suspend,read-staged,plus,end").value == I(13));
    CHECK(run_file("bad_app.sexp", "abs-cs,plus,end").error == "application error");
}

TEST_CASE("json reports") {
    auto report = run_file("prog.sexp", "mut=0,abs-cs,plus,end");
    auto j = nlohmann::json::parse(render_json(report));
    CHECK(j["value"] == 5);
    CHECK(j["prints"].empty());
    CHECK(j["states"][0]["abs"] == 2);
    CHECK(j["states"][1]["mut"] == 2);
    CHECK_FALSE(j.contains("error"));

    auto stage = nlohmann::json::parse(render_json(run_file("stage1.sexp", "suspend,read-staged,plus,print,end")));
    CHECK(stage["prints"] == nlohmann::json::array({"foo", "bar"}));

    auto code = nlohmann::json::parse(render_json(run_file("puzzle.sexp", "suspend,read-staged,plus,end")));
    CHECK(code["value"].contains("code"));

    auto bad = nlohmann::json::parse(render_json(run_file("bad_app.sexp", "abs-cs,plus,end")));
    CHECK(bad["error"] == "application error");
    CHECK(bad["value"].is_null());

    RunReport failed;
    failed.failure = Value::text("boom");
    CHECK(nlohmann::json::parse(render_json(failed))["failure"] == "boom");
}

TEST_CASE("identical runs render identically") {
    auto a = render_json(run_file("need_probe.sexp", "suspend,thunk,read,plus,print,end", lang::Strategy::Need));
    auto b = render_json(run_file("need_probe.sexp", "suspend,thunk,read,plus,print,end", lang::Strategy::Need));
    CHECK(a == b);
}
