#include <string>
#include <vector>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace latent;
using namespace latent::lambda;
using fixtures::I;
using fixtures::run;

namespace {

EffectTree seq2(EffectTree a, EffectTree b) {
    return then(a, [b](const Value&) { return b; });
}

EffectTree double_use(EffectTree (*abs)(EffectTree), EffectTree (*var)(std::int64_t),
                      EffectTree (*app)(EffectTree, EffectTree)) {
    auto body = then(var(0), [var](const Value& a) {
        return then(var(0), [a](const Value& b) { return ops::plus(a, b); });
    });
    return app(abs(body), seq2(ops::print("x"), ops::nat(2)));
}

}  // namespace

TEST_CASE("oracle: identity applied to one") {
    // (\x. x) 1
    auto t = lc_abs(lc_var(0, lc_return), [](const Value& f) { return lc_app(f, I(1), lc_return); });
    auto r = oracle_handle_abs({}, {}, t);
    CHECK(r.value == I(1));
    CHECK(r.store.size() == 1);
}

TEST_CASE("oracle: return leaves the store alone") {
    auto r = oracle_handle_abs({}, {lc_return(I(0))}, lc_return(I(9)));
    CHECK(r.value == I(9));
    CHECK(r.store.size() == 1);
}

TEST_CASE("oracle: errors and the step budget") {
    CHECK_THROWS_WITH(oracle_handle_abs({}, {}, lc_app(I(3), I(1), lc_return)), "application error");
    CHECK_THROWS_WITH(oracle_handle_abs({}, {}, lc_var(0, lc_return)), "bad index");
    // (\x. x x) (\x. x x)
    auto self = [] {
        return lc_var(0, [](const Value& f) { return lc_app(f, f, lc_return); });
    };
    auto omega = lc_abs(self(), [self](const Value& f) {
        return lc_abs(self(), [f](const Value& g) { return lc_app(f, g, lc_return); });
    });
    std::size_t fuel = 500;
    CHECK_THROWS_AS(oracle_handle_abs({}, {}, omega, &fuel), StepLimitExceeded);
}

TEST_CASE("oracle and call-site handler agree on random terms") {
    std::mt19937 rng(11);
    int compared = 0;
    for (int i = 0; i < 400 && compared < 100; ++i) {
        auto term = fixtures::random_term(rng, 4, 0);
        std::size_t fuel = 5000;
        try {
            auto expected = oracle_handle_abs({}, {}, fixtures::to_lc(term, lc_return), &fuel).value;
            auto got = run(fixtures::to_tree(term), "abs-cs,end");
            CAPTURE(fixtures::show(term));
            REQUIRE(got.value.has_value());
            CHECK(*got.value == expected);
            ++compared;
        } catch (const StepLimitExceeded&) {
        } catch (const EvalError& e) {
            CHECK(run(fixtures::to_tree(term), "abs-cs,end").error == std::string(e.what()));
            ++compared;
        }
    }
    CHECK(compared >= 100);
}

TEST_CASE("lazy bundle") {
    CHECK(*run(fixtures::lazy_program(), "mut=0,read,suspend,thunk,end").value == I(0));
    CHECK(*run(fixtures::lazy_program(), "mut=0,read,suspend,eager,end").value == I(42));

    auto probe = std::make_shared<ThunkProbe>();
    auto r = run(double_use(abs_lazy, var_lazy, app_lazy), "suspend,thunk,read,plus,print,end", probe);
    CHECK(*r.value == I(4));
    CHECK(r.prints == std::vector<std::string>{"x"});
    CHECK(probe->max_runs() == 1);
}

TEST_CASE("call-by-name bundle") {
    auto r = run(double_use(abs_cbn, var_cbn, app_cbn), "suspend,read,plus,print,end");
    CHECK(*r.value == I(4));
    CHECK(r.prints == std::vector<std::string>{"x", "x"});

    auto unused = app_cbn(abs_cbn(ops::nat(0)), seq2(ops::put(I(42)), ops::get()));
    auto u = run(unused, "mut=0,suspend,read,plus,end");
    CHECK(*u.value == I(0));
    CHECK(std::get<MutState>(u.states.back()).value == I(0));

    auto plain = h_end(h_read(Value::env(Environment::plain({I(7)})), var_cbn(0)));
    CHECK(plain.core_value() == I(7));
}

TEST_CASE("unused arguments leave no trace under either strategy") {
    auto arg = seq2(ops::print("never"), seq2(ops::put(I(42)), ops::nat(1)));
    auto lazy = run(app_lazy(abs_lazy(ops::nat(5)), arg), "mut=0,suspend,thunk,read,plus,print,end");
    auto cbn = run(app_cbn(abs_cbn(ops::nat(5)), arg), "mut=0,suspend,read,plus,print,end");
    for (const auto& r : {lazy, cbn}) {
        CHECK(*r.value == I(5));
        CHECK(r.prints.empty());
        CHECK(std::get<MutState>(r.states.back()).value == I(0));
    }
}

TEST_CASE("bundles reject non-closures") {
    CHECK(run(app_lazy(ops::nat(3), ops::nat(1)), "suspend,thunk,read,plus,end").error == "application error");
    CHECK(run(app_cbn(ops::nat(3), ops::nat(1)), "suspend,read,plus,end").error == "application error");
    CHECK(run(var_lazy(2), "read,end").error == "bad index");
}
