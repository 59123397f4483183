#pragma once

// Shared programs and random generators for the unit and acceptance suites.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "latent/cli.hpp"
#include "latent/effects.hpp"
#include "latent/lambda.hpp"
#include "latent/lang.hpp"
#include "latent/staging.hpp"

namespace fixtures {

using namespace latent;

inline Value I(std::int64_t n) { return Value::integer(n); }

inline std::int64_t int_or_zero(const Value& v) { return v.as_int().value_or(0); }

// put 1; f <- abs (m <- var 0; n <- get; return (m + n)); put 2; app f 3
inline EffectTree two_puts_program() {
    EffectTree body = then(ops::var(0), [](const Value& m) {
        return then(ops::get(), [m](const Value& n) { return pure(I(*m.as_int() + *n.as_int())); });
    });
    return then(ops::put(I(1)), [body](const Value&) {
        return then(ops::abs(body), [](const Value& f) {
            return then(ops::put(I(2)), [f](const Value&) { return ops::app(f, I(3)); });
        });
    });
}

// app_lazy (abs_lazy get) (put 42; get)
inline EffectTree lazy_program() {
    EffectTree arg = then(ops::put(I(42)), [](const Value&) { return ops::get(); });
    return lambda::app_lazy(lambda::abs_lazy(ops::get()), arg);
}

// letbind (print "foo"; quote (num 2)) in unquote (quote (print "bar"; 1 + splice (var 0)))
inline lang::AstPtr staging_example() {
    using namespace lang;
    auto body = unquote(quote(seq({print("bar"), add(num(1), splice(letvar(0)))})));
    auto bound = seq({print("foo"), quote(num(2))});
    return let(body, bound);
}

// let T = fn e => <fn x => x + ~e> in <fn x => ~(T <x>)>
inline lang::AstPtr puzzle() {
    using namespace lang;
    auto t_body = let(quote(lam(add(var(0), splice(var(1))))), push(1, var(1)));
    auto main_body = let(quote(lam(splice(var(1)))), push(1, app(var(1), quote(var(0)))));
    return let(main_body, lam(t_body));
}

inline lang::AstPtr run_puzzle_on(std::int64_t a, std::int64_t b) {
    using namespace lang;
    return app(app(unquote(puzzle()), num(a)), num(b));
}

// The argument prints once per evaluation and is used twice.
inline lang::AstPtr print_probe() {
    using namespace lang;
    return app(lam(add(var(0), var(0))), seq({print("x"), num(2)}));
}

inline cli::RunReport run(const EffectTree& t, const std::string& pipeline,
                          std::shared_ptr<ThunkProbe> probe = nullptr) {
    return cli::run_tree(t, cli::parse_pipeline(pipeline), cli::RunOptions{std::move(probe)});
}

inline cli::RunReport run(const lang::Ast& a, const std::string& pipeline, lang::Strategy s,
                          std::shared_ptr<ThunkProbe> probe = nullptr) {
    return cli::run_program(a, cli::parse_pipeline(pipeline), s, cli::RunOptions{std::move(probe)});
}

// Random trees over Mutating and Adding. A program is a list of steps; each
// step may use the value produced by the previous one.
struct Step {
    enum Kind { Get, Put, Nat, Plus } kind;
    std::int64_t k;
};

inline std::vector<Step> random_steps(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> lit(-5, 20);
    std::vector<Step> out(static_cast<std::size_t>(len(rng)));
    for (auto& s : out) s = Step{static_cast<Step::Kind>(kind(rng)), lit(rng)};
    return out;
}

inline EffectTree build_steps(const std::vector<Step>& steps, std::size_t i, Value prev) {
    if (i == steps.size()) return pure(prev);
    const Step& s = steps[i];
    EffectTree op = [&] {
        switch (s.kind) {
            case Step::Get: return ops::get();
            case Step::Put: return ops::put(I(int_or_zero(prev) + s.k));
            case Step::Nat: return ops::nat(s.k);
            case Step::Plus: break;
        }
        return ops::plus(I(int_or_zero(prev)), I(s.k));
    }();
    return then(op, [steps, i](const Value& v) { return build_steps(steps, i + 1, v); });
}

inline EffectTree build_steps(const std::vector<Step>& steps, Value start) {
    return build_steps(steps, 0, std::move(start));
}

// Closed untyped lambda terms with integer literals.
struct Term {
    enum Kind { Var, Lam, App, Lit } kind;
    std::int64_t n = 0;
    std::shared_ptr<const Term> a;
    std::shared_ptr<const Term> b;
};
using TermPtr = std::shared_ptr<const Term>;

inline TermPtr random_term(std::mt19937& rng, int depth, int binders) {
    std::uniform_int_distribution<int> pick(0, 9);
    int r = depth <= 1 ? pick(rng) % 3 : pick(rng);
    // 0: literal, 1-2: variable (when bound), 3-5: lambda, 6-9: application
    if (r == 0 || (r <= 2 && binders == 0) || depth <= 1) {
        if (r >= 1 && r <= 2 && binders > 0) {
            return std::make_shared<Term>(Term{Term::Var, std::uniform_int_distribution<int>(0, binders - 1)(rng)});
        }
        return std::make_shared<Term>(Term{Term::Lit, std::uniform_int_distribution<int>(0, 9)(rng)});
    }
    if (r <= 2) return std::make_shared<Term>(Term{Term::Var, std::uniform_int_distribution<int>(0, binders - 1)(rng)});
    if (r <= 5) return std::make_shared<Term>(Term{Term::Lam, 0, random_term(rng, depth - 1, binders + 1)});
    return std::make_shared<Term>(
        Term{Term::App, 0, random_term(rng, depth - 1, binders), random_term(rng, depth - 1, binders)});
}

inline lambda::LCPtr to_lc(const TermPtr& t, const lambda::LCCont& k) {
    switch (t->kind) {
        case Term::Var: return lambda::lc_var(t->n, k);
        case Term::Lit: return k(I(t->n));
        case Term::Lam: return lambda::lc_abs(to_lc(t->a, lambda::lc_return), k);
        case Term::App: break;
    }
    TermPtr arg = t->b;
    return to_lc(t->a, [arg, k](const Value& f) {
        return to_lc(arg, [f, k](const Value& x) { return lambda::lc_app(f, x, k); });
    });
}

inline EffectTree to_tree(const TermPtr& t) {
    switch (t->kind) {
        case Term::Var: return ops::var(t->n);
        case Term::Lit: return pure(I(t->n));
        case Term::Lam: return ops::abs(to_tree(t->a));
        case Term::App: break;
    }
    EffectTree arg = to_tree(t->b);
    return then(to_tree(t->a), [arg](const Value& f) {
        return then(arg, [f](const Value& x) { return ops::app(f, x); });
    });
}

inline std::string show(const TermPtr& t) {
    switch (t->kind) {
        case Term::Var: return "#" + std::to_string(t->n);
        case Term::Lit: return std::to_string(t->n);
        case Term::Lam: return "(\\ " + show(t->a) + ")";
        case Term::App: break;
    }
    return "(" + show(t->a) + " " + show(t->b) + ")";
}

// Terminating programs over state, arithmetic and abstraction. Only syntactic
// lambdas are applied and every variable holds an integer.
inline lang::AstPtr random_int_expr(std::mt19937& rng, int depth, int binders) {
    using namespace lang;
    std::uniform_int_distribution<int> pick(0, depth <= 1 ? 2 : 7);
    std::uniform_int_distribution<int> lit(0, 9);
    switch (pick(rng)) {
        case 0: return num(lit(rng));
        case 1: return get();
        case 2:
            if (binders > 0) return var(std::uniform_int_distribution<int>(0, binders - 1)(rng));
            return num(lit(rng));
        case 3:
        case 4: return add(random_int_expr(rng, depth - 1, binders), random_int_expr(rng, depth - 1, binders));
        case 5:
            return seq({put(random_int_expr(rng, depth - 1, binders)), random_int_expr(rng, depth - 1, binders)});
        default:
            return app(lam(random_int_expr(rng, depth - 1, binders + 1)), random_int_expr(rng, depth - 1, binders));
    }
}

inline lang::AstPtr random_program(std::mt19937& rng, int depth) {
    if (std::uniform_int_distribution<int>(0, 4)(rng) == 0) return lang::lam(random_int_expr(rng, depth - 1, 1));
    return random_int_expr(rng, depth, 0);
}

}  // namespace fixtures
