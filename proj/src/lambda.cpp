#include "latent/lambda.hpp"

namespace latent::lambda {

Environment env_of(const Value& v) {
    auto e = v.as_env();
    if (!e) throw EvalError("expected an environment, got " + to_string(v));
    return *e;
}

namespace {

EffectTree replace_env(Environment env, EffectTree sub) {
    Value fixed = Value::env(std::move(env));
    return ops::local([fixed](const Value&) { return fixed; }, std::move(sub));
}

// abs for both bundles: capture the environment, suspend the body.
EffectTree abs_suspended(EffectTree body) {
    return then(ops::ask(), [body = std::move(body)](const Value& nv) {
        return then(ops::suspend(body), [nv](const Value& p) {
            return pure(Value::closure(static_cast<std::size_t>(*p.as_int()), env_of(nv)));
        });
    });
}

}  // namespace

EffectTree abs_lazy(EffectTree body) { return abs_suspended(std::move(body)); }

EffectTree var_lazy(std::int64_t n) {
    return then(ops::ask(), [n](const Value& nv) {
        Value v = env_of(nv).at(n);
        if (auto th = v.as_thunk()) return replace_env(th->env, ops::force(th->index));
        return pure(v);
    });
}

EffectTree app_lazy(EffectTree fn, EffectTree arg) {
    return then(fn, [arg = std::move(arg)](const Value& vf) {
        return then(ops::ask(), [vf, arg](const Value& nv) {
            return then(ops::thunk(arg), [vf, nv](const Value& p) {
                Value th = Value::thunk_ref(static_cast<std::size_t>(*p.as_int()), env_of(nv));
                auto clos = vf.as_closure();
                if (!clos) throw EvalError("application error");
                return replace_env(clos->env.prepend(th), ops::enact(clos->index));
            });
        });
    });
}

EffectTree abs_cbn(EffectTree body) { return abs_suspended(std::move(body)); }

EffectTree var_cbn(std::int64_t n) {
    return then(ops::ask(), [n](const Value& nv) {
        Value v = env_of(nv).at(n);
        if (auto code = v.as_code()) return replace_env(code->env, ops::enact(code->index));
        return pure(v);
    });
}

EffectTree app_cbn(EffectTree fn, EffectTree arg) {
    return then(fn, [arg = std::move(arg)](const Value& vf) {
        return then(ops::ask(), [vf, arg](const Value& nv) {
            return then(ops::suspend(arg), [vf, nv](const Value& p) {
                Value th = Value::code(static_cast<std::size_t>(*p.as_int()), env_of(nv));
                auto clos = vf.as_closure();
                if (!clos) throw EvalError("application error");
                return replace_env(clos->env.prepend(th), ops::enact(clos->index));
            });
        });
    });
}

LCPtr lc_return(Value v) { return std::make_shared<const LC>(LC{LC::Return{std::move(v)}}); }

LCPtr lc_var(std::int64_t n, LCCont k) { return std::make_shared<const LC>(LC{LC::Var{n, std::move(k)}}); }

LCPtr lc_app(Value f, Value a, LCCont k) {
    return std::make_shared<const LC>(LC{LC::App{std::move(f), std::move(a), std::move(k)}});
}

LCPtr lc_abs(LCPtr body, LCCont k) { return std::make_shared<const LC>(LC{LC::Abs{std::move(body), std::move(k)}}); }

OracleResult oracle_handle_abs(std::vector<Value> env, std::vector<LCPtr> store, const LCPtr& input,
                               std::size_t* fuel) {
    LCPtr t = input;
    for (;;) {
        if (fuel) {
            if (*fuel == 0) throw StepLimitExceeded();
            --*fuel;
        }
        if (const auto* r = std::get_if<LC::Return>(&t->node)) return {std::move(store), r->value};
        if (const auto* v = std::get_if<LC::Var>(&t->node)) {
            if (v->index < 0 || static_cast<std::size_t>(v->index) >= env.size()) throw EvalError("bad index");
            t = v->k(env[static_cast<std::size_t>(v->index)]);
            continue;
        }
        if (const auto* a = std::get_if<LC::App>(&t->node)) {
            auto clos = a->fn.as_closure();
            if (!clos) throw EvalError("application error");
            if (clos->index >= store.size()) throw EvalError("bad index");
            std::vector<Value> inner{a->arg};
            const auto& captured = clos->env.values();
            inner.insert(inner.end(), captured.begin(), captured.end());
            LCPtr body = store[clos->index];
            auto res = oracle_handle_abs(std::move(inner), std::move(store), body, fuel);
            store = std::move(res.store);
            t = a->k(res.value);
            continue;
        }
        const auto& ab = std::get<LC::Abs>(t->node);
        Value clos = Value::closure(store.size(), Environment::plain(env));
        store.push_back(ab.body);
        t = ab.k(clos);
    }
}

}  // namespace latent::lambda
