#include "latent/staging.hpp"

#include "latent/lambda.hpp"

namespace latent::staging {

using lambda::env_of;

StagedEnv bind_val(Value v, const StagedEnv& nv) {
    StagedEnv out;
    out.slots.reserve(nv.slots.size() + 2);
    out.slots.emplace_back(Forward{nv.slots.size()});
    out.slots.insert(out.slots.end(), nv.slots.begin(), nv.slots.end());
    out.slots.emplace_back(std::move(v));
    return out;
}

namespace {

StagedEnv tail_from(const StagedEnv& nv, std::size_t start) {
    StagedEnv out;
    out.slots.assign(nv.slots.begin() + static_cast<std::ptrdiff_t>(start), nv.slots.end());
    return out;
}

}  // namespace

Value lookup_val(const StagedEnv& env, std::int64_t x) {
    StagedEnv nv = env;
    for (;;) {
        if (nv.slots.empty() || x < 0) throw EvalError("bad index");
        const Slot& head = nv.slots.front();
        if (x == 0) {
            if (std::holds_alternative<Hole>(head)) throw EvalError("quote error");
            if (const auto* f = std::get_if<Forward>(&head)) {
                x = static_cast<std::int64_t>(f->offset);
                nv = tail_from(nv, 1);
                continue;
            }
            Value v = std::get<Value>(head);
            return cover(v, tail_from(nv, 1));
        }
        nv = tail_from(nv, 1);
        --x;
    }
}

Value cover(const Value& v, const StagedEnv& nv) {
    if (auto c = v.as_closure(); c && c->env.is_staged()) {
        return Value::closure(c->index, Environment::staged(combine(c->env.slots(), nv)));
    }
    if (auto c = v.as_code(); c && c->env.is_staged()) {
        return Value::code(c->index, Environment::staged(combine(c->env.slots(), nv)));
    }
    return v;
}

StagedEnv combine(const StagedEnv& nv1, const StagedEnv& nv2) {
    StagedEnv out;
    const auto& a = nv1.slots;
    const auto& b = nv2.slots;
    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
        if (i == a.size()) {
            out.slots.insert(out.slots.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
            return out;
        }
        if (!std::holds_alternative<Hole>(a[i])) {
            out.slots.push_back(a[i]);
            ++i;
            continue;
        }
        if (j == b.size()) {
            out.slots.insert(out.slots.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
            return out;
        }
        if (const auto* f = std::get_if<Forward>(&b[j])) {
            std::size_t rest = a.size() - i - 1;
            out.slots.emplace_back(Forward{f->offset + rest});
        } else {
            out.slots.push_back(b[j]);
        }
        ++i;
        ++j;
    }
}

Environment bind_value(Value v, const Environment& env) {
    if (env.is_staged()) return Environment::staged(bind_val(std::move(v), env.slots()));
    return env.prepend(std::move(v));
}

Value lookup_value(const Environment& env, std::int64_t x) {
    if (env.is_staged()) return lookup_val(env.slots(), x);
    return env.at(x);
}

namespace {

EffectTree with_env(EnvModifier f, EffectTree sub) { return ops::local(std::move(f), std::move(sub)); }

EffectTree replace_env(Environment env, EffectTree sub) {
    Value fixed = Value::env(std::move(env));
    return with_env([fixed](const Value&) { return fixed; }, std::move(sub));
}

std::size_t pointer(const Value& p) { return static_cast<std::size_t>(*p.as_int()); }

}  // namespace

EffectTree quote(EffectTree m) {
    return then(ops::suspend(std::move(m)), [](const Value& p) {
        return then(ops::ask(), [p](const Value& nv) { return pure(Value::code(pointer(p), env_of(nv))); });
    });
}

EffectTree unquote(EffectTree m) {
    return then(m, [](const Value& v) {
        auto code = v.as_code();
        if (!code) throw EvalError("bad unquote");
        return replace_env(code->env, ops::enact(code->index));
    });
}

EffectTree push(std::int64_t n, EffectTree m) {
    if (n < 0) throw EvalError("push expects a non-negative count");
    return with_env(
        [n](const Value& r) {
            Environment env = env_of(r);
            StagedEnv out;
            out.slots.assign(static_cast<std::size_t>(n), Hole{});
            const auto& rest = env.slots().slots;
            out.slots.insert(out.slots.end(), rest.begin(), rest.end());
            return Value::env(Environment::staged(std::move(out)));
        },
        std::move(m));
}

EffectTree splice(EffectTree m) {
    return then(m, [](const Value& v) {
        auto code = v.as_code();
        if (!code) throw EvalError("bad unquote");
        Environment captured = code->env;
        return with_env(
            [captured](const Value& r) {
                return Value::env(Environment::staged(combine(captured.slots(), env_of(r).slots())));
            },
            ops::enact(code->index));
    });
}

EffectTree abs_val(EffectTree body) {
    return then(ops::ask(), [body = std::move(body)](const Value& nv) {
        return then(ops::suspend(body),
                    [nv](const Value& p) { return pure(Value::closure(pointer(p), env_of(nv))); });
    });
}

EffectTree var_val(std::int64_t n) {
    return then(ops::ask(), [n](const Value& nv) { return pure(lookup_value(env_of(nv), n)); });
}

EffectTree app_val(EffectTree fn, EffectTree arg) {
    return then(fn, [arg = std::move(arg)](const Value& vf) {
        return then(arg, [vf](const Value& va) {
            auto clos = vf.as_closure();
            if (!clos) throw EvalError("application error");
            return replace_env(bind_value(va, clos->env), ops::enact(clos->index));
        });
    });
}

}  // namespace latent::staging
