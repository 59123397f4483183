#include "latent/effects.hpp"

#include <algorithm>

namespace latent {

namespace {

OpInstance op(Effect e, std::string name, std::vector<Value> payload = {}) {
    OpInstance o;
    o.effect = e;
    o.name = std::move(name);
    o.payload = std::move(payload);
    return o;
}

bool is_op(const EffectTree::Node& n, Effect e, const char* name) {
    return n.op.effect == e && n.op.name == name;
}

std::size_t index_of(const Value& v) {
    auto n = v.as_int();
    if (!n || *n < 0) throw EvalError("bad index");
    return static_cast<std::size_t>(*n);
}

Value index_value(std::size_t i) { return Value::integer(static_cast<std::int64_t>(i)); }

template <typename S>
const S& state_as(const HandlerState& s) {
    if (const S* p = std::get_if<S>(&s)) return *p;
    throw EvalError("layer mismatch: unexpected handler state " + state_kind(s));
}

using Recurse = std::function<EffectTree(const HandlerState&, const EffectTree&)>;

// Forward a foreign node through a handler that keeps a state layer.
EffectTree forward_state(const EffectTree::Node& n, HandlerState s, Recurse rec) {
    return EffectTree::node(
        n.op, n.ctx.push_state(std::move(s)),
        [sub = n.sub, rec](const SubKey& key, const LatentCtx& l) {
            auto [s2, inner] = l.pop_state();
            return rec(s2, sub(key, inner));
        },
        [k = n.cont, rec](const LatentVal& lv) {
            auto [s2, inner] = lv.pop_state();
            return rec(s2, k(inner));
        });
}

// Forward a foreign node through a handler that adds no layer.
EffectTree forward_plain(const EffectTree::Node& n, const std::function<EffectTree(const EffectTree&)>& rec) {
    return EffectTree::node(
        n.op, n.ctx, [sub = n.sub, rec](const SubKey& key, const LatentCtx& l) { return rec(sub(key, l)); },
        [k = n.cont, rec](const LatentVal& lv) { return rec(k(lv)); });
}

// Forward through a handler that adds an either layer.
EffectTree forward_either(const EffectTree::Node& n, const std::function<EffectTree(const EffectTree&)>& rec) {
    return EffectTree::node(
        n.op, n.ctx.push_right(),
        [sub = n.sub, rec](const SubKey& key, const LatentCtx& l) { return rec(sub(key, l.pop_right())); },
        [k = n.cont, rec](const LatentVal& lv) {
            if (lv.is_bare_failure()) return EffectTree::leaf(lv);
            return rec(k(lv.pop_right()));
        });
}

Suspension select_one(const SubFn& sub) {
    return [sub](const LatentCtx& l) { return sub(OneKey{}, l); };
}

}  // namespace

namespace ops {

EffectTree ask() { return no_sub_node(op(Effect::Reading, "ask")); }

EffectTree local(EnvModifier f, EffectTree sub) {
    auto o = op(Effect::Reading, "local");
    o.modifier = std::move(f);
    return one_sub_node(std::move(o), std::move(sub));
}

EffectTree get() { return no_sub_node(op(Effect::Mutating, "get")); }

EffectTree put(Value v) { return no_sub_node(op(Effect::Mutating, "put", {std::move(v)})); }

EffectTree throw_exc(Value x) { return no_sub_node(op(Effect::Throwing, "throw", {std::move(x)})); }

EffectTree catch_exc(EffectTree body, std::function<EffectTree(const Value&)> recover) {
    auto o = op(Effect::Throwing, "catch");
    o.arity = SubArity::MaybeSub;
    return EffectTree::node(
        std::move(o), LatentCtx::identity(),
        [body = std::move(body), recover = std::move(recover)](const SubKey& key, const LatentCtx&) {
            if (const auto* j = std::get_if<JustKey>(&key)) return recover(j->exc);
            if (std::holds_alternative<NothingKey>(key)) return body;
            throw EvalError("catch: unexpected subcomputation key");
        },
        [](const LatentVal& lv) { return EffectTree::leaf(lv); });
}

EffectTree err(Value x) { return no_sub_node(op(Effect::Failing, "err", {std::move(x)})); }

EffectTree nat(std::int64_t n) { return no_sub_node(op(Effect::Adding, "nat", {Value::integer(n)})); }

EffectTree plus(Value a, Value b) { return no_sub_node(op(Effect::Adding, "plus", {std::move(a), std::move(b)})); }

EffectTree print(std::string s) { return no_sub_node(op(Effect::Printing, "print", {Value::text(std::move(s))})); }

EffectTree suspend(EffectTree sub) { return one_sub_node(op(Effect::Suspending, "suspend"), std::move(sub)); }

EffectTree enact(std::size_t p) { return no_sub_node(op(Effect::Suspending, "enact", {index_value(p)})); }

EffectTree thunk(EffectTree sub) { return one_sub_node(op(Effect::Thunking, "thunk"), std::move(sub)); }

EffectTree force(std::size_t p) { return no_sub_node(op(Effect::Thunking, "force", {index_value(p)})); }

EffectTree var(std::int64_t n) { return no_sub_node(op(Effect::Abstracting, "var", {Value::integer(n)})); }

EffectTree app(Value f, Value a) { return no_sub_node(op(Effect::Abstracting, "app", {std::move(f), std::move(a)})); }

EffectTree abs(EffectTree body) { return one_sub_node(op(Effect::Abstracting, "abs"), std::move(body)); }

}  // namespace ops

int ThunkProbe::max_runs() const {
    int m = 0;
    for (const auto& [slot, n] : runs) m = std::max(m, n);
    return m;
}

EffectTree h_mut(Value s, const EffectTree& input) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return EffectTree::leaf(t.result().push_state(MutState{s}));
        const auto& n = t.as_node();
        if (is_op(n, Effect::Mutating, "get")) {
            t = n.cont(n.ctx.with(s));
        } else if (is_op(n, Effect::Mutating, "put")) {
            Value next = n.op.payload.at(0);
            auto k = n.cont;
            auto ctx = n.ctx;
            s = std::move(next);
            t = k(ctx.with(Value::unit()));
        } else {
            return forward_state(n, MutState{s}, [](const HandlerState& st, const EffectTree& sub) {
                return h_mut(state_as<MutState>(st).value, sub);
            });
        }
    }
}

EffectTree h_read(Value r, const EffectTree& input) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return t;
        const auto& n = t.as_node();
        if (is_op(n, Effect::Reading, "ask")) {
            t = n.cont(n.ctx.with(r));
        } else if (is_op(n, Effect::Reading, "local")) {
            Value inner = n.op.modifier(r);
            return latent::bind(h_read(std::move(inner), n.sub(OneKey{}, n.ctx)),
                        [r, k = n.cont](const LatentVal& lv) { return h_read(r, k(lv)); });
        } else {
            return forward_plain(n, [r](const EffectTree& sub) { return h_read(r, sub); });
        }
    }
}

namespace {

EffectTree exc_continue(const ContFn& k, const LatentVal& lv) {
    if (lv.is_bare_failure()) return EffectTree::leaf(lv);
    return h_exc(k(lv.pop_right()));
}

}  // namespace

EffectTree h_exc(const EffectTree& t) {
    if (t.is_leaf()) return EffectTree::leaf(t.result().push_right());
    const auto& n = t.as_node();
    if (is_op(n, Effect::Throwing, "throw")) {
        return EffectTree::leaf(LatentVal::failure(n.ctx, n.op.payload.at(0)));
    }
    if (is_op(n, Effect::Throwing, "catch")) {
        return latent::bind(h_exc(n.sub(NothingKey{}, n.ctx)), [sub = n.sub, k = n.cont](const LatentVal& lv) {
            if (lv.is_bare_failure()) {
                const Failure& f = lv.failure_value();
                LatentCtx resume = f.resume.value_or(LatentCtx::identity());
                return latent::bind(h_exc(sub(JustKey{f.payload}, resume)),
                            [k](const LatentVal& lv2) { return exc_continue(k, lv2); });
            }
            return h_exc(k(lv.pop_right()));
        });
    }
    return forward_either(n, [](const EffectTree& sub) { return h_exc(sub); });
}

EffectTree h_err(const EffectTree& t) {
    if (t.is_leaf()) return EffectTree::leaf(t.result().push_right());
    const auto& n = t.as_node();
    if (is_op(n, Effect::Failing, "err")) {
        return EffectTree::leaf(LatentVal::failure(std::nullopt, n.op.payload.at(0)));
    }
    return forward_either(n, [](const EffectTree& sub) { return h_err(sub); });
}

EffectTree h_plus(const EffectTree& input) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return t;
        const auto& n = t.as_node();
        if (is_op(n, Effect::Adding, "nat")) {
            t = n.cont(n.ctx.with(n.op.payload.at(0)));
        } else if (is_op(n, Effect::Adding, "plus")) {
            auto a = n.op.payload.at(0).as_int();
            auto b = n.op.payload.at(1).as_int();
            if (!a || !b) {
                throw EvalError("plus expects integers, got " + to_string(n.op.payload.at(0)) + " and " +
                                to_string(n.op.payload.at(1)));
            }
            t = n.cont(n.ctx.with(Value::integer(*a + *b)));
        } else {
            return forward_plain(n, [](const EffectTree& sub) { return h_plus(sub); });
        }
    }
}

EffectTree h_print(const EffectTree& input, std::shared_ptr<PrintLog> log) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return t;
        const auto& n = t.as_node();
        if (is_op(n, Effect::Printing, "print")) {
            const Value& s = n.op.payload.at(0);
            log->push_back(s.as_text().value_or(to_string(s)));
            t = n.cont(n.ctx.with(s));
            continue;
        }
        auto rec = [log](const EffectTree& sub) { return h_print(sub, log); };
        if (n.op.arity == SubArity::OneSub && n.ctx.is_identity()) {
            // No handler has decorated this node yet, so the subtree cannot
            // depend on the context it is later run under. Handle its prints now.
            EffectTree pre = h_print(n.sub(OneKey{}, n.ctx), log);
            return EffectTree::node(
                n.op, n.ctx, [pre](const SubKey&, const LatentCtx&) { return pre; },
                [k = n.cont, rec](const LatentVal& lv) { return rec(k(lv)); });
        }
        return forward_plain(n, rec);
    }
}

EffectTree h_suspend(SuspStore store, const EffectTree& input) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return EffectTree::leaf(t.result().push_state(std::move(store)));
        const auto& n = t.as_node();
        if (is_op(n, Effect::Suspending, "suspend")) {
            store.entries.push_back(select_one(n.sub));
            t = n.cont(n.ctx.with(index_value(store.entries.size() - 1)));
        } else if (is_op(n, Effect::Suspending, "enact")) {
            std::size_t p = index_of(n.op.payload.at(0));
            if (p >= store.entries.size()) throw EvalError("bad index");
            EffectTree body = store.entries[p](n.ctx);
            return latent::bind(h_suspend(store, body), [k = n.cont](const LatentVal& res) {
                auto [s2, lv] = res.pop_state();
                return h_suspend(state_as<SuspStore>(s2), k(lv));
            });
        } else {
            return forward_state(n, std::move(store), [](const HandlerState& st, const EffectTree& sub) {
                return h_suspend(state_as<SuspStore>(st), sub);
            });
        }
    }
}

EffectTree h_thunk(ThunkStore store, const EffectTree& input, std::shared_ptr<ThunkProbe> probe) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return EffectTree::leaf(t.result().push_state(std::move(store)));
        const auto& n = t.as_node();
        if (is_op(n, Effect::Thunking, "thunk")) {
            store.slots.push_back(ThunkSlot{select_one(n.sub)});
            t = n.cont(n.ctx.with(index_value(store.slots.size() - 1)));
        } else if (is_op(n, Effect::Thunking, "force")) {
            std::size_t p = index_of(n.op.payload.at(0));
            if (p >= store.slots.size()) throw EvalError("bad index");
            const ThunkSlot& slot = store.slots[p];
            if (slot.forced()) {
                t = n.cont(n.ctx.with(std::get<Value>(slot.content)));
                continue;
            }
            if (probe) ++probe->runs[p];
            EffectTree body = std::get<Suspension>(slot.content)(n.ctx);
            return latent::bind(h_thunk(store, body, probe), [k = n.cont, p, probe](const LatentVal& res) {
                auto [s2, lv] = res.pop_state();
                ThunkStore next = state_as<ThunkStore>(s2);
                if (lv.is_failure()) return EffectTree::leaf(lv.push_state(std::move(next)));
                return forward_under_layers(lv, [&](const Value& v) {
                    next.slots.at(p) = ThunkSlot{v};
                    return h_thunk(std::move(next), k(lv), probe);
                });
            });
        } else {
            return forward_state(n, std::move(store), [probe](const HandlerState& st, const EffectTree& sub) {
                return h_thunk(state_as<ThunkStore>(st), sub, probe);
            });
        }
    }
}

EffectTree h_eager(EagerStore store, const EffectTree& input) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return EffectTree::leaf(t.result().push_state(std::move(store)));
        const auto& n = t.as_node();
        if (is_op(n, Effect::Thunking, "thunk")) {
            EffectTree body = n.sub(OneKey{}, n.ctx);
            return latent::bind(h_eager(store, body), [k = n.cont](const LatentVal& res) {
                auto [s2, lv] = res.pop_state();
                EagerStore next = state_as<EagerStore>(s2);
                if (lv.is_failure()) return EffectTree::leaf(lv.push_state(std::move(next)));
                return forward_under_layers(lv, [&](const Value& v) {
                    next.values.push_back(v);
                    Value index = index_value(next.values.size() - 1);
                    // Continue under the context the argument left behind.
                    return h_eager(std::move(next), k(map_core(lv, index)));
                });
            });
        }
        if (is_op(n, Effect::Thunking, "force")) {
            std::size_t p = index_of(n.op.payload.at(0));
            if (p >= store.values.size()) throw EvalError("bad index");
            t = n.cont(n.ctx.with(store.values[p]));
            continue;
        }
        return forward_state(n, std::move(store), [](const HandlerState& st, const EffectTree& sub) {
            return h_eager(state_as<EagerStore>(st), sub);
        });
    }
}

namespace {

enum class Site { Call, Definition };

EffectTree h_abs(Site site, Environment env, AbsStore store, const EffectTree& input) {
    EffectTree t = input;
    for (;;) {
        if (t.is_leaf()) return EffectTree::leaf(t.result().push_state(std::move(store)));
        const auto& n = t.as_node();
        if (is_op(n, Effect::Abstracting, "abs")) {
            Value clos = Value::closure(store.entries.size(), env);
            if (site == Site::Call) {
                store.entries.push_back(Resumption{select_one(n.sub)});
            } else {
                store.entries.push_back(Resumption{n.sub(OneKey{}, n.ctx)});
            }
            t = n.cont(n.ctx.with(std::move(clos)));
        } else if (is_op(n, Effect::Abstracting, "app")) {
            auto clos = n.op.payload.at(0).as_closure();
            if (!clos) throw EvalError("application error");
            if (clos->index >= store.entries.size()) throw EvalError("bad index");
            const Resumption& r = store.entries[clos->index];
            EffectTree body = r.call_site() ? std::get<Suspension>(r.body)(n.ctx) : std::get<EffectTree>(r.body);
            Environment inner = clos->env.prepend(n.op.payload.at(1));
            return latent::bind(h_abs(site, std::move(inner), store, body),
                        [site, env, k = n.cont](const LatentVal& res) {
                            auto [s2, lv] = res.pop_state();
                            return h_abs(site, env, state_as<AbsStore>(s2), k(lv));
                        });
        } else if (is_op(n, Effect::Abstracting, "var")) {
            auto i = n.op.payload.at(0).as_int();
            if (!i) throw EvalError("bad index");
            t = n.cont(n.ctx.with(env.at(*i)));
        } else {
            return forward_state(n, std::move(store), [site, env](const HandlerState& st, const EffectTree& sub) {
                return h_abs(site, env, state_as<AbsStore>(st), sub);
            });
        }
    }
}

}  // namespace

EffectTree h_abs_cs(Environment env, AbsStore store, const EffectTree& t) {
    return h_abs(Site::Call, std::move(env), std::move(store), t);
}

EffectTree h_abs_ds(Environment env, AbsStore store, const EffectTree& t) {
    return h_abs(Site::Definition, std::move(env), std::move(store), t);
}

}  // namespace latent
