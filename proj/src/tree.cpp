#include "latent/tree.hpp"

namespace latent {

const char* effect_name(Effect e) noexcept {
    switch (e) {
        case Effect::Reading: return "Reading";
        case Effect::Mutating: return "Mutating";
        case Effect::Throwing: return "Throwing";
        case Effect::Failing: return "Failing";
        case Effect::Adding: return "Adding";
        case Effect::Printing: return "Printing";
        case Effect::Suspending: return "Suspending";
        case Effect::Thunking: return "Thunking";
        case Effect::Abstracting: return "Abstracting";
        case Effect::Ending: return "Ending";
    }
    return "?";
}

std::string OpInstance::tag() const { return std::string(effect_name(effect)) + "." + name; }

struct EffectTree::Rep {
    std::variant<LatentVal, Node> content;
};

EffectTree EffectTree::leaf(LatentVal result) {
    return EffectTree{std::make_shared<const Rep>(Rep{std::move(result)})};
}

EffectTree EffectTree::node(OpInstance op, LatentCtx ctx, SubFn sub, ContFn cont) {
    return EffectTree{
        std::make_shared<const Rep>(Rep{Node{std::move(op), std::move(ctx), std::move(sub), std::move(cont)}})};
}

bool EffectTree::is_leaf() const noexcept { return rep_->content.index() == 0; }

const LatentVal& EffectTree::result() const { return std::get<LatentVal>(rep_->content); }

const EffectTree::Node& EffectTree::as_node() const { return std::get<Node>(rep_->content); }

std::string state_kind(const HandlerState& s) {
    static const char* names[] = {"mut", "abs", "suspend", "thunk", "eager"};
    return names[s.index()];
}

std::size_t LatentCtx::depth() const noexcept {
    std::size_t n = 0;
    for (const Cell* c = head_.get(); c != nullptr; c = c->next.get()) ++n;
    return n;
}

LatentCtx LatentCtx::push_state(HandlerState s) const {
    return LatentCtx{std::make_shared<const Cell>(Cell{Layer{std::move(s)}, head_})};
}

LatentCtx LatentCtx::push_right() const {
    return LatentCtx{std::make_shared<const Cell>(Cell{Layer{RightLayer{}}, head_})};
}

const Layer& LatentCtx::top() const {
    if (!head_) throw EvalError("layer mismatch: empty latent context");
    return head_->layer;
}

LatentCtx LatentCtx::pop() const {
    if (!head_) throw EvalError("layer mismatch: empty latent context");
    return LatentCtx{head_->next};
}

std::pair<HandlerState, LatentCtx> LatentCtx::pop_state() const {
    const Layer& l = top();
    if (!l.is_state()) throw EvalError("layer mismatch: expected state layer");
    return {std::get<HandlerState>(l.content), pop()};
}

LatentCtx LatentCtx::pop_right() const {
    if (top().is_state()) throw EvalError("layer mismatch: expected either layer");
    return pop();
}

std::vector<Layer> LatentCtx::layers() const {
    std::vector<Layer> out;
    for (const Cell* c = head_.get(); c != nullptr; c = c->next.get()) out.push_back(c->layer);
    return out;
}

LatentVal LatentCtx::with(Value v) const { return LatentVal{*this, std::move(v)}; }

LatentVal LatentVal::failure(std::optional<LatentCtx> resume, Value payload) {
    return LatentVal{LatentCtx{}, Failure{std::move(resume), std::move(payload)}};
}

const Value& LatentVal::core_value() const {
    if (const auto* f = std::get_if<Failure>(&terminal_)) {
        throw EvalError("expected a value, found failure " + to_string(f->payload));
    }
    return std::get<Value>(terminal_);
}

const Failure& LatentVal::failure_value() const { return std::get<Failure>(terminal_); }

LatentVal LatentVal::push_state(HandlerState s) const {
    return LatentVal{layers_.push_state(std::move(s)), terminal_};
}

LatentVal LatentVal::push_right() const { return LatentVal{layers_.push_right(), terminal_}; }

std::pair<HandlerState, LatentVal> LatentVal::pop_state() const {
    auto [s, rest] = layers_.pop_state();
    return {std::move(s), LatentVal{std::move(rest), terminal_}};
}

LatentVal LatentVal::pop_right() const { return LatentVal{layers_.pop_right(), terminal_}; }

EffectTree bind(const EffectTree& t, ContFn f) {
    if (t.is_leaf()) return f(t.result());
    const auto& n = t.as_node();
    ContFn k = n.cont;
    return EffectTree::node(n.op, n.ctx, n.sub,
                            [k, f = std::move(f)](const LatentVal& x) { return latent::bind(k(x), f); });
}

LatentVal map_core(const LatentVal& lv, Value v) {
    if (lv.is_failure()) throw EvalError("map_core applied to a failure");
    return lv.layers().with(std::move(v));
}

EffectTree forward_under_layers(const LatentVal& lv, const std::function<EffectTree(const Value&)>& k) {
    if (lv.is_failure()) return EffectTree::leaf(lv);
    return k(lv.core_value());
}

EffectTree pure(Value v) { return EffectTree::leaf(LatentVal::core(std::move(v))); }

EffectTree no_sub_node(OpInstance op) {
    op.arity = SubArity::NoSub;
    return EffectTree::node(
        std::move(op), LatentCtx::identity(),
        [](const SubKey&, const LatentCtx&) -> EffectTree { throw EvalError("subcomputation of a NoSub operation"); },
        [](const LatentVal& lv) { return EffectTree::leaf(lv); });
}

EffectTree one_sub_node(OpInstance op, EffectTree sub) {
    op.arity = SubArity::OneSub;
    return EffectTree::node(
        std::move(op), LatentCtx::identity(), [sub = std::move(sub)](const SubKey&, const LatentCtx&) { return sub; },
        [](const LatentVal& lv) { return EffectTree::leaf(lv); });
}

EffectTree then(const EffectTree& t, const std::function<EffectTree(const Value&)>& k) {
    return latent::bind(t, [k](const LatentVal& lv) { return k(lv.core_value()); });
}

Inspection inspect(const LatentVal& r) {
    Inspection out;
    for (const Layer& l : r.layers().layers()) {
        if (l.is_state()) out.states.push_back(std::get<HandlerState>(l.content));
    }
    if (r.is_failure()) {
        out.failure = r.failure_value().payload;
    } else {
        out.value = r.core_value();
    }
    return out;
}

LatentVal h_end(const EffectTree& t) {
    if (!t.is_leaf()) throw EvalError("unhandled operation: " + t.as_node().op.tag());
    return t.result();
}

}  // namespace latent
