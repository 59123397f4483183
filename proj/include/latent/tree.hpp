#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "latent/value.hpp"

namespace latent {

class EffectTree;
class LatentCtx;
class LatentVal;

enum class Effect {
    Reading,
    Mutating,
    Throwing,
    Failing,
    Adding,
    Printing,
    Suspending,
    Thunking,
    Abstracting,
    Ending,
};

const char* effect_name(Effect e) noexcept;

enum class SubArity { NoSub, OneSub, MaybeSub };

// Key passed to a node's subcomputation selector.
struct OneKey {};
struct JustKey {
    Value exc;
};
struct NothingKey {};
using SubKey = std::variant<OneKey, JustKey, NothingKey>;

using SubFn = std::function<EffectTree(const SubKey&, const LatentCtx&)>;
using ContFn = std::function<EffectTree(const LatentVal&)>;
using Suspension = std::function<EffectTree(const LatentCtx&)>;
using EnvModifier = std::function<Value(const Value&)>;

struct OpInstance {
    Effect effect = Effect::Ending;
    std::string name;
    std::vector<Value> payload;
    SubArity arity = SubArity::NoSub;
    // Only set for Reading.local.
    EnvModifier modifier;

    [[nodiscard]] std::string tag() const;
};

/// Immutable, shared handle to a tree. Copies are cheap.
class EffectTree {
public:
    struct Node;

    static EffectTree leaf(LatentVal result);
    static EffectTree node(OpInstance op, LatentCtx ctx, SubFn sub, ContFn cont);

    [[nodiscard]] bool is_leaf() const noexcept;
    [[nodiscard]] const LatentVal& result() const;
    [[nodiscard]] const Node& as_node() const;

private:
    struct Rep;
    explicit EffectTree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

// Handler states carried by StateWrap layers.
struct MutState {
    Value value;
};

struct Resumption {
    // CallSite awaits the application-site context; DefSite is already contextualized.
    std::variant<Suspension, EffectTree> body;
    [[nodiscard]] bool call_site() const noexcept { return body.index() == 0; }
};

struct AbsStore {
    std::vector<Resumption> entries;
};

struct SuspStore {
    std::vector<Suspension> entries;
};

struct ThunkSlot {
    std::variant<Suspension, Value> content;
    [[nodiscard]] bool forced() const noexcept { return content.index() == 1; }
};

struct ThunkStore {
    std::vector<ThunkSlot> slots;
};

struct EagerStore {
    std::vector<Value> values;
};

using HandlerState = std::variant<MutState, AbsStore, SuspStore, ThunkStore, EagerStore>;

std::string state_kind(const HandlerState& s);

struct RightLayer {};
struct Layer {
    std::variant<HandlerState, RightLayer> content;
    [[nodiscard]] bool is_state() const noexcept { return content.index() == 0; }
};

/// Stack of latent layers with a unit core. Head is the outermost layer,
/// i.e. the one added by the most recently applied handler.
class LatentCtx {
public:
    LatentCtx() = default;
    static LatentCtx identity() { return {}; }

    [[nodiscard]] bool is_identity() const noexcept { return head_ == nullptr; }
    [[nodiscard]] std::size_t depth() const noexcept;

    [[nodiscard]] LatentCtx push_state(HandlerState s) const;
    [[nodiscard]] LatentCtx push_right() const;

    [[nodiscard]] const Layer& top() const;
    [[nodiscard]] LatentCtx pop() const;
    [[nodiscard]] std::pair<HandlerState, LatentCtx> pop_state() const;
    [[nodiscard]] LatentCtx pop_right() const;

    // Outermost first.
    [[nodiscard]] std::vector<Layer> layers() const;

    // mapCore on a context: same layers, core replaced by v.
    [[nodiscard]] LatentVal with(Value v) const;

private:
    struct Cell {
        Layer layer;
        std::shared_ptr<const Cell> next;
    };
    explicit LatentCtx(std::shared_ptr<const Cell> head) : head_(std::move(head)) {}
    std::shared_ptr<const Cell> head_;
};

struct Failure {
    // Present for Throwing (the throw-site context), absent for Failing.
    std::optional<LatentCtx> resume;
    Value payload;
};

/// Layers over a terminal that is either a core value or a failure.
class LatentVal {
public:
    LatentVal() = default;
    static LatentVal core(Value v) { return LatentVal{LatentCtx{}, std::move(v)}; }
    static LatentVal failure(std::optional<LatentCtx> resume, Value payload);
    LatentVal(LatentCtx layers, std::variant<Value, Failure> terminal)
        : layers_(std::move(layers)), terminal_(std::move(terminal)) {}

    [[nodiscard]] const LatentCtx& layers() const noexcept { return layers_; }
    [[nodiscard]] bool is_failure() const noexcept { return terminal_.index() == 1; }
    // The terminal of a value without wraps: a failure with no layers above it.
    [[nodiscard]] bool is_bare_failure() const noexcept { return is_failure() && layers_.is_identity(); }

    [[nodiscard]] const Value& core_value() const;
    [[nodiscard]] const Failure& failure_value() const;

    [[nodiscard]] LatentVal push_state(HandlerState s) const;
    [[nodiscard]] LatentVal push_right() const;
    [[nodiscard]] std::pair<HandlerState, LatentVal> pop_state() const;
    [[nodiscard]] LatentVal pop_right() const;

    // The context obtained by forgetting the terminal.
    [[nodiscard]] LatentCtx shape() const { return layers_; }

private:
    LatentCtx layers_;
    std::variant<Value, Failure> terminal_{Value{}};
};

struct EffectTree::Node {
    OpInstance op;
    LatentCtx ctx;
    SubFn sub;
    ContFn cont;
};

/// Monadic bind: only continuations are rewritten.
EffectTree bind(const EffectTree& t, ContFn f);

/// Replace the core value, keeping every layer. Throws on failures.
LatentVal map_core(const LatentVal& lv, Value v);

/// Run k on the core value hidden under the layers, or short-circuit a failure.
EffectTree forward_under_layers(const LatentVal& lv, const std::function<EffectTree(const Value&)>& k);

// Smart constructors: identity context, leaf continuation.
EffectTree pure(Value v);
EffectTree no_sub_node(OpInstance op);
EffectTree one_sub_node(OpInstance op, EffectTree sub);

// Sequencing on core values of identity-context trees.
EffectTree then(const EffectTree& t, const std::function<EffectTree(const Value&)>& k);

struct Inspection {
    std::optional<Value> value;
    std::vector<HandlerState> states;
    std::optional<Value> failure;
};

Inspection inspect(const LatentVal& r);

/// Final handler: the tree must be a leaf.
LatentVal h_end(const EffectTree& t);

}  // namespace latent
