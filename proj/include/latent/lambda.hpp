#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "latent/effects.hpp"

namespace latent::lambda {

// Call-by-need: arguments are thunked and memoized on first use.
// Needs Reading over a plain environment, Suspending and Thunking.
EffectTree abs_lazy(EffectTree body);
EffectTree var_lazy(std::int64_t n);
EffectTree app_lazy(EffectTree fn, EffectTree arg);

// Call-by-name: arguments are suspended and rerun on every use.
EffectTree abs_cbn(EffectTree body);
EffectTree var_cbn(std::int64_t n);
EffectTree app_cbn(EffectTree fn, EffectTree arg);

/// The environment carried by a Reading value; throws if it is not one.
Environment env_of(const Value& v);

// Direct, non-modular lambda trees and their interpreter. Used as a
// reference implementation for the Abstracting handlers.
struct LC;
using LCPtr = std::shared_ptr<const LC>;
using LCCont = std::function<LCPtr(const Value&)>;

struct LC {
    struct Return {
        Value value;
    };
    struct Var {
        std::int64_t index;
        LCCont k;
    };
    struct App {
        Value fn;
        Value arg;
        LCCont k;
    };
    struct Abs {
        LCPtr body;
        LCCont k;
    };
    std::variant<Return, Var, App, Abs> node;
};

LCPtr lc_return(Value v);
LCPtr lc_var(std::int64_t n, LCCont k);
LCPtr lc_app(Value f, Value a, LCCont k);
LCPtr lc_abs(LCPtr body, LCCont k);

struct OracleResult {
    std::vector<LCPtr> store;
    Value value;
};

// Raised when the optional step budget runs out.
class StepLimitExceeded : public EvalError {
public:
    StepLimitExceeded() : EvalError("step limit exceeded") {}
};

/// When `fuel` is given, each interpreted operation consumes one unit.
OracleResult oracle_handle_abs(std::vector<Value> env, std::vector<LCPtr> store, const LCPtr& t,
                               std::size_t* fuel = nullptr);

}  // namespace latent::lambda
