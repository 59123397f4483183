#pragma once

#include <cstdint>

#include "latent/effects.hpp"

namespace latent::staging {

// Operations on staged environments.
StagedEnv bind_val(Value v, const StagedEnv& nv);
Value lookup_val(const StagedEnv& nv, std::int64_t x);
Value cover(const Value& v, const StagedEnv& nv);
StagedEnv combine(const StagedEnv& nv1, const StagedEnv& nv2);

// Dispatch on the environment kind: plain lists bind by prepending and look up
// by position, staged environments use the telescope operations above.
Environment bind_value(Value v, const Environment& env);
Value lookup_value(const Environment& env, std::int64_t x);

// Staging constructs over Reading and Suspending.
EffectTree quote(EffectTree m);
EffectTree unquote(EffectTree m);
EffectTree push(std::int64_t n, EffectTree m);
EffectTree splice(EffectTree m);

// Call-by-value lambdas whose environment lives in Reading, so that spliced
// code can see bindings from its splice site.
EffectTree abs_val(EffectTree body);
EffectTree var_val(std::int64_t n);
EffectTree app_val(EffectTree fn, EffectTree arg);

}  // namespace latent::staging
