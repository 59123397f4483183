#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "latent/tree.hpp"

namespace latent {

// Smart constructors. Each builds a single node with identity context and a
// leaf continuation.
namespace ops {

EffectTree ask();
EffectTree local(EnvModifier f, EffectTree sub);

EffectTree get();
EffectTree put(Value v);

EffectTree throw_exc(Value x);
EffectTree catch_exc(EffectTree body, std::function<EffectTree(const Value&)> recover);

EffectTree err(Value x);

EffectTree nat(std::int64_t n);
EffectTree plus(Value a, Value b);

EffectTree print(std::string s);

EffectTree suspend(EffectTree sub);
EffectTree enact(std::size_t p);

EffectTree thunk(EffectTree sub);
EffectTree force(std::size_t p);

EffectTree var(std::int64_t n);
EffectTree app(Value f, Value a);
EffectTree abs(EffectTree body);

}  // namespace ops

using PrintLog = std::vector<std::string>;

// Counts how often each thunk slot's computation was started.
struct ThunkProbe {
    std::map<std::size_t, int> runs;
    [[nodiscard]] int max_runs() const;
};

EffectTree h_mut(Value s, const EffectTree& t);
EffectTree h_read(Value r, const EffectTree& t);
EffectTree h_exc(const EffectTree& t);
EffectTree h_err(const EffectTree& t);
EffectTree h_plus(const EffectTree& t);
EffectTree h_print(const EffectTree& t, std::shared_ptr<PrintLog> log);
EffectTree h_suspend(SuspStore store, const EffectTree& t);
EffectTree h_thunk(ThunkStore store, const EffectTree& t, std::shared_ptr<ThunkProbe> probe = nullptr);
EffectTree h_eager(EagerStore store, const EffectTree& t);
EffectTree h_abs_cs(Environment env, AbsStore store, const EffectTree& t);
EffectTree h_abs_ds(Environment env, AbsStore store, const EffectTree& t);

}  // namespace latent
