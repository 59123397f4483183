#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace latent {

// Semantic failure of a run: application error, bad index, quote error,
// bad unquote, unhandled operation, projection failure.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Value;
struct StagedEnv;

/// A runtime environment. Either a plain de Bruijn list or a staged
/// telescope with holes and forward references.
class Environment {
public:
    Environment();

    static Environment plain(std::vector<Value> values);
    static Environment staged(StagedEnv slots);

    [[nodiscard]] bool is_staged() const noexcept;
    [[nodiscard]] const std::vector<Value>& values() const;
    [[nodiscard]] const StagedEnv& slots() const;

    // Plain only; throws "bad index" when out of range.
    [[nodiscard]] const Value& at(std::int64_t index) const;
    [[nodiscard]] Environment prepend(Value v) const;
    [[nodiscard]] std::size_t size() const noexcept;

    friend bool operator==(const Environment& a, const Environment& b);

    struct Rep;

private:
    explicit Environment(std::shared_ptr<const Rep> rep);
    std::shared_ptr<const Rep> rep_;
};

struct Unit {
    friend bool operator==(const Unit&, const Unit&) = default;
};

// Pointer into a resumption store plus the environment captured with it.
struct Closure {
    std::size_t index = 0;
    Environment env;
    friend bool operator==(const Closure&, const Closure&) = default;
};

struct Suspended {
    std::size_t index = 0;
    Environment env;
    friend bool operator==(const Suspended&, const Suspended&) = default;
};

struct Thunked {
    std::size_t index = 0;
    Environment env;
    friend bool operator==(const Thunked&, const Thunked&) = default;
};

class Value {
public:
    using Rep = std::variant<Unit, std::int64_t, std::string, Closure, Suspended, Thunked, Environment>;

    Value() = default;
    Value(Rep rep) : rep_(std::move(rep)) {}  // NOLINT(google-explicit-constructor)

    static Value unit() { return Value{Unit{}}; }
    static Value integer(std::int64_t n) { return Value{n}; }
    static Value text(std::string s) { return Value{std::move(s)}; }
    static Value closure(std::size_t index, Environment env) { return Value{Closure{index, std::move(env)}}; }
    static Value code(std::size_t index, Environment env) { return Value{Suspended{index, std::move(env)}}; }
    static Value thunk_ref(std::size_t index, Environment env) { return Value{Thunked{index, std::move(env)}}; }
    static Value env(Environment e) { return Value{std::move(e)}; }

    [[nodiscard]] const Rep& rep() const noexcept { return rep_; }

    template <typename T>
    [[nodiscard]] bool is() const noexcept {
        return std::holds_alternative<T>(rep_);
    }

    // Projections: absent when the value has another shape.
    template <typename T>
    [[nodiscard]] std::optional<T> as() const {
        if (const T* p = std::get_if<T>(&rep_)) return *p;
        return std::nullopt;
    }

    [[nodiscard]] std::optional<std::int64_t> as_int() const { return as<std::int64_t>(); }
    [[nodiscard]] std::optional<std::string> as_text() const { return as<std::string>(); }
    [[nodiscard]] std::optional<Closure> as_closure() const { return as<Closure>(); }
    [[nodiscard]] std::optional<Suspended> as_code() const { return as<Suspended>(); }
    [[nodiscard]] std::optional<Thunked> as_thunk() const { return as<Thunked>(); }
    [[nodiscard]] std::optional<Environment> as_env() const { return as<Environment>(); }

    friend bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }

private:
    Rep rep_{Unit{}};
};

// Slots of a staged environment.
struct Hole {
    friend bool operator==(const Hole&, const Hole&) = default;
};
struct Forward {
    std::size_t offset = 0;
    friend bool operator==(const Forward&, const Forward&) = default;
};
using Slot = std::variant<Hole, Value, Forward>;

struct StagedEnv {
    std::vector<Slot> slots;
    friend bool operator==(const StagedEnv&, const StagedEnv&) = default;
};

/// Short human-readable rendering used in diagnostics and tests.
std::string to_string(const Value& v);
std::string to_string(const Environment& e);

}  // namespace latent
