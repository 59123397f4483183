#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "latent/effects.hpp"

namespace latent::lang {

// Bad feature composition or an AST the composed features do not cover.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Tag {
    Num,
    Add,
    Var,
    Abs,
    App,
    Let,
    Seq,
    LetVar,
    Get,
    Put,
    Print,
    Quote,
    Unquote,
    Splice,
    Push,
};

const char* tag_name(Tag t) noexcept;

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    Tag tag = Tag::Num;
    std::int64_t number = 0;  // Num literal, de Bruijn index, or push count
    std::string text;         // Print payload
    std::vector<AstPtr> children;
};

AstPtr num(std::int64_t n);
AstPtr add(AstPtr a, AstPtr b);
AstPtr var(std::int64_t n);
AstPtr lam(AstPtr body);
AstPtr app(AstPtr f, AstPtr a);
// Let abstracts `body` over one variable and applies it to `bound`.
AstPtr let(AstPtr body, AstPtr bound);
AstPtr seq(std::vector<AstPtr> items);
AstPtr letvar(std::int64_t n);
AstPtr get();
AstPtr put(AstPtr e);
AstPtr print(std::string s);
AstPtr quote(AstPtr e);
AstPtr unquote(AstPtr e);
AstPtr splice(AstPtr e);
AstPtr push(std::int64_t n, AstPtr e);

bool operator==(const Ast& a, const Ast& b);
std::string to_sexp(const Ast& a);

enum class Strategy { CBV, CBN, Need };

// How call-by-value binders are realised: through the Abstracting effect, or
// through a Reading environment (required by push/splice).
enum class Binder { Abstracting, Reader };

Strategy parse_strategy(const std::string& s);

using Algebra = std::function<EffectTree(const Ast& node, const std::vector<EffectTree>& children)>;

struct Feature {
    std::string name;
    std::vector<Tag> tags;
    Algebra algebra;
};

Feature arith_feature();
Feature lambda_feature(Strategy s, Binder b);
Feature let_feature(Strategy s, Binder b);
Feature print_feature();
Feature state_feature();
Feature stage_feature();

// Look a feature up by name: arith, lambda, let, print, state, stage.
Feature feature_by_name(const std::string& name, Strategy s, Binder b);

class Denoter {
public:
    explicit Denoter(std::map<Tag, Algebra> table) : table_(std::move(table)) {}
    [[nodiscard]] EffectTree denote(const Ast& ast) const;
    [[nodiscard]] bool claims(Tag t) const { return table_.count(t) != 0; }

private:
    std::map<Tag, Algebra> table_;
};

Denoter compose_features(const std::vector<Feature>& features);

/// Denote with every feature enabled.
EffectTree denote(const Ast& ast, Strategy s, Binder b = Binder::Abstracting);

}  // namespace latent::lang
