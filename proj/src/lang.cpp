#include "latent/lang.hpp"

#include <sstream>

#include "latent/lambda.hpp"
#include "latent/staging.hpp"

namespace latent::lang {

const char* tag_name(Tag t) noexcept {
    switch (t) {
        case Tag::Num: return "num";
        case Tag::Add: return "+";
        case Tag::Var: return "var";
        case Tag::Abs: return "lam";
        case Tag::App: return "app";
        case Tag::Let: return "let";
        case Tag::Seq: return "seq";
        case Tag::LetVar: return "letvar";
        case Tag::Get: return "get";
        case Tag::Put: return "put";
        case Tag::Print: return "print";
        case Tag::Quote: return "quote";
        case Tag::Unquote: return "unquote";
        case Tag::Splice: return "splice";
        case Tag::Push: return "push";
    }
    return "?";
}

namespace {

AstPtr make(Tag t, std::vector<AstPtr> children = {}, std::int64_t n = 0, std::string text = {}) {
    auto a = std::make_shared<Ast>();
    a->tag = t;
    a->number = n;
    a->text = std::move(text);
    a->children = std::move(children);
    return a;
}

}  // namespace

AstPtr num(std::int64_t n) { return make(Tag::Num, {}, n); }
AstPtr add(AstPtr a, AstPtr b) { return make(Tag::Add, {std::move(a), std::move(b)}); }
AstPtr var(std::int64_t n) { return make(Tag::Var, {}, n); }
AstPtr lam(AstPtr body) { return make(Tag::Abs, {std::move(body)}); }
AstPtr app(AstPtr f, AstPtr a) { return make(Tag::App, {std::move(f), std::move(a)}); }
AstPtr let(AstPtr body, AstPtr bound) { return make(Tag::Let, {std::move(body), std::move(bound)}); }
AstPtr seq(std::vector<AstPtr> items) { return make(Tag::Seq, std::move(items)); }
AstPtr letvar(std::int64_t n) { return make(Tag::LetVar, {}, n); }
AstPtr get() { return make(Tag::Get); }
AstPtr put(AstPtr e) { return make(Tag::Put, {std::move(e)}); }
AstPtr print(std::string s) { return make(Tag::Print, {}, 0, std::move(s)); }
AstPtr quote(AstPtr e) { return make(Tag::Quote, {std::move(e)}); }
AstPtr unquote(AstPtr e) { return make(Tag::Unquote, {std::move(e)}); }
AstPtr splice(AstPtr e) { return make(Tag::Splice, {std::move(e)}); }
AstPtr push(std::int64_t n, AstPtr e) { return make(Tag::Push, {std::move(e)}, n); }

bool operator==(const Ast& a, const Ast& b) {
    if (a.tag != b.tag || a.number != b.number || a.text != b.text || a.children.size() != b.children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!(*a.children[i] == *b.children[i])) return false;
    }
    return true;
}

namespace {

bool has_number(Tag t) {
    return t == Tag::Num || t == Tag::Var || t == Tag::LetVar || t == Tag::Push;
}

void write_sexp(std::ostream& os, const Ast& a) {
    os << '(' << tag_name(a.tag);
    if (has_number(a.tag)) os << ' ' << a.number;
    if (a.tag == Tag::Print) {
        os << " \"";
        for (char c : a.text) {
            if (c == '"' || c == '\\') os << '\\';
            os << c;
        }
        os << '"';
    }
    for (const auto& c : a.children) {
        os << ' ';
        write_sexp(os, *c);
    }
    os << ')';
}

}  // namespace

std::string to_sexp(const Ast& a) {
    std::ostringstream os;
    write_sexp(os, a);
    return os.str();
}

Strategy parse_strategy(const std::string& s) {
    if (s == "cbv") return Strategy::CBV;
    if (s == "cbn") return Strategy::CBN;
    if (s == "need") return Strategy::Need;
    throw ConfigError("unknown strategy: " + s);
}

namespace {

EffectTree sequence2(const EffectTree& a, const EffectTree& b, std::function<EffectTree(Value, Value)> f) {
    return then(a, [b, f = std::move(f)](const Value& x) {
        return then(b, [x, f](const Value& y) { return f(x, y); });
    });
}

// The three binder operations of one evaluation strategy.
struct Binders {
    std::function<EffectTree(std::int64_t)> var;
    std::function<EffectTree(EffectTree)> abs;
    std::function<EffectTree(EffectTree, EffectTree)> app;
};

Binders binders_for(Strategy s, Binder b) {
    switch (s) {
        case Strategy::Need: return {lambda::var_lazy, lambda::abs_lazy, lambda::app_lazy};
        case Strategy::CBN: return {lambda::var_cbn, lambda::abs_cbn, lambda::app_cbn};
        case Strategy::CBV: break;
    }
    if (b == Binder::Reader) return {staging::var_val, staging::abs_val, staging::app_val};
    return {ops::var, ops::abs, [](EffectTree f, EffectTree a) {
                return sequence2(f, a, [](Value vf, Value va) { return ops::app(std::move(vf), std::move(va)); });
            }};
}

}  // namespace

Feature arith_feature() {
    return {"arith", {Tag::Num, Tag::Add}, [](const Ast& n, const std::vector<EffectTree>& kids) {
                if (n.tag == Tag::Num) return ops::nat(n.number);
                return sequence2(kids.at(0), kids.at(1),
                                 [](Value a, Value b) { return ops::plus(std::move(a), std::move(b)); });
            }};
}

Feature lambda_feature(Strategy s, Binder b) {
    Binders bs = binders_for(s, b);
    return {"lambda", {Tag::Var, Tag::Abs, Tag::App}, [bs](const Ast& n, const std::vector<EffectTree>& kids) {
                if (n.tag == Tag::Var) return bs.var(n.number);
                if (n.tag == Tag::Abs) return bs.abs(kids.at(0));
                return bs.app(kids.at(0), kids.at(1));
            }};
}

Feature let_feature(Strategy s, Binder b) {
    Binders bs = binders_for(s, b);
    return {"let", {Tag::Let, Tag::Seq, Tag::LetVar}, [bs](const Ast& n, const std::vector<EffectTree>& kids) {
                if (n.tag == Tag::LetVar) return bs.var(n.number);
                if (n.tag == Tag::Let) return bs.app(bs.abs(kids.at(0)), kids.at(1));
                if (kids.empty()) throw ConfigError("seq needs at least one expression");
                EffectTree acc = kids.back();
                for (auto it = kids.rbegin() + 1; it != kids.rend(); ++it) {
                    acc = then(*it, [acc](const Value&) { return acc; });
                }
                return acc;
            }};
}

Feature print_feature() {
    return {"print", {Tag::Print},
            [](const Ast& n, const std::vector<EffectTree>&) { return ops::print(n.text); }};
}

Feature state_feature() {
    return {"state", {Tag::Get, Tag::Put}, [](const Ast& n, const std::vector<EffectTree>& kids) {
                if (n.tag == Tag::Get) return ops::get();
                return then(kids.at(0), [](const Value& v) { return ops::put(v); });
            }};
}

Feature stage_feature() {
    return {"stage",
            {Tag::Quote, Tag::Unquote, Tag::Splice, Tag::Push},
            [](const Ast& n, const std::vector<EffectTree>& kids) {
                switch (n.tag) {
                    case Tag::Quote: return staging::quote(kids.at(0));
                    case Tag::Unquote: return staging::unquote(kids.at(0));
                    case Tag::Splice: return staging::splice(kids.at(0));
                    default: return staging::push(n.number, kids.at(0));
                }
            }};
}

Feature feature_by_name(const std::string& name, Strategy s, Binder b) {
    if (name == "arith") return arith_feature();
    if (name == "lambda") return lambda_feature(s, b);
    if (name == "let") return let_feature(s, b);
    if (name == "print") return print_feature();
    if (name == "state") return state_feature();
    if (name == "stage") return stage_feature();
    throw ConfigError("unknown feature: " + name);
}

Denoter compose_features(const std::vector<Feature>& features) {
    std::map<Tag, Algebra> table;
    std::map<Tag, std::string> owner;
    for (const auto& f : features) {
        for (Tag t : f.tags) {
            auto [it, fresh] = owner.emplace(t, f.name);
            if (!fresh) {
                throw ConfigError(std::string("constructor '") + tag_name(t) + "' claimed by both " + it->second +
                                  " and " + f.name);
            }
            table.emplace(t, f.algebra);
        }
    }
    return Denoter{std::move(table)};
}

EffectTree Denoter::denote(const Ast& ast) const {
    auto it = table_.find(ast.tag);
    if (it == table_.end()) {
        throw ConfigError(std::string("no feature handles constructor '") + tag_name(ast.tag) + "'");
    }
    if (ast.number < 0 && has_number(ast.tag) && ast.tag != Tag::Num) {
        throw ConfigError(std::string("negative index in '") + tag_name(ast.tag) + "'");
    }
    std::vector<EffectTree> kids;
    kids.reserve(ast.children.size());
    for (const auto& c : ast.children) kids.push_back(denote(*c));
    return it->second(ast, kids);
}

EffectTree denote(const Ast& ast, Strategy s, Binder b) {
    static const char* all[] = {"arith", "lambda", "let", "print", "state", "stage"};
    std::vector<Feature> fs;
    for (const char* name : all) fs.push_back(feature_by_name(name, s, b));
    return compose_features(fs).denote(ast);
}

}  // namespace latent::lang
