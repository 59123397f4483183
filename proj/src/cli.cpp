#include "latent/cli.hpp"

#include <cctype>
#include <functional>

#include "json.hpp"

namespace latent::cli {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    enum Kind { Open, Close, Int, Str, Sym, End } kind = End;
    std::string text;
    std::int64_t number = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_blank();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (c == '(') {
            advance();
            t.kind = Token::Open;
        } else if (c == ')') {
            advance();
            t.kind = Token::Close;
        } else if (c == '"') {
            t.kind = Token::Str;
            t.text = read_string(t);
        } else {
            std::string word;
            while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
                   src_[pos_] != '(' && src_[pos_] != ')' && src_[pos_] != '"' && src_[pos_] != ';') {
                word += src_[pos_];
                advance();
            }
            if (is_integer(word)) {
                t.kind = Token::Int;
                try {
                    t.number = std::stoll(word);
                } catch (const std::out_of_range&) {
                    throw ParseError("integer out of range: " + word, t.line, t.column);
                }
            } else {
                t.kind = Token::Sym;
            }
            t.text = word;
        }
        return t;
    }

private:
    static bool is_integer(const std::string& w) {
        std::size_t i = (!w.empty() && w[0] == '-') ? 1 : 0;
        if (i == w.size()) return false;
        for (; i < w.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(w[i]))) return false;
        }
        return true;
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ';') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string read_string(const Token& start) {
        advance();
        std::string out;
        for (;;) {
            if (pos_ >= src_.size()) throw ParseError("unterminated string", start.line, start.column);
            char c = src_[pos_];
            advance();
            if (c == '"') return out;
            if (c == '\\') {
                if (pos_ >= src_.size()) throw ParseError("unterminated string", start.line, start.column);
                char e = src_[pos_];
                advance();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: throw ParseError(std::string("unknown escape \\") + e, line_, col_ - 1);
                }
            } else {
                out += c;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) { shift(); }

    lang::AstPtr program() {
        auto e = expr();
        if (tok_.kind != Token::End) fail("unexpected input after program");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.column); }

    void shift() { tok_ = lex_.next(); }

    void expect(Token::Kind k, const char* what) {
        if (tok_.kind != k) fail(std::string("expected ") + what);
        shift();
    }

    std::int64_t integer(bool non_negative) {
        if (tok_.kind != Token::Int) fail("expected integer");
        std::int64_t n = tok_.number;
        if (non_negative && n < 0) fail("expected non-negative integer");
        shift();
        return n;
    }

    std::string string_lit() {
        if (tok_.kind != Token::Str) fail("expected string literal");
        std::string s = tok_.text;
        shift();
        return s;
    }

    lang::AstPtr expr() {
        if (tok_.kind == Token::End) fail("unexpected end of input");
        if (tok_.kind != Token::Open) fail("expected '('");
        shift();
        if (tok_.kind != Token::Sym) fail("expected form name");
        Token head = tok_;
        shift();
        lang::AstPtr out = form(head);
        expect(Token::Close, "')'");
        return out;
    }

    lang::AstPtr form(const Token& head) {
        const std::string& h = head.text;
        if (h == "num") return lang::num(integer(false));
        if (h == "var") return lang::var(integer(true));
        if (h == "letvar") return lang::letvar(integer(true));
        if (h == "print") return lang::print(string_lit());
        if (h == "get") return lang::get();
        if (h == "put") return lang::put(expr());
        if (h == "lam") return lang::lam(expr());
        if (h == "quote") return lang::quote(expr());
        if (h == "unquote") return lang::unquote(expr());
        if (h == "splice") return lang::splice(expr());
        if (h == "push") {
            std::int64_t n = integer(true);
            return lang::push(n, expr());
        }
        if (h == "+" || h == "app" || h == "let") {
            auto a = expr();
            auto b = expr();
            if (h == "+") return lang::add(std::move(a), std::move(b));
            if (h == "app") return lang::app(std::move(a), std::move(b));
            return lang::let(std::move(a), std::move(b));
        }
        if (h == "seq") {
            std::vector<lang::AstPtr> items;
            while (tok_.kind == Token::Open) items.push_back(expr());
            if (items.empty()) fail("seq needs at least one expression");
            return lang::seq(std::move(items));
        }
        throw ParseError("unknown form '" + h + "'", head.line, head.column);
    }

    Lexer lex_;
    Token tok_;
};

}  // namespace

lang::AstPtr parse_program(const std::string& source) { return Parser(source).program(); }

bool Pipeline::has(const std::string& name) const {
    for (const auto& h : handlers) {
        if (h.name == name) return true;
    }
    return false;
}

namespace {

const char* const known_handlers[] = {"mut",     "read",  "read-staged", "abs-cs", "abs-ds", "suspend", "thunk",
                                      "eager",   "exc",   "err",         "plus",   "print",  "end"};

bool is_known(const std::string& name) {
    for (const char* k : known_handlers) {
        if (name == k) return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

Pipeline parse_pipeline(const std::string& spec) {
    Pipeline p;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = spec.find(',', start);
        std::string item = trim(spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (item.empty()) throw lang::ConfigError("empty handler name in pipeline '" + spec + "'");
        HandlerSpec h;
        std::size_t eq = item.find('=');
        h.name = item.substr(0, eq);
        if (!is_known(h.name)) throw lang::ConfigError("unknown handler '" + h.name + "'");
        if (h.name == "mut") {
            if (eq == std::string::npos) throw lang::ConfigError("mut needs an initial state, e.g. mut=0");
            std::string arg = item.substr(eq + 1);
            try {
                std::size_t used = 0;
                h.init = std::stoll(arg, &used);
                if (used != arg.size()) throw std::invalid_argument(arg);
            } catch (const std::exception&) {
                throw lang::ConfigError("mut expects an integer, got '" + arg + "'");
            }
        } else if (eq != std::string::npos) {
            throw lang::ConfigError("handler '" + h.name + "' takes no parameter");
        }
        p.handlers.push_back(std::move(h));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    for (std::size_t i = 0; i < p.handlers.size(); ++i) {
        if (p.handlers[i].name == "end" && i + 1 != p.handlers.size()) {
            throw lang::ConfigError("'end' must appear once, as the last handler");
        }
    }
    if (p.handlers.back().name != "end") throw lang::ConfigError("pipeline must finish with 'end'");
    return p;
}

namespace {

using Stage = std::function<EffectTree(const EffectTree&)>;

Stage make_stage(const HandlerSpec& h, const std::shared_ptr<PrintLog>& log, const RunOptions& options) {
    const std::string& n = h.name;
    if (n == "mut") {
        Value s0 = Value::integer(*h.init);
        return [s0](const EffectTree& t) { return h_mut(s0, t); };
    }
    if (n == "read") {
        return [](const EffectTree& t) { return h_read(Value::env(Environment::plain({})), t); };
    }
    if (n == "read-staged") {
        return [](const EffectTree& t) { return h_read(Value::env(Environment::staged({})), t); };
    }
    if (n == "abs-cs") return [](const EffectTree& t) { return h_abs_cs(Environment::plain({}), {}, t); };
    if (n == "abs-ds") return [](const EffectTree& t) { return h_abs_ds(Environment::plain({}), {}, t); };
    if (n == "suspend") return [](const EffectTree& t) { return h_suspend({}, t); };
    if (n == "thunk") {
        auto probe = options.probe;
        return [probe](const EffectTree& t) { return h_thunk({}, t, probe); };
    }
    if (n == "eager") return [](const EffectTree& t) { return h_eager({}, t); };
    if (n == "exc") return [](const EffectTree& t) { return h_exc(t); };
    if (n == "err") return [](const EffectTree& t) { return h_err(t); };
    if (n == "plus") return [](const EffectTree& t) { return h_plus(t); };
    if (n == "print") return [log](const EffectTree& t) { return h_print(t, log); };
    throw lang::ConfigError("unknown handler '" + n + "'");
}

}  // namespace

RunReport run_tree(const EffectTree& program, const Pipeline& pipeline, const RunOptions& options) {
    auto log = std::make_shared<PrintLog>();
    std::vector<Stage> stages;
    for (const auto& h : pipeline.handlers) {
        if (h.name != "end") stages.push_back(make_stage(h, log, options));
    }
    RunReport report;
    try {
        EffectTree t = program;
        for (const auto& stage : stages) t = stage(t);
        Inspection result = inspect(h_end(t));
        report.value = result.value;
        report.states = std::move(result.states);
        report.failure = result.failure;
    } catch (const EvalError& e) {
        report.error = e.what();
    }
    report.prints = *log;
    return report;
}

RunReport run_program(const lang::Ast& ast, const Pipeline& pipeline, lang::Strategy strategy,
                      const RunOptions& options) {
    lang::Binder binder =
        (pipeline.has("abs-cs") || pipeline.has("abs-ds")) ? lang::Binder::Abstracting : lang::Binder::Reader;
    return run_tree(lang::denote(ast, strategy, binder), pipeline, options);
}

namespace {

using nlohmann::ordered_json;

ordered_json value_json(const Value& v) {
    struct Visitor {
        ordered_json operator()(const Unit&) const { return nullptr; }
        ordered_json operator()(std::int64_t n) const { return n; }
        ordered_json operator()(const std::string& s) const { return s; }
        ordered_json operator()(const Closure& c) const { return {{"closure", c.index}}; }
        ordered_json operator()(const Suspended& c) const { return {{"code", c.index}}; }
        ordered_json operator()(const Thunked& c) const { return {{"thunk", c.index}}; }
        ordered_json operator()(const Environment& e) const { return {{"env", to_string(e)}}; }
    };
    return std::visit(Visitor{}, v.rep());
}

ordered_json state_json(const HandlerState& s) {
    struct Visitor {
        ordered_json operator()(const MutState& m) const { return {{"mut", value_json(m.value)}}; }
        ordered_json operator()(const AbsStore& a) const { return {{"abs", a.entries.size()}}; }
        ordered_json operator()(const SuspStore& a) const { return {{"suspend", a.entries.size()}}; }
        ordered_json operator()(const ThunkStore& a) const {
            std::size_t forced = 0;
            for (const auto& slot : a.slots) forced += slot.forced() ? 1 : 0;
            return {{"thunk", a.slots.size()}, {"forced", forced}};
        }
        ordered_json operator()(const EagerStore& a) const {
            ordered_json vs = ordered_json::array();
            for (const auto& v : a.values) vs.push_back(value_json(v));
            return {{"eager", vs}};
        }
    };
    return std::visit(Visitor{}, s);
}

}  // namespace

std::string render_json(const RunReport& report) {
    ordered_json j;
    j["value"] = report.value ? value_json(*report.value) : ordered_json(nullptr);
    j["prints"] = report.prints;
    ordered_json states = ordered_json::array();
    for (const auto& s : report.states) states.push_back(state_json(s));
    j["states"] = states;
    if (report.failure) j["failure"] = value_json(*report.failure);
    if (report.error) j["error"] = *report.error;
    return j.dump();
}

}  // namespace latent::cli
