#include "latent/value.hpp"

#include <sstream>

namespace latent {

struct Environment::Rep {
    std::variant<std::vector<Value>, StagedEnv> content;
};

namespace {

const std::shared_ptr<const Environment::Rep>& empty_rep() {
    static const auto rep = std::make_shared<const Environment::Rep>();
    return rep;
}

}  // namespace

Environment::Environment() : rep_(empty_rep()) {}

Environment::Environment(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

Environment Environment::plain(std::vector<Value> values) {
    return Environment{std::make_shared<const Rep>(Rep{std::move(values)})};
}

Environment Environment::staged(StagedEnv slots) {
    return Environment{std::make_shared<const Rep>(Rep{std::move(slots)})};
}

bool Environment::is_staged() const noexcept { return rep_->content.index() == 1; }

const std::vector<Value>& Environment::values() const {
    if (is_staged()) throw EvalError("expected a plain environment");
    return std::get<0>(rep_->content);
}

const StagedEnv& Environment::slots() const {
    if (!is_staged()) throw EvalError("expected a staged environment");
    return std::get<1>(rep_->content);
}

const Value& Environment::at(std::int64_t index) const {
    const auto& vs = values();
    if (index < 0 || static_cast<std::size_t>(index) >= vs.size()) throw EvalError("bad index");
    return vs[static_cast<std::size_t>(index)];
}

Environment Environment::prepend(Value v) const {
    std::vector<Value> vs;
    vs.reserve(size() + 1);
    vs.push_back(std::move(v));
    const auto& rest = values();
    vs.insert(vs.end(), rest.begin(), rest.end());
    return plain(std::move(vs));
}

std::size_t Environment::size() const noexcept {
    if (rep_->content.index() == 0) return std::get<0>(rep_->content).size();
    return std::get<1>(rep_->content).slots.size();
}

bool operator==(const Environment& a, const Environment& b) {
    return a.rep_ == b.rep_ || a.rep_->content == b.rep_->content;
}

namespace {

struct Printer {
    std::ostream& os;

    void operator()(const Unit&) const { os << "()"; }
    void operator()(std::int64_t n) const { os << n; }
    void operator()(const std::string& s) const { os << '"' << s << '"'; }
    void operator()(const Closure& c) const { os << "clos(" << c.index << ", " << to_string(c.env) << ")"; }
    void operator()(const Suspended& c) const { os << "code(" << c.index << ", " << to_string(c.env) << ")"; }
    void operator()(const Thunked& c) const { os << "thunk(" << c.index << ", " << to_string(c.env) << ")"; }
    void operator()(const Environment& e) const { os << to_string(e); }
};

}  // namespace

std::string to_string(const Value& v) {
    std::ostringstream os;
    std::visit(Printer{os}, v.rep());
    return os.str();
}

std::string to_string(const Environment& e) {
    std::ostringstream os;
    os << '[';
    if (!e.is_staged()) {
        const auto& vs = e.values();
        for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << to_string(vs[i]);
    } else {
        const auto& ss = e.slots().slots;
        for (std::size_t i = 0; i < ss.size(); ++i) {
            os << (i ? ", " : "");
            if (std::holds_alternative<Hole>(ss[i])) {
                os << '_';
            } else if (const auto* f = std::get_if<Forward>(&ss[i])) {
                os << "->" << f->offset;
            } else {
                os << to_string(std::get<Value>(ss[i]));
            }
        }
        os << " | staged";
    }
    os << ']';
    return os.str();
}

}  // namespace latent
