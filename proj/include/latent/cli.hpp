#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latent/effects.hpp"
#include "latent/lang.hpp"

namespace latent::cli {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parse one S-expression program.
lang::AstPtr parse_program(const std::string& source);

struct HandlerSpec {
    std::string name;
    std::optional<std::int64_t> init;  // mut=<int>
};

struct Pipeline {
    std::vector<HandlerSpec> handlers;  // program side first, ends with "end"
    [[nodiscard]] bool has(const std::string& name) const;
};

/// Comma separated handler list, e.g. "mut=0,abs-cs,plus,end".
Pipeline parse_pipeline(const std::string& spec);

struct RunReport {
    std::optional<Value> value;
    std::vector<std::string> prints;
    std::vector<HandlerState> states;  // outermost first
    std::optional<Value> failure;
    std::optional<std::string> error;
};

struct RunOptions {
    std::shared_ptr<ThunkProbe> probe;
};

/// Apply every handler of the pipeline and inspect the result. Semantic
/// errors are captured in the report.
RunReport run_tree(const EffectTree& program, const Pipeline& pipeline, const RunOptions& options = {});

/// Denote under the strategy and run. Call-by-value programs use Abstracting
/// binders when the pipeline has an abs handler, Reading binders otherwise.
RunReport run_program(const lang::Ast& ast, const Pipeline& pipeline, lang::Strategy strategy,
                      const RunOptions& options = {});

std::string render_json(const RunReport& report);

}  // namespace latent::cli
