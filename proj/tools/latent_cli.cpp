// Command line front end: run an S-expression program through a handler pipeline.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "latent/cli.hpp"

namespace {

int run_command(const std::string& file, const std::string& pipeline_spec, const std::string& strategy_name) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "error: cannot open " << file << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    try {
        auto ast = latent::cli::parse_program(buf.str());
        auto pipeline = latent::cli::parse_pipeline(pipeline_spec);
        auto strategy = latent::lang::parse_strategy(strategy_name);
        auto report = latent::cli::run_program(*ast, pipeline, strategy);
        std::cout << latent::cli::render_json(report) << "\n";
        if (report.error) {
            std::cerr << "error: " << *report.error << "\n";
            return 1;
        }
        return 0;
    } catch (const latent::cli::ParseError& e) {
        std::cerr << file << ":" << e.what() << "\n";
        return 2;
    } catch (const latent::lang::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const latent::EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Run programs through modular latent effect handlers"};
    app.require_subcommand(1);

    std::string file;
    std::string pipeline;
    std::string strategy = "cbv";
    std::string format = "json";

    auto* run = app.add_subcommand("run", "Evaluate a program and print a JSON report");
    run->add_option("file", file, "Program file (S-expression)")->required();
    run->add_option("--pipeline", pipeline, "Comma separated handlers, program side first, ending in 'end'")
        ->required();
    run->add_option("--strategy", strategy, "Evaluation strategy for lambdas")
        ->check(CLI::IsMember({"cbv", "cbn", "need"}));
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run_command(file, pipeline, strategy);
}
