#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tilekit/commands.hpp"

int main(int argc, char** argv) {
    using namespace tilekit::cli;

    CLI::App app{"tilekit: complements of finite multisets of integers, their periods and cyclotomic structure"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    cfg.budget = default_budget();
    std::string format = "json";
    std::string output;

    app.add_option("--input,-i", cfg.input_path, "Input JSON file");
    app.add_option("--output,-o", output, "Write output here instead of stdout");
    app.add_option("--epsilon", cfg.epsilon, "Exponent slack in the n^(1/3+eps) bound")->capture_default_str();
    app.add_option("--budget", cfg.budget, "Maximum window states visited per search (env TILEKIT_BUDGET)")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for generated instances")->capture_default_str();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    auto* analyze = app.add_subcommand("analyze", "Find a t-complement and report both period routes");
    auto* complement = app.add_subcommand("complement", "Find a t-complement witness only");
    auto* factor = app.add_subcommand("factor", "Cyclotomic part of an integer polynomial");
    auto* bounds = app.add_subcommand("bounds", "Run the lemma checks and period-bound comparison");
    auto* batch = app.add_subcommand("batch", "Sweep a (diam, t, weightCap) grid");
    for (auto* sub : {analyze, complement, factor, batch}) sub->callback([&] {
        if (cfg.input_path.empty()) throw CLI::RequiredError("--input");
    });
    (void)bounds;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInputError;
    }

    const std::map<CLI::App*, Command> commands{{analyze, Command::analyze},   {complement, Command::complement},
                                                {factor, Command::factor},     {bounds, Command::bounds},
                                                {batch, Command::batch}};
    for (auto* sub : app.get_subcommands()) cfg.command = commands.at(sub);
    cfg.output_format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    if (!output.empty()) cfg.output_path = output;
    return run(cfg);
}
