#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pipeline.hpp"

using namespace moser::app;

int main(int argc, char **argv)
{
    CLI::App app{"Time-dependent normal forms near hyperbolic equilibria"};
    app.require_subcommand(1);
    std::string config_path, out_dir = "out";
    std::uint64_t seed = 0;
    auto add = [&](const char *name, const char *desc) {
        CLI::App *sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "problem config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "seed for residual sample points");
        return sub;
    };
    CLI::App *sched = add("schedule", "bound schedule from the measured perturbation size");
    CLI::App *norm = add("normalize", "normalize and check the bounds");
    CLI::App *verify = add("verify", "normalize, then compare flows through the conjugacy");
    CLI::App *all = add("all", "schedule, normalize and verify");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config_error;
    }

    Stage stage = Stage::all;
    if (sched->parsed()) stage = Stage::schedule;
    else if (norm->parsed()) stage = Stage::normalize;
    else if (verify->parsed()) stage = Stage::verify;
    else if (all->parsed()) stage = Stage::all;

    std::ifstream in(config_path);
    std::stringstream text;
    text << in.rdbuf();
    const Outcome out = run_text(text.str(), stage, seed);
    try {
        emit(out, out_dir);
    } catch (const std::exception &e) {
        std::cerr << "cannot write to " << out_dir << ": " << e.what() << '\n';
        return exit_engine_error;
    }
    std::cout << summary(out);
    if (out.report.contains("error")) std::cerr << out.report["error"].dump() << '\n';
    return out.exit_code;
}
