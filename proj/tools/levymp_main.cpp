// levymp command-line driver: config-driven experiment runs and the symbol
// catalog listing.
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "levymp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"levymp - Levy-type operator toolkit: simulate jump SDE ensembles and run "
                 "martingale-problem diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "execute a TOML experiment config");
    run->add_option("config", config_path, "path to the experiment config")->required();
    run->add_option("--out", out_dir, "output directory (overrides [output].dir)");
    run->add_option("--threads", threads,
                    "worker thread count (default: LEVY_MP_THREADS or hardware)");

    CLI::App* list = app.add_subcommand("list-catalog", "print the symbol catalog");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << levymp::catalog_text();
        return 0;
    }
    return levymp::run_config(config_path, out_dir, threads);
}
