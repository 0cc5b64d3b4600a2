// Config-driven experiment runner: declare a symbol, a scheme and a list of
// checks in a TOML file; get a JSON report and a CSV scoreboard back.
#pragma once

#include <string>

namespace levymp {

struct RunPaths {
    std::string report_json;
    std::string scoreboard_csv;
};

// Executes the pipeline (build symbol -> optionally mollify coefficients ->
// simulate ensemble -> run checks -> analysis ops). Returns the process exit
// code: 0 all non-inconclusive checks pass, 1 check failures, 2 config
// errors, 3 simulation blow-up.
int run_config(const std::string& config_path, const std::string& out_dir_override = "",
               int threads_override = 0, RunPaths* out_paths = nullptr);

std::string catalog_text();

}  // namespace levymp
