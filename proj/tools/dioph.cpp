#include <iostream>

#include "CLI11.hpp"
#include "dioph/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Rigorous checks for rational approximation bounds"};
    app.require_subcommand(1);
    dioph::RunConfig cfg;
    for (const std::string& name : dioph::command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", cfg.input, "TOML instance file");
        sub->add_option("--output", cfg.output, "write the JSON report here instead of stdout");
        sub->add_option("--precision", cfg.precision, "working precision in bits");
        sub->add_option("--seed", cfg.seed, "seed for fuzzed suites");
        sub->add_option("--max-lattice", cfg.max_lattice, "largest box or lattice enumeration allowed");
        sub->add_option("--max-plucker", cfg.max_plucker, "largest Pluecker expansion allowed");
        sub->callback([&cfg, name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? dioph::kExitOk : dioph::kExitInput;
    }
    try {
        dioph::apply_env_overrides(cfg);
        dioph::RunResult res = dioph::run(cfg);
        if (cfg.output.empty()) std::cout << res.report;
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "dioph: " << e.what() << "\n";
        return dioph::kExitInput;
    }
}
