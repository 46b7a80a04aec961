#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "specdim/error.hpp"
#include "specdim/runner.hpp"

// specdim: batch front-end over the library.  Every subcommand reads one
// JSON config file and writes <command>.csv / <command>.json into --out.

int main(int argc, char** argv) {
    CLI::App app{"spectral dimension laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int workers = 0;
    std::uint64_t seed = 1;

    for (const std::string& name : specdim::command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory (default .)");
        sub->add_option("--workers", workers, "thread count, 0 = default");
        sub->add_option("--seed", seed, "seed for randomized generators (default 1)");
    }

    CLI11_PARSE(app, argc, argv);

    specdim::RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.out_dir = out_dir;
    cfg.workers = workers;
    cfg.seed = seed;

    try {
        std::ifstream f(config_path);
        specdim::require(f.is_open(), specdim::Err::IoFailure,
                         "cannot open config file " + config_path);
        try {
            cfg.params = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            specdim::fail(specdim::Err::BadConfig,
                          "config: not valid JSON (" + std::string(e.what()) + ")");
        }
        const specdim::RunResult res = specdim::run(cfg);
        for (const std::string& path : res.files) std::printf("wrote %s\n", path.c_str());
        return 0;
    } catch (const specdim::Error& e) {
        std::fprintf(stderr, "%s: %s\n", cfg.command.c_str(), e.what());
        return e.code() == specdim::Err::BadConfig ? 2 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s: %s\n", cfg.command.c_str(), e.what());
        return 1;
    }
}
