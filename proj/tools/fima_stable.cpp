#include <cstdio>
#include <exception>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fima/experiments.hpp"
#include "fima/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fima-stable: simulation and verification toolkit for fractionally "
                 "integrated moving average stable processes"};
    app.set_version_flag("--version", fima::kVersion);
    app.require_subcommand(1);

    // run
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir;
    int threads = 0;
    auto* run = app.add_subcommand("run", "run a named experiment from a config file");
    run->add_option("config", config_path, "experiment config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override ensemble.master_seed");
    run->add_option("--out", out_dir, "override output.dir");
    run->add_option("--threads", threads, "worker pool size (0 = runtime default)");

    // list
    bool as_json = false;
    auto* list = app.add_subcommand("list", "list the experiment registry");
    list->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        const auto& reg = fima::experiment_registry();
        if (as_json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& e : reg)
                j.push_back({{"name", e.name}, {"claim", e.claim}, {"runtime", e.runtime_hint}});
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("%-16s %-72s %s\n", "name", "claim", "runtime");
            for (const auto& e : reg)
                std::printf("%-16s %-72s %s\n", e.name.c_str(), e.claim.c_str(),
                            e.runtime_hint.c_str());
        }
        return 0;
    }

    seed_given = seed_opt->count() > 0;
    try {
        fima::ExperimentConfig cfg = fima::parse_config_file(config_path);
        if (seed_given) cfg.master_seed = seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;

        const auto result = fima::run_experiment(cfg, cfg.out_dir);
        for (const auto& a : result.assertions)
            std::printf("[%s] %s: %s\n", a.pass ? "PASS" : "FAIL", a.name.c_str(),
                        a.detail.c_str());
        std::printf("%s: %zu/%zu assertions passed (%.1fs)\n", result.experiment.c_str(),
                    result.assertions.size() -
                        static_cast<std::size_t>(std::count_if(
                            result.assertions.begin(), result.assertions.end(),
                            [](const auto& a) { return !a.pass; })),
                    result.assertions.size(), result.runtime_seconds);
        return result.all_pass() ? 0 : 1;
    } catch (const fima::ConfigError& e) {
        nlohmann::ordered_json err{{"error", "config"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const fima::QuadFailure& e) {
        nlohmann::ordered_json err{{"error", "numerical"},
                                   {"message", e.what()},
                                   {"partial", e.partial},
                                   {"achieved_tol", e.achieved_tol}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err{{"error", "numerical"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    }
}
