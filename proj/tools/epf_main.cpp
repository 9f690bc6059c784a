#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "epf/cli/config.hpp"
#include "epf/cli/pipeline.hpp"
#include "epf/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"epf - two-stage electricity price forecasting pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    uint64_t seed_override = 0;
    bool seed_given = false;
    int jobs_override = 0;
    epf::pipeline::Options opt;

    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--seed", seed_override, "override the run seed")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--jobs", jobs_override, "parallel evaluation windows");
    app.add_flag("--dry-run", opt.dry_run, "validate config and print the plan");
    app.add_flag("--verbose", opt.verbose, "chatty progress output");

    using Command = void (*)(const epf::RunConfig&, const epf::pipeline::Options&);
    struct Sub {
        const char* name;
        const char* help;
        Command fn;
    };
    const Sub subs[] = {
        {"simulate", "generate the synthetic market panel", epf::pipeline::simulate},
        {"ingest", "align raw CSV sources into the canonical table", epf::pipeline::ingest},
        {"forecast", "run stage 1 for the staged window into the cache", epf::pipeline::forecast},
        {"features", "assemble enriched feature matrices", epf::pipeline::features},
        {"train", "train the stage-2 regressor", epf::pipeline::train},
        {"predict", "predict the staged test window", epf::pipeline::predict},
        {"evaluate", "run the full rolling protocol", epf::pipeline::evaluate},
        {"explain", "attribute one prediction and rank features", epf::pipeline::explain},
        {"report", "re-render report files from report.json", epf::pipeline::report},
    };
    CLI::App* chosen[std::size(subs)] = {};
    for (size_t i = 0; i < std::size(subs); ++i)
        chosen[i] = app.add_subcommand(subs[i].name, subs[i].help);
    chosen[7]->add_option("--instance", opt.instance, "test-window timestamp to explain");
    chosen[7]->add_option("--top-k", opt.top_k, "features listed before the 'others' bucket");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        epf::RunConfig cfg = epf::load_run_config(config_path);
        if (seed_given) {
            cfg.seed = seed_override;
            cfg.gbdt.seed = seed_override;
        }
        if (jobs_override > 0) cfg.jobs = jobs_override;
        for (size_t i = 0; i < std::size(subs); ++i) {
            if (chosen[i]->parsed()) {
                subs[i].fn(cfg, opt);
                return 0;
            }
        }
        std::cerr << "error: no command selected\n";
        return 2;
    } catch (const epf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
