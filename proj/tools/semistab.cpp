#include "semistab_app/acceptance.hpp"
#include "semistab_app/analyze.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace app = semistab::app;

namespace {

int analyze_command(const std::string& config_file, const std::string& preset,
                    const std::string& out_dir, std::optional<double> horizon,
                    std::optional<std::uint64_t> seed) {
    app::Json config;
    try {
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) {
                std::cerr << "error: cannot open config file '" << config_file << "'\n";
                return 2;
            }
            config = app::Json::parse(in);
            if (horizon) {
                config["grid"]["horizon"] = *horizon;
            }
            if (seed) {
                config["seed"] = *seed;
            }
        } else {
            config = app::preset_config(preset, seed, horizon);
        }
    } catch (const app::Json::exception& e) {
        std::cerr << "error: invalid config: " << e.what() << "\n";
        return 2;
    } catch (const semistab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!out_dir.empty()) {
        config["output_dir"] = out_dir;
    }
    const std::string dir = config.value("output_dir", std::string("semistab-out"));
    return app::run_analyze(config, dir, std::cout, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"semistab: finite-horizon stability diagnostics for C0-semigroups"};
    cli.require_subcommand(1);

    std::string config_file, preset, out_dir;
    std::optional<double> horizon;
    std::optional<std::uint64_t> seed;
    auto* analyze = cli.add_subcommand("analyze", "run a configured or preset analysis");
    auto* cfg_opt = analyze->add_option("--config", config_file, "JSON run configuration");
    auto* preset_opt = analyze->add_option("--preset", preset, "named scenario (see `presets`)");
    cfg_opt->excludes(preset_opt);
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_option("--horizon", horizon, "time horizon T");
    analyze->add_option("--seed", seed, "random seed");

    std::string suite = "fast";
    std::vector<int> only;
    auto* check = cli.add_subcommand("check", "run the acceptance suite");
    check->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    check->add_option("--criterion", only, "run only these criteria (1-10)");

    auto* list = cli.add_subcommand("presets", "list scenario presets");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*analyze) {
        if (config_file.empty() && preset.empty()) {
            std::cerr << "error: analyze needs --config or --preset\n";
            return 2;
        }
        return analyze_command(config_file, preset, out_dir, horizon, seed);
    }
    if (*check) {
        try {
            return app::run_check(app::parse_suite(suite), std::cout, only);
        } catch (const semistab::ValidationError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    if (*list) {
        std::cout << app::list_presets();
        return 0;
    }
    return 2;
}
