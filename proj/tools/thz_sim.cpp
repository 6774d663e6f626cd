// thz_sim: path loss, transmission windows, rate curves and scenario planners
// for outdoor THz links. Every subcommand writes plot-ready CSV.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thz/config.hpp"
#include "thz/csv.hpp"
#include "thz/run.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string seed;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--config", opts.config_path, "Config file (sectioned key = value)");
    cmd->add_option("--out", opts.out_dir, "Output directory for CSV files");
    cmd->add_option("--seed", opts.seed, "Top-level 64-bit seed");
    cmd->add_option("--set", opts.sets, "Override a key, e.g. --set atmosphere.relative_humidity=100");
}

thz::SimConfig load(const CommonOptions& opts, const std::string& scenario)
{
    std::string text;
    if (!opts.config_path.empty())
        text = thz::read_text_file(opts.config_path);
    thz::ConfigOverrides overrides;
    if (!scenario.empty())
        overrides.emplace_back("scenario.name", scenario);
    if (!opts.out_dir.empty())
        overrides.emplace_back("run.output", opts.out_dir);
    if (!opts.seed.empty())
        overrides.emplace_back("run.seed", opts.seed);
    for (const auto& s : opts.sets)
        overrides.push_back(thz::split_override(s));
    return thz::parse_config(text, overrides);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Outdoor THz link and scenario simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    const std::vector<std::string> scenarios{"pathloss", "windows", "rate", "backhaul",
                                             "kiosk-c", "kiosk-d", "abs"};
    for (const auto& name : scenarios)
        add_common(app.add_subcommand(name, "Run the " + name + " scenario"), opts);
    add_common(app.add_subcommand("validate-config", "Parse, fill defaults and print the config"),
               opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : thz::kExitConfigError;
    }

    const auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    try {
        if (name == "validate-config") {
            std::cout << thz::to_text(load(opts, ""));
            return thz::kExitOk;
        }
        return thz::run(load(opts, name), std::cout, std::cerr);
    } catch (const thz::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return thz::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return thz::kExitConfigError;
    }
}
