// kzent: concurrence traces of a qubit pair coupled to a quenched Ising ring.

#include "kzent/errors.hpp"
#include "kzent/presets.hpp"
#include "kzent/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    std::string out;
};

std::string read_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw kzent::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// Flags beat the environment, which beats the JSON document.
std::string output_dir(const kzent::ScenarioConfig& cfg, const Overrides& o)
{
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv("KZENT_OUT_DIR"); env && *env) return env;
    return cfg.out_dir;
}

int execute(kzent::ScenarioConfig cfg, const Overrides& o)
{
    if (o.seed) cfg.seed = *o.seed;
    if (o.realizations) cfg.realizations = *o.realizations;
    const kzent::ScenarioResult res = kzent::run_scenario(cfg);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& p : kzent::write_outputs(res, output_dir(cfg, o))) std::cout << p.string() << "\n";
    if (!res.checks_passed) {
        std::cerr << "oracle-check: one or more checks exceeded tolerance\n";
        return 1;
    }
    return 0;
}

void add_common(CLI::App* cmd, Overrides& o, bool with_config)
{
    if (with_config) cmd->add_option("--config", o.config_path, "scenario JSON document")->required();
    cmd->add_option("--seed", o.seed, "override the sampling seed");
    cmd->add_option("--realizations", o.realizations, "override the number of ensemble realizations");
    cmd->add_option("--out", o.out, "output directory (else $KZENT_OUT_DIR, else the config's out_dir)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entanglement of a qubit pair coupled to a transverse-field Ising ring"};
    app.set_version_flag("--version", std::string(kzent::version()));
    app.require_subcommand(1);

    Overrides o;
    std::string preset_name;
    struct ModeCommand {
        kzent::Mode mode;
        const char* help;
    };
    const ModeCommand modes[] = {
        {kzent::Mode::para, "constant-field trace"},
        {kzent::Mode::dia, "frozen-domain trace(s), one per dia run"},
        {kzent::Mode::compare, "constant-field vs frozen-domain traces and their difference"},
        {kzent::Mode::sweep_g, "difference surface over the coupling and time"},
        {kzent::Mode::oracle_check, "closed forms vs independent oracles"},
    };
    std::vector<std::pair<CLI::App*, kzent::Mode>> mode_cmds;
    for (const auto& m : modes) {
        auto* cmd = app.add_subcommand(std::string(kzent::to_string(m.mode)), m.help);
        add_common(cmd, o, true);
        mode_cmds.emplace_back(cmd, m.mode);
    }
    auto* preset = app.add_subcommand("preset", "run a built-in figure scenario");
    preset->add_option("name", preset_name, "fig3, fig4 or fig5")->required();
    add_common(preset, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (preset->parsed()) {
            kzent::ScenarioConfig cfg = kzent::parse_config_text(kzent::preset_json(preset_name));
            return execute(std::move(cfg), o);
        }
        for (const auto& [cmd, mode] : mode_cmds) {
            if (!cmd->parsed()) continue;
            kzent::ScenarioConfig cfg = kzent::parse_config_text(read_file(o.config_path));
            cfg.mode = mode;
            return execute(std::move(cfg), o);
        }
    } catch (const kzent::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
