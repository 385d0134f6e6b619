// gawq <subcommand> <config-path> [--out DIR]

#include "gawq/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Single-photon scattering off a two-point atom in a coupled-resonator waveguide"};
    app.require_subcommand(1);
    std::string config;
    std::string out;
    for (const auto& name : gawq::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("config", config, "configuration file")->required();
        sub->add_option("--out", out, "output directory (overrides out.dir)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : gawq::exit_code::config;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    return gawq::dispatch(name, config, out, std::cout, std::cerr);
}
