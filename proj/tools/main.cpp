// qswitch: command-line driver. One subcommand per experiment; `run` takes
// the command from the configuration itself.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qswitch/config.hpp"
#include "qswitch/error.hpp"
#include "qswitch/runner.hpp"

namespace {

struct Flags {
    std::string config;
    std::string preset;
    std::string out = ".";
    std::vector<std::string> set;
    int threads = 1;
};

qswitch::Entries layered(const Flags& f, const std::string& command) {
    using namespace qswitch;
    Entries merged;
    auto layer = [&](const std::string& text, const std::string& source) {
        try {
            for (auto& [k, v] : parse_entries(text)) merged[k] = v;
        } catch (const ConfigError& e) {
            throw ConfigError(source + ": " + e.what());
        }
    };
    if (!f.preset.empty()) layer(load_preset(f.preset), "preset " + f.preset);
    if (!f.config.empty()) layer(read_text_file(f.config), f.config);
    if (!command.empty()) merged["command"] = {command, 0};
    return apply_overrides(std::move(merged), f.set);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-switched cavity photon source simulator"};
    app.set_version_flag("--version", std::string(QSWITCH_VERSION_STRING));
    app.require_subcommand(1);

    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spectra", "eigenvalues versus gate detuning"},
        {"transient", "population map versus time and fixed gate detuning"},
        {"switch", "adiabatic sweep through the gate resonance"},
        {"quiescent", "leakage of the dressed cavity state with the gate detuned"},
        {"estimate", "physical coupling and quality-factor estimates"},
        {"validate", "check parameters"},
        {"run", "use the command given in the configuration"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "configuration file")->check(CLI::ExistingFile);
        sub->add_option("--preset", flags.preset, "shipped preset: fig2, fig3, fig5, table1");
        sub->add_option("--out", flags.out, "output directory")->capture_default_str();
        sub->add_option("--set", flags.set, "override key=value (repeatable)")->take_all();
        sub->add_option("--threads", flags.threads, "worker threads for grid workloads")
            ->check(CLI::Range(1, 1024))
            ->capture_default_str();
    }

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    qswitch::RunSpec spec;
    try {
        spec = qswitch::resolve(layered(flags, name == "run" ? "" : name));
    } catch (const qswitch::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qswitch::exit_config;
    } catch (const qswitch::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qswitch::exit_io;
    }
    return qswitch::run(spec, {flags.out, flags.threads}, std::cout, std::cerr);
}
