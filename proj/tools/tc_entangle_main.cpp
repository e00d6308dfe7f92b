#include "tc/errors.hpp"
#include "tc/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

// Exit-code contract: 0 success, 1 configuration error, 2 numerical failure.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

int cmd_run(const std::string& config_path) {
    tc::experiments::Config config = tc::experiments::Config::parse_file(config_path);
    const auto files = tc::experiments::run_experiment(config);
    for (const auto& f : files) {
        std::cout << "wrote " << f.string() << "\n";
    }
    return kOk;
}

int cmd_list() {
    for (const auto& e : tc::experiments::registry()) {
        std::cout << e.name << "\n  " << e.description << "\n  columns:";
        for (const auto& c : e.columns) std::cout << ' ' << c;
        std::cout << "\n  required:";
        for (const auto& k : e.required_keys) std::cout << ' ' << k;
        if (!e.optional_keys.empty()) {
            std::cout << "\n  optional:";
            for (const auto& k : e.optional_keys) std::cout << ' ' << k;
        }
        std::cout << "\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon Tavis-Cummings entanglement experiments"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "path to a key=value config file")->required();

    bool verbose = false;
    auto* verify = app.add_subcommand("verify", "run the oracle cross-check battery");
    verify->add_flag("-v,--verbose", verbose, "print per-check notes");

    auto* list = app.add_subcommand("list", "print the experiment registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (verify->parsed()) {
            return tc::experiments::verify(verbose, std::cout, "verify_report.csv");
        }
        if (list->parsed()) return cmd_list();
    } catch (const tc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const tc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericalError;
    }
    return kConfigError;
}
