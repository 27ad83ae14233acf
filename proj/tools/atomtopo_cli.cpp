#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "atomtopo/experiments.hpp"
#include "atomtopo/linalg.hpp"
#include "atomtopo/types.hpp"

namespace fs = std::filesystem;
using atomtopo::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, failure = 1, invalid = 2, numerical = 3 };

json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw atomtopo::ConfigError("config: cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw atomtopo::ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
}

int cmd_validate(const std::string& path) {
    const json c = atomtopo::effective_config(read_config(path));
    std::cout << "OK\n" << c.dump(2) << '\n';
    return ok;
}

int cmd_run(const std::string& path, const std::string& out, int threads, long long seed, bool verbose) {
    json user = read_config(path);
    if (seed >= 0 && user.is_object()) user["seed"] = seed;
    const json c = atomtopo::effective_config(user);
    if (threads > 0) atomtopo::set_num_threads(threads);

    fs::create_directories(out);
    const auto start = std::chrono::steady_clock::now();
    const atomtopo::RunResult res = atomtopo::run_experiment(c, out, {verbose});
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream(fs::path(out) / "metrics.json", std::ios::binary) << res.metrics.dump(2) << '\n';
    json manifest = {{"tool", "atomtopo"},
                     {"version", kVersion},
                     {"config", c},
                     {"seed", c["seed"]},
                     {"threads", atomtopo::num_threads()},
                     {"wall_time_s", wall},
                     {"artifacts", res.artifacts},
                     {"metrics_file", "metrics.json"}};
    std::ofstream(fs::path(out) / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
    if (verbose) std::cerr << "done in " << wall << " s\n";
    std::cout << res.metrics.dump() << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dipole-coupled atomic lattice simulator"};
    app.require_subcommand(1);
    std::string config, out = "out";
    int threads = 0;
    long long seed = -1;
    bool verbose = false;

    auto* run = app.add_subcommand("run", "Run an experiment and write its artifacts");
    run->add_option("--config", config, "JSON config file")->required();
    run->add_option("--out", out, "Output directory");
    run->add_option("--threads", threads, "Worker thread cap (0 = all cores)");
    run->add_option("--seed", seed, "Override the config seed");
    run->add_flag("--verbose", verbose, "Progress on stderr");

    auto* validate = app.add_subcommand("validate", "Check a config and print its effective defaults");
    validate->add_option("--config", config, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid;
    }

    try {
        if (*validate) return cmd_validate(config);
        return cmd_run(config, out, threads, seed, verbose);
    } catch (const atomtopo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return invalid;
    } catch (const atomtopo::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return invalid;
    } catch (const atomtopo::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
}
