// Command-line front end: certify / sweep / recover / tradeoff / monitor /
// tomography, emitting CSV or JSON-lines tables for plotting.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entanglecert/run.hpp"
#include "entanglecert/version.hpp"

namespace {

using entanglecert::RunConfig;

constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

// Flag staging area; only values the user actually passed override the
// config-file (and default) values.
struct FlagValues {
    std::string config_path;
    std::string state;
    std::string test;
    double pa = 0.0;
    double pb = 0.0;
    std::string grid;
    int points = 0;
    long shots = 0;
    bool exact = false;
    std::uint64_t seed = 0;
    std::string policy;
    double threshold = 0.0;
    int windows = 0;
    double ou_mu = 0.0;
    double ou_theta = 0.0;
    double ou_sigma = 0.0;
    double ou_dt = 0.0;
    std::string plan;
    std::string format;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw entanglecert::IoError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

// Re-applies every flag the user actually passed on top of the file-derived
// configuration.
void apply_flags(const CLI::App* cmd, const FlagValues& flags, RunConfig& config) {
    const auto passed = [&](const std::string& name) {
        const CLI::Option* option = cmd->get_option_no_throw(name);
        return option != nullptr && option->count() > 0;
    };
    const auto entry = [&](const std::string& key, const std::string& value) {
        entanglecert::apply_config_entry(config, key, value, 0);
    };
    if (passed("--state")) config.state = entanglecert::StateSpec::parse(flags.state);
    if (passed("--test")) entry("test", flags.test);
    if (passed("--pa")) config.pa = flags.pa;
    if (passed("--pb")) config.pb = flags.pb;
    if (passed("--grid")) config.grid = entanglecert::GridSpec::parse(flags.grid);
    if (passed("--points")) config.points = flags.points;
    if (passed("--shots")) {
        // Monitor samples per window; the other commands sample per setting.
        if (config.command == entanglecert::Command::monitor)
            config.window_shots = flags.shots;
        else
            config.shots = flags.shots;
    }
    if (passed("--exact")) {
        config.exact = true;
        config.shots = 0;
    }
    if (passed("--seed")) config.seed = flags.seed;
    if (passed("--policy")) entry("policy", flags.policy);
    if (passed("--threshold")) config.threshold = flags.threshold;
    if (passed("--windows")) config.windows = flags.windows;
    if (passed("--ou-mu")) config.ou_mu = flags.ou_mu;
    if (passed("--ou-theta")) config.ou_theta = flags.ou_theta;
    if (passed("--ou-sigma")) config.ou_sigma = flags.ou_sigma;
    if (passed("--ou-dt")) config.ou_dt = flags.ou_dt;
    if (passed("--plan")) entry("plan", flags.plan);
    if (passed("--format")) entry("format", flags.format);
    if (passed("--out")) config.out = flags.out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit entanglement certification with weak measurements, "
                 "probabilistic recovery, and drifting-source selection"};
    app.set_version_flag("--version", entanglecert::version);
    app.require_subcommand(1);

    FlagValues flags;

    CLI::App* certify = app.add_subcommand("certify", "run one certification test at fixed strengths");
    CLI::App* sweep = app.add_subcommand("sweep", "certification statistics over a strength grid");
    CLI::App* recover = app.add_subcommand("recover", "state quality before/after reversal vs strength");
    CLI::App* tradeoff = app.add_subcommand("tradeoff", "reversibility/nonlocality/steering/entanglement curves");
    CLI::App* monitor = app.add_subcommand("monitor", "drifting-source monitoring with witness-gated selection");
    CLI::App* tomography = app.add_subcommand("tomography", "linear-inversion state reconstruction from Pauli expectations");

    for (CLI::App* cmd : {certify, sweep, recover, tradeoff, monitor, tomography}) {
        cmd->add_option("--config", flags.config_path, "key=value configuration file");
        cmd->add_option("--state", flags.state, "input state: ideal | mixed:<gamma> | tomo:<path>");
        cmd->add_option("--seed", flags.seed, "RNG seed (default: ENTANGLECERT_SEED or 0)");
        cmd->add_option("--out", flags.out, "output path (default: stdout)");
        cmd->add_option("--format", flags.format, "output format: csv | jsonl");
    }
    for (CLI::App* cmd : {certify, sweep}) {
        cmd->add_option("--test", flags.test, "witness | steering-ab | steering-ba | chsh | all");
        cmd->add_flag("--exact", flags.exact, "exact trace evaluation (no sampling)");
        cmd->add_option("--shots", flags.shots, "shots per setting (0 = exact)");
    }
    for (CLI::App* cmd : {certify, monitor}) {
        cmd->add_option("--pa", flags.pa, "Alice's measurement strength");
        cmd->add_option("--pb", flags.pb, "Bob's measurement strength");
    }
    sweep->add_option("--grid", flags.grid, "strength grid lo:hi:n for both axes");
    for (CLI::App* cmd : {recover, tradeoff}) {
        cmd->add_option("--points", flags.points, "strength samples over [0,1]");
        cmd->add_option("--plan", flags.plan, "averaging plan: witness | chsh");
    }
    recover->add_option("--shots", flags.shots, "trials per direction pair (0 = exact enumeration)");
    recover->add_flag("--exact", flags.exact, "exact branch enumeration (no sampling)");
    recover->add_option("--policy", flags.policy, "reversal policy: all | plus");
    monitor->add_option("--windows", flags.windows, "number of monitoring windows");
    monitor->add_option("--threshold", flags.threshold, "witness selection threshold (< 0)");
    monitor->add_option("--shots", flags.shots, "shots per setting within a window");
    monitor->add_flag("--exact", flags.exact, "exact witness gate and per-window Bell value");
    monitor->add_option("--ou-mu", flags.ou_mu, "OU mean decoherence level");
    monitor->add_option("--ou-theta", flags.ou_theta, "OU reversion rate per step");
    monitor->add_option("--ou-sigma", flags.ou_sigma, "OU volatility per sqrt(step)");
    monitor->add_option("--ou-dt", flags.ou_dt, "OU step size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        RunConfig base;
        if (const char* env_seed = std::getenv("ENTANGLECERT_SEED"))
            entanglecert::apply_config_entry(base, "seed", env_seed, 0);

        CLI::App* cmd = app.get_subcommands().front();
        RunConfig config = flags.config_path.empty()
                               ? base
                               : entanglecert::parse_config(read_file(flags.config_path), base);
        config.command = *entanglecert::command_from_name(cmd->get_name());
        apply_flags(cmd, flags, config);

        const entanglecert::ResultTable table = entanglecert::run_command(config);
        entanglecert::emit(table, config.out, config.format);
        return 0;
    } catch (const entanglecert::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const entanglecert::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const entanglecert::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
