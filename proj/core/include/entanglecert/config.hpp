#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entanglecert/protocol.hpp"
#include "entanglecert/table.hpp"

namespace entanglecert {

enum class Command { certify, sweep, recover, tradeoff, monitor, tomography };

std::string command_name(Command c);
std::optional<Command> command_from_name(const std::string& name);

/// Input state selector: the ideal Bell state, the decohered mixture at a
/// fixed gamma, or a state reconstructed from a Pauli-expectation file.
struct StateSpec {
    enum class Kind { ideal, mixed, tomo };
    Kind kind = Kind::ideal;
    double gamma = 0.0;
    std::string path;

    static StateSpec parse(const std::string& text);  ///< "ideal" | "mixed:g" | "tomo:path"
    std::string to_string() const;
};

/// Evenly spaced strength grid "lo:hi:n".
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 21;

    static GridSpec parse(const std::string& text);
    std::string to_string() const;
    std::vector<double> values() const;
};

/// Which test(s) a command evaluates.
enum class TestSelection { witness, steering_ab, steering_ba, chsh, all };

std::string test_selection_name(TestSelection t);
std::optional<TestSelection> test_selection_from_name(const std::string& name);

/// Fully-defaulted run configuration. Every field has a documented default;
/// parse_config rejects unknown keys.
struct RunConfig {
    Command command = Command::certify;
    StateSpec state;
    TestSelection test = TestSelection::all;
    double pa = 0.7;
    double pb = 0.7;
    GridSpec grid;
    int points = 21;
    long shots = 0;   ///< 0 = exact mode for certify/sweep/recover/tradeoff
    bool exact = false;  ///< monitor: exact gate + Bell; elsewhere forces shots = 0
    std::uint64_t seed = 0;
    ReversalPolicy policy = ReversalPolicy::all_branches;
    double threshold = -0.4;
    int windows = 500;
    double ou_mu = 0.3;
    double ou_theta = 0.05;
    double ou_sigma = 0.05;
    double ou_dt = 1.0;
    long window_shots = 10000;
    std::string plan = "witness";  ///< averaging plan: "witness" (D=3) or "chsh" (D=4)
    OutputFormat format = OutputFormat::csv;
    std::string out;  ///< empty = stdout
};

/// Applies one "key=value" assignment. Throws ParseError for unknown keys and
/// ValidationError (naming the field) for out-of-domain values.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value,
                        int line_number);

/// Parses a key=value document ('#'-prefixed and blank lines are skipped; a
/// leading "# " on a line is stripped first, so emitted metadata headers are
/// valid input). Parsing stops at the first non-metadata data line, which is
/// how a whole emitted CSV file can be replayed. Entries override `base`.
RunConfig parse_config(const std::string& text, const RunConfig& base = RunConfig{});

/// Cross-field validation (grid bounds, positive windows, threshold sign...).
void validate(const RunConfig& config);

/// Canonical metadata echo; replaying these keys through parse_config
/// reproduces the identical table.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

/// Resolves the input state of a run (tomo states read their file here).
DensityMatrix resolve_state(const StateSpec& spec);

/// Reads a Pauli-expectation file: lines "<ab>=<value>" with a, b in
/// {i, x, y, z}, e.g. "xx=1". The (i,i) entry defaults to 1 and must equal 1
/// if present.
PauliExpectations read_expectations_file(const std::string& path);

}  // namespace entanglecert
