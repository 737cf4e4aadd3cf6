#include "entanglecert/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entanglecert/monitor.hpp"

namespace entanglecert {

namespace {

std::string full_precision(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

double parse_double(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": field '" + key +
                         "': cannot parse number '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": field '" + key +
                         "': cannot parse integer '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": field '" + key +
                         "': cannot parse integer '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError("line " + std::to_string(line) + ": field '" + key +
                     "': expected true/false, got '" + value + "'");
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::certify: return "certify";
        case Command::sweep: return "sweep";
        case Command::recover: return "recover";
        case Command::tradeoff: return "tradeoff";
        case Command::monitor: return "monitor";
        case Command::tomography: return "tomography";
    }
    return "unknown";
}

std::optional<Command> command_from_name(const std::string& name) {
    if (name == "certify") return Command::certify;
    if (name == "sweep") return Command::sweep;
    if (name == "recover") return Command::recover;
    if (name == "tradeoff") return Command::tradeoff;
    if (name == "monitor") return Command::monitor;
    if (name == "tomography") return Command::tomography;
    return std::nullopt;
}

StateSpec StateSpec::parse(const std::string& text) {
    StateSpec spec;
    if (text == "ideal") {
        spec.kind = Kind::ideal;
        return spec;
    }
    if (text.rfind("mixed:", 0) == 0) {
        spec.kind = Kind::mixed;
        const std::string g = text.substr(6);
        try {
            std::size_t used = 0;
            spec.gamma = std::stod(g, &used);
            if (used != g.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ValidationError("state: cannot parse gamma in '" + text + "'");
        }
        if (!(spec.gamma >= 0.0 && spec.gamma <= 1.0))
            throw ValidationError("state: gamma out of [0,1]");
        return spec;
    }
    if (text.rfind("tomo:", 0) == 0) {
        spec.kind = Kind::tomo;
        spec.path = text.substr(5);
        if (spec.path.empty()) throw ValidationError("state: empty tomography path");
        return spec;
    }
    throw ValidationError("state: expected 'ideal', 'mixed:<gamma>' or 'tomo:<path>', got '" +
                          text + "'");
}

std::string StateSpec::to_string() const {
    switch (kind) {
        case Kind::ideal: return "ideal";
        case Kind::mixed: return "mixed:" + full_precision(gamma);
        case Kind::tomo: return "tomo:" + path;
    }
    return "ideal";
}

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec grid;
    std::stringstream ss(text);
    std::string lo_s;
    std::string hi_s;
    std::string n_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') || !std::getline(ss, n_s))
        throw ParseError("grid: expected 'lo:hi:n', got '" + text + "'");
    try {
        grid.lo = std::stod(lo_s);
        grid.hi = std::stod(hi_s);
        grid.n = std::stoi(n_s);
    } catch (const std::exception&) {
        throw ParseError("grid: cannot parse 'lo:hi:n' from '" + text + "'");
    }
    return grid;
}

std::string GridSpec::to_string() const {
    return full_precision(lo) + ":" + full_precision(hi) + ":" + std::to_string(n);
}

std::vector<double> GridSpec::values() const { return SweepGrid::linspace(lo, hi, n); }

std::string test_selection_name(TestSelection t) {
    switch (t) {
        case TestSelection::witness: return "witness";
        case TestSelection::steering_ab: return "steering-ab";
        case TestSelection::steering_ba: return "steering-ba";
        case TestSelection::chsh: return "chsh";
        case TestSelection::all: return "all";
    }
    return "all";
}

std::optional<TestSelection> test_selection_from_name(const std::string& name) {
    if (name == "witness") return TestSelection::witness;
    if (name == "steering-ab") return TestSelection::steering_ab;
    if (name == "steering-ba") return TestSelection::steering_ba;
    if (name == "chsh") return TestSelection::chsh;
    if (name == "all") return TestSelection::all;
    return std::nullopt;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value,
                        int line) {
    if (key.rfind("out_", 0) == 0) return;  // informational metadata, not configuration

    if (key == "command") {
        const auto c = command_from_name(value);
        if (!c) throw ValidationError("command: unknown command '" + value + "'");
        config.command = *c;
    } else if (key == "state") {
        config.state = StateSpec::parse(value);
    } else if (key == "test") {
        const auto t = test_selection_from_name(value);
        if (!t) throw ValidationError("test: unknown test '" + value + "'");
        config.test = *t;
    } else if (key == "pa") {
        config.pa = parse_double(key, value, line);
    } else if (key == "pb") {
        config.pb = parse_double(key, value, line);
    } else if (key == "grid") {
        config.grid = GridSpec::parse(value);
    } else if (key == "points") {
        config.points = static_cast<int>(parse_long(key, value, line));
    } else if (key == "shots") {
        config.shots = parse_long(key, value, line);
    } else if (key == "exact") {
        config.exact = parse_bool(key, value, line);
    } else if (key == "seed") {
        config.seed = parse_u64(key, value, line);
    } else if (key == "policy") {
        if (value == "all")
            config.policy = ReversalPolicy::all_branches;
        else if (value == "plus")
            config.policy = ReversalPolicy::plus_only;
        else
            throw ValidationError("policy: expected 'all' or 'plus', got '" + value + "'");
    } else if (key == "threshold") {
        config.threshold = parse_double(key, value, line);
    } else if (key == "windows") {
        config.windows = static_cast<int>(parse_long(key, value, line));
    } else if (key == "ou_mu") {
        config.ou_mu = parse_double(key, value, line);
    } else if (key == "ou_theta") {
        config.ou_theta = parse_double(key, value, line);
    } else if (key == "ou_sigma") {
        config.ou_sigma = parse_double(key, value, line);
    } else if (key == "ou_dt") {
        config.ou_dt = parse_double(key, value, line);
    } else if (key == "window_shots") {
        config.window_shots = parse_long(key, value, line);
    } else if (key == "plan") {
        if (value != "witness" && value != "chsh")
            throw ValidationError("plan: expected 'witness' or 'chsh', got '" + value + "'");
        config.plan = value;
    } else if (key == "format") {
        if (value == "csv")
            config.format = OutputFormat::csv;
        else if (value == "jsonl")
            config.format = OutputFormat::jsonl;
        else
            throw ValidationError("format: expected 'csv' or 'jsonl', got '" + value + "'");
    } else if (key == "out") {
        config.out = value;
    } else {
        throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
    RunConfig config = base;
    std::stringstream ss(text);
    std::string raw;
    int line_number = 0;
    while (std::getline(ss, raw)) {
        ++line_number;
        std::string line = trim(raw);
        if (line.empty()) continue;
        const bool was_comment = line.front() == '#';
        if (was_comment) {
            line.erase(0, 1);
            line = trim(line);
            if (line.empty()) continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (was_comment) continue;  // plain comment text
            // A header or data row of a replayed result file ends the
            // configuration section.
            if (line.find(',') != std::string::npos || line.front() == '{') break;
            throw ParseError("line " + std::to_string(line_number) + ": expected key=value, got '" +
                             line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(line_number) + ": empty key");
        apply_config_entry(config, key, value, line_number);
    }
    validate(config);
    return config;
}

void validate(const RunConfig& config) {
    if (!(config.pa >= 0.0 && config.pa <= 1.0)) throw ValidationError("pa out of [0,1]");
    if (!(config.pb >= 0.0 && config.pb <= 1.0)) throw ValidationError("pb out of [0,1]");
    if (config.shots < 0) throw ValidationError("shots must be >= 0");
    if (config.exact && config.shots > 0)
        throw ValidationError("exact conflicts with shots > 0");
    if (!(config.grid.lo >= 0.0 && config.grid.hi <= 1.0))
        throw ValidationError("grid bounds out of [0,1]");
    if (config.grid.lo > config.grid.hi) throw ValidationError("grid lo exceeds hi");
    if (config.grid.n < 1) throw ValidationError("grid n must be >= 1");
    if (config.points < 2) throw ValidationError("points must be >= 2");
    if (config.windows < 1) throw ValidationError("windows must be >= 1");
    if (!(config.threshold < 0.0)) throw ValidationError("threshold must be < 0");
    if (config.window_shots < 1) throw ValidationError("window_shots must be >= 1");
    if (config.ou_sigma < 0.0) throw ValidationError("ou_sigma must be >= 0");
    if (config.ou_dt <= 0.0) throw ValidationError("ou_dt must be > 0");
    if (!(config.ou_mu >= 0.0 && config.ou_mu <= 1.0))
        throw ValidationError("ou_mu out of [0,1]");
    if (config.ou_theta < 0.0) throw ValidationError("ou_theta must be >= 0");
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("command", command_name(config.command));
    echo.emplace_back("state", config.state.to_string());
    echo.emplace_back("test", test_selection_name(config.test));
    echo.emplace_back("pa", full_precision(config.pa));
    echo.emplace_back("pb", full_precision(config.pb));
    echo.emplace_back("grid", config.grid.to_string());
    echo.emplace_back("points", std::to_string(config.points));
    echo.emplace_back("shots", std::to_string(config.shots));
    echo.emplace_back("exact", config.exact ? "true" : "false");
    echo.emplace_back("seed", std::to_string(config.seed));
    echo.emplace_back("policy", config.policy == ReversalPolicy::all_branches ? "all" : "plus");
    echo.emplace_back("threshold", full_precision(config.threshold));
    echo.emplace_back("windows", std::to_string(config.windows));
    echo.emplace_back("ou_mu", full_precision(config.ou_mu));
    echo.emplace_back("ou_theta", full_precision(config.ou_theta));
    echo.emplace_back("ou_sigma", full_precision(config.ou_sigma));
    echo.emplace_back("ou_dt", full_precision(config.ou_dt));
    echo.emplace_back("window_shots", std::to_string(config.window_shots));
    echo.emplace_back("plan", config.plan);
    echo.emplace_back("format", config.format == OutputFormat::csv ? "csv" : "jsonl");
    return echo;
}

DensityMatrix resolve_state(const StateSpec& spec) {
    switch (spec.kind) {
        case StateSpec::Kind::ideal:
            return DensityMatrix::from_pure(PureState::bell_phi_plus());
        case StateSpec::Kind::mixed:
            return mixed_state(spec.gamma);
        case StateSpec::Kind::tomo:
            return tomography_linear_inversion(read_expectations_file(spec.path));
    }
    return DensityMatrix::from_pure(PureState::bell_phi_plus());
}

namespace {

int pauli_letter_index(char c) {
    switch (c) {
        case 'i': case 'I': return 0;
        case 'x': case 'X': return 1;
        case 'y': case 'Y': return 2;
        case 'z': case 'Z': return 3;
    }
    return -1;
}

}  // namespace

PauliExpectations read_expectations_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open expectations file '" + path + "'");
    PauliExpectations e;
    std::string raw;
    int line_number = 0;
    while (std::getline(file, raw)) {
        ++line_number;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(line_number) +
                             ": expected '<ab>=<value>'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.size() != 2)
            throw ParseError(path + ":" + std::to_string(line_number) +
                             ": key must be two of {i,x,y,z}, got '" + key + "'");
        const int i = pauli_letter_index(key[0]);
        const int j = pauli_letter_index(key[1]);
        if (i < 0 || j < 0)
            throw ParseError(path + ":" + std::to_string(line_number) +
                             ": key must be two of {i,x,y,z}, got '" + key + "'");
        const double v = parse_double(key, value, line_number);
        if (i == 0 && j == 0) {
            if (v != 1.0)
                throw ValidationError(path + ": entry ii must equal 1");
            continue;
        }
        if (std::abs(v) > 1.0)
            throw ValidationError(path + ": entry " + key + " out of [-1,1]");
        e.set(i, j, v);
    }
    return e;
}

}  // namespace entanglecert
