#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace entanglecert {

enum class OutputFormat { csv, jsonl };

/// Numeric result table with an ordered metadata header. Config-echo keys are
/// plain; informational keys carry an "out_" prefix and are skipped when the
/// header is fed back as a configuration.
struct ResultTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(const std::string& key, const std::string& value);
    void add_info(const std::string& key, const std::string& value);  ///< "out_"-prefixed
};

/// CSV: '#'-prefixed "key=value" metadata lines, a header row, then records
/// at 12 significant digits.
void emit_csv(const ResultTable& table, std::ostream& os);

/// JSON lines: one leading metadata object, then one object per record.
void emit_jsonl(const ResultTable& table, std::ostream& os);

/// Writes to `path`, or to stdout when `path` is empty. Throws IoError.
void emit(const ResultTable& table, const std::string& path, OutputFormat format);

/// Parses emit_csv output back into a table (used by round-trip checks and
/// the reproducibility closure).
ResultTable parse_csv(std::istream& is);

/// Formats one value exactly as the emitters do (12 significant digits).
std::string format_value(double v);

}  // namespace entanglecert
